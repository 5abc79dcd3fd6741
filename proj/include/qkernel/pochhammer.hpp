#pragma once

/// q-shifted factorials.
///
///   (a;q)_n   = prod_{k=0}^{n-1} (1 - a q^k),      (a;q)_0 = 1
///   (a;q)_-n  = 1 / (a q^{-n}; q)_n
///   (a;q)_inf = prod_{k>=0} (1 - a q^k),            |q| < 1
///
/// The infinite product is truncated at the first N with
/// |a| |q|^N / (1 - |q|) < eps_product, which bounds the relative truncation
/// error by 2 |a| |q|^N / (1 - |q|) whenever that bound is at most 1/2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>

#include "qkernel/context.hpp"

namespace qkernel {

/// Subscript of a q-shifted factorial: any integer, or infinity.
class PochhammerIndex {
 public:
  constexpr PochhammerIndex(int n) noexcept : value_(n) {}  // NOLINT
  static constexpr PochhammerIndex infinity() noexcept { return PochhammerIndex(); }

  constexpr bool is_infinite() const noexcept { return !value_.has_value(); }
  constexpr int value() const { return value_.value(); }

  friend constexpr bool operator==(const PochhammerIndex&,
                                   const PochhammerIndex&) = default;

 private:
  constexpr PochhammerIndex() noexcept = default;
  std::optional<int> value_;
};

namespace detail {

/// z^n for n >= 0 by repeated squaring (std::pow on complex goes through log).
template <typename T>
T ipow(T z, unsigned n) {
  T result(1);
  while (n != 0) {
    if (n & 1U) result *= z;
    z *= z;
    n >>= 1U;
  }
  return result;
}

/// True when |w| is at roundoff level relative to the terms that produced it.
template <typename Real>
bool at_roundoff(const std::complex<Real>& w, Real scale) {
  return std::abs(w) <= Real(64) * std::numeric_limits<Real>::epsilon() * scale;
}

}  // namespace detail

template <typename Real>
std::complex<Real> qpoch_finite(const std::complex<Real>& a,
                                const std::complex<Real>& q, int n) {
  using Complex = std::complex<Real>;
  if (n >= 0) {
    Complex prod(1), qk(1);
    for (int k = 0; k < n; ++k) {
      prod *= Complex(1) - a * qk;
      qk *= q;
    }
    return prod;
  }
  if (q == Complex(0)) throw DomainError("(a;q)_n with n < 0 requires q != 0");
  const auto m = static_cast<unsigned>(-static_cast<long>(n));
  const Complex shifted = a / detail::ipow(q, m);
  Complex prod(1), qk(1);
  for (unsigned k = 0; k < m; ++k) {
    const Complex aqk = shifted * qk;
    const Complex factor = Complex(1) - aqk;
    if (factor == Complex(0) || detail::at_roundoff(factor, Real(1) + std::abs(aqk)))
      throw PoleError("(a;q)_" + std::to_string(n) + " has a vanishing denominator");
    prod *= factor;
    qk *= q;
  }
  return Complex(1) / prod;
}

template <typename Real>
std::complex<Real> qpoch_finite(Real a, Real q, int n) {
  return qpoch_finite(std::complex<Real>(a), std::complex<Real>(q), n);
}

/// Number of factors kept when truncating (a;q)_inf.
template <typename Real>
std::size_t infinite_product_terms(Real abs_a, const QContext<Real>& ctx) {
  const Real abs_q = ctx.abs_q();
  const Real denom = Real(1) - abs_q;
  std::size_t count = 0;
  Real tail = abs_a / denom;
  while (!(tail < ctx.eps_product())) {
    if (count >= ctx.max_product_terms())
      throw ConvergenceError("(a;q)_inf exceeded max_product_terms");
    tail *= abs_q;
    ++count;
  }
  return count;
}

template <typename Real>
std::complex<Real> qpoch_infinite(const std::complex<Real>& a,
                                  const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  const std::size_t terms = infinite_product_terms(std::abs(a), ctx);
  Complex prod(1), aqk = a;
  for (std::size_t k = 0; k < terms; ++k) {
    prod *= Complex(1) - aqk;
    aqk *= ctx.q();
  }
  return prod;
}

template <typename Real>
std::complex<Real> qpoch(const std::complex<Real>& a, PochhammerIndex n,
                         const QContext<Real>& ctx) {
  return n.is_infinite() ? qpoch_infinite(a, ctx) : qpoch_finite(a, ctx.q(), n.value());
}

/// (a_1, ..., a_k; q)_n, the product of the single-argument symbols.
template <typename Real>
std::complex<Real> qpoch_multi(std::span<const std::complex<Real>> as,
                               PochhammerIndex n, const QContext<Real>& ctx) {
  if (as.empty()) throw DomainError("qpoch_multi needs at least one argument");
  std::complex<Real> prod(1);
  for (const auto& a : as) prod *= qpoch(a, n, ctx);
  return prod;
}

template <typename Real>
std::complex<Real> qpoch_multi(std::initializer_list<std::complex<Real>> as,
                               PochhammerIndex n, const QContext<Real>& ctx) {
  return qpoch_multi(std::span<const std::complex<Real>>(as.begin(), as.size()), n, ctx);
}

/// Gaussian binomial [n k]_q; zero outside 0 <= k <= n.
template <typename Real>
std::complex<Real> qbinom(int n, int k, const std::complex<Real>& q) {
  using Complex = std::complex<Real>;
  if (n < 0) throw DomainError("qbinom requires n >= 0");
  if (k < 0 || k > n) return Complex(0);
  const int kk = std::min(k, n - k);
  // prod_{j=1}^{kk} (1 - q^{n-kk+j}) / (1 - q^j)
  Complex value(1);
  Complex q_top = detail::ipow(q, static_cast<unsigned>(n - kk + 1));
  Complex q_bottom = q;
  for (int j = 1; j <= kk; ++j) {
    value *= (Complex(1) - q_top) / (Complex(1) - q_bottom);
    q_top *= q;
    q_bottom *= q;
  }
  return value;
}

}  // namespace qkernel
