#pragma once

/// Basic hypergeometric series r+1 phi r, the very-well-poised shorthand
/// r+1 W r, and the product side of Rogers' 6phi5 summation.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qkernel/context.hpp"
#include "qkernel/pochhammer.hpp"
#include "qkernel/summation.hpp"

namespace qkernel {

/// r+1 phi r (a_1..a_{r+1}; b_1..b_r; q, z).
template <typename Real = double>
struct HypergeometricSpec {
  std::vector<std::complex<Real>> upper;
  std::vector<std::complex<Real>> lower;
  std::complex<Real> z;
};

template <typename Real = double>
struct SeriesResult {
  std::complex<Real> value;
  std::size_t terms = 0;      ///< number of terms summed, including term 0
  Real tail_bound = 0;        ///< certified bound on the discarded tail
  bool terminated = false;    ///< an upper parameter q^{-m} ended the series
};

/// Sums the series by the running term ratio
///   t_{n+1}/t_n = z prod(1 - a_i q^n) / ((1 - q^{n+1}) prod(1 - b_j q^n)).
/// For m >= n every later ratio is bounded by
///   rho_n = |z| prod(1 + |a_i||q|^n) / ((1 - |q|^{n+1}) prod(1 - |b_j||q|^n)),
/// so once rho_n < 1 the tail is at most |t_n| rho_n / (1 - rho_n).
template <typename Real>
SeriesResult<Real> phi_series_detail(const HypergeometricSpec<Real>& spec,
                                     const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  if (spec.upper.size() != spec.lower.size() + 1)
    throw DomainError("phi series needs exactly one more upper than lower parameter");

  const Complex q = ctx.q();
  const Real abs_q = ctx.abs_q();
  const Real abs_z = std::abs(spec.z);

  if (spec.z == Complex(0)) return {Complex(1), 1, Real(0), false};

  CompensatedSum<Real> sum;
  sum += Complex(1);
  Complex term(1);
  Complex qn(1);
  Real abs_qn = 1;

  for (std::size_t n = 0;; ++n) {
    if (n >= ctx.max_series_terms())
      throw ConvergenceError("phi series exceeded max_series_terms");

    Complex ratio = spec.z / (Complex(1) - qn * q);
    for (const auto& a : spec.upper) {
      const Complex aqn = a * qn;
      const Complex factor = Complex(1) - aqn;
      if (factor == Complex(0) || detail::at_roundoff(factor, Real(1) + std::abs(aqn)))
        return {sum.value(), n + 1, Real(0), true};
      ratio *= factor;
    }
    for (const auto& b : spec.lower) {
      const Complex bqn = b * qn;
      const Complex factor = Complex(1) - bqn;
      if (factor == Complex(0) || detail::at_roundoff(factor, Real(1) + std::abs(bqn)))
        throw DomainError("phi series denominator (b;q)_n vanishes at n = " +
                          std::to_string(n + 1));
      ratio /= factor;
    }

    // Bound on |t_{m+1}/t_m| for all m >= n.
    Real rho = abs_z / (Real(1) - abs_qn * abs_q);
    bool bounded = true;
    for (const auto& a : spec.upper) rho *= Real(1) + std::abs(a) * abs_qn;
    for (const auto& b : spec.lower) {
      const Real d = Real(1) - std::abs(b) * abs_qn;
      if (d <= 0) {
        bounded = false;
        break;
      }
      rho /= d;
    }

    if (bounded && rho < Real(1)) {
      const Real tail = std::abs(term) * rho / (Real(1) - rho);
      if (tail < ctx.eps_series()) return {sum.value(), n + 1, tail, false};
    }

    term *= ratio;
    if (!std::isfinite(std::abs(term)))
      throw ConvergenceError("phi series terms overflowed");
    sum += term;
    qn *= q;
    abs_qn *= abs_q;
  }
}

template <typename Real>
std::complex<Real> phi_series(const HypergeometricSpec<Real>& spec, const QContext<Real>& ctx) {
  return phi_series_detail(spec, ctx).value;
}

/// The phi-series parameters of r+1 W r (a1; rest; q, z).
template <typename Real>
HypergeometricSpec<Real> very_well_poised_spec(const std::complex<Real>& a1,
                                               std::span<const std::complex<Real>> rest,
                                               const std::complex<Real>& z,
                                               const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  const Complex q = ctx.q();
  const Complex root = std::sqrt(a1);  // principal branch
  HypergeometricSpec<Real> spec;
  spec.upper = {a1, q * root, -q * root};
  spec.lower = {root, -root};
  for (const auto& a : rest) {
    if (a == Complex(0)) throw DomainError("very-well-poised parameter must be nonzero");
    spec.upper.push_back(a);
    spec.lower.push_back(q * a1 / a);
  }
  spec.z = z;
  return spec;
}

template <typename Real>
std::complex<Real> w_series(const std::complex<Real>& a1,
                            std::span<const std::complex<Real>> rest,
                            const std::complex<Real>& z, const QContext<Real>& ctx) {
  return phi_series(very_well_poised_spec(a1, rest, z, ctx), ctx);
}

template <typename Real>
std::complex<Real> w_series(const std::complex<Real>& a1,
                            std::initializer_list<std::complex<Real>> rest,
                            const std::complex<Real>& z, const QContext<Real>& ctx) {
  return w_series(a1, std::span<const std::complex<Real>>(rest.begin(), rest.size()), z, ctx);
}

/// (aq, aq/bc, aq/cd, aq/bd; q)_inf / (aq/b, aq/c, aq/d, aq/bcd; q)_inf,
/// the closed form of 6W5(a; b, c, d; q, aq/bcd).
template <typename Real>
std::complex<Real> rogers_6w5_rhs(const std::complex<Real>& a, const std::complex<Real>& b,
                                  const std::complex<Real>& c, const std::complex<Real>& d,
                                  const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  if (b == Complex(0) || c == Complex(0) || d == Complex(0))
    throw DomainError("Rogers 6phi5 requires b, c, d nonzero");
  const Complex aq = a * ctx.q();
  const Complex z = aq / (b * c * d);
  if (!(std::abs(z) < Real(1))) throw DomainError("Rogers 6phi5 requires |aq/bcd| < 1");
  const Complex num = qpoch_multi({aq, aq / (b * c), aq / (c * d), aq / (b * d)},
                                  PochhammerIndex::infinity(), ctx);
  const Complex den = qpoch_multi({aq / b, aq / c, aq / d, z}, PochhammerIndex::infinity(), ctx);
  if (den == Complex(0)) throw PoleError("Rogers 6phi5 product denominator vanishes");
  return num / den;
}

}  // namespace qkernel
