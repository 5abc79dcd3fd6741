#pragma once

/// Truncated power series in a formal variable t, and the expansion of
/// infinite-product ratios prod (c_i t; q)_inf / prod (d_j t; q)_inf in t.

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <span>

#include <Eigen/Core>

#include "qkernel/context.hpp"
#include "qkernel/pochhammer.hpp"

namespace qkernel {

template <typename Real = double>
class TruncatedPowerSeries {
 public:
  using Complex = std::complex<Real>;
  using Coefficients = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// The zero series with coefficients t^0 .. t^degree_cap.
  explicit TruncatedPowerSeries(Eigen::Index degree_cap)
      : coeffs_(Coefficients::Zero(checked_size(degree_cap))) {}

  explicit TruncatedPowerSeries(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw DomainError("power series needs at least one coefficient");
  }

  TruncatedPowerSeries(std::initializer_list<Complex> coeffs, Eigen::Index degree_cap)
      : TruncatedPowerSeries(degree_cap) {
    Eigen::Index j = 0;
    for (const auto& c : coeffs) {
      if (j > degree_cap) break;
      coeffs_[j++] = c;
    }
  }

  static TruncatedPowerSeries constant(Complex c, Eigen::Index degree_cap) {
    TruncatedPowerSeries s(degree_cap);
    s.coeffs_[0] = c;
    return s;
  }

  Eigen::Index degree_cap() const noexcept { return coeffs_.size() - 1; }
  const Coefficients& coeffs() const noexcept { return coeffs_; }
  Coefficients& coeffs() noexcept { return coeffs_; }
  const Complex& operator[](Eigen::Index j) const { return coeffs_[j]; }
  Complex& operator[](Eigen::Index j) { return coeffs_[j]; }

  /// In-place multiplication by the linear factor (1 - w t).
  TruncatedPowerSeries& mul_linear(const Complex& w) {
    for (Eigen::Index j = degree_cap(); j >= 1; --j) coeffs_[j] -= w * coeffs_[j - 1];
    return *this;
  }

  /// In-place division by (1 - w t), i.e. multiplication by sum_j w^j t^j.
  TruncatedPowerSeries& div_linear(const Complex& w) {
    for (Eigen::Index j = 1; j <= degree_cap(); ++j) coeffs_[j] += w * coeffs_[j - 1];
    return *this;
  }

  TruncatedPowerSeries& operator*=(const Complex& s) {
    coeffs_ *= s;
    return *this;
  }

  friend TruncatedPowerSeries operator*(TruncatedPowerSeries a, const Complex& s) {
    return a *= s;
  }

  friend TruncatedPowerSeries operator+(const TruncatedPowerSeries& a,
                                        const TruncatedPowerSeries& b) {
    const Eigen::Index d = std::min(a.degree_cap(), b.degree_cap());
    return TruncatedPowerSeries(Coefficients(a.coeffs_.head(d + 1) + b.coeffs_.head(d + 1)));
  }

  friend TruncatedPowerSeries operator-(const TruncatedPowerSeries& a,
                                        const TruncatedPowerSeries& b) {
    const Eigen::Index d = std::min(a.degree_cap(), b.degree_cap());
    return TruncatedPowerSeries(Coefficients(a.coeffs_.head(d + 1) - b.coeffs_.head(d + 1)));
  }

 private:
  static Eigen::Index checked_size(Eigen::Index degree_cap) {
    if (degree_cap < 0) throw DomainError("degree cap must be nonnegative");
    return degree_cap + 1;
  }

  Coefficients coeffs_;
};

/// Cauchy product, truncated at the smaller of the two caps.
template <typename Real>
TruncatedPowerSeries<Real> ps_mul(const TruncatedPowerSeries<Real>& a,
                                  const TruncatedPowerSeries<Real>& b) {
  const Eigen::Index d = std::min(a.degree_cap(), b.degree_cap());
  TruncatedPowerSeries<Real> c(d);
  for (Eigen::Index j = 0; j <= d; ++j)
    c[j] = (a.coeffs().head(j + 1).array() * b.coeffs().head(j + 1).reverse().array()).sum();
  return c;
}

template <typename Real>
TruncatedPowerSeries<Real> operator*(const TruncatedPowerSeries<Real>& a,
                                     const TruncatedPowerSeries<Real>& b) {
  return ps_mul(a, b);
}

/// Multiplicative inverse modulo t^{D+1}.
template <typename Real>
TruncatedPowerSeries<Real> ps_reciprocal(const TruncatedPowerSeries<Real>& a) {
  using Complex = std::complex<Real>;
  if (a[0] == Complex(0)) throw DomainError("reciprocal of a series with zero constant term");
  const Eigen::Index d = a.degree_cap();
  TruncatedPowerSeries<Real> b(d);
  b[0] = Complex(1) / a[0];
  for (Eigen::Index j = 1; j <= d; ++j) {
    const Complex acc =
        (a.coeffs().segment(1, j).array() * b.coeffs().head(j).reverse().array()).sum();
    b[j] = -acc / a[0];
  }
  return b;
}

/// prod_i (c_i t; q)_inf truncated to degree D, one linear factor at a time.
template <typename Real>
TruncatedPowerSeries<Real> product_series(std::span<const std::complex<Real>> factors,
                                          Eigen::Index degree_cap,
                                          const QContext<Real>& ctx) {
  auto s = TruncatedPowerSeries<Real>::constant(1, degree_cap);
  for (const auto& c : factors) {
    const std::size_t terms = infinite_product_terms(std::abs(c), ctx);
    std::complex<Real> w = c;
    for (std::size_t k = 0; k < terms; ++k) {
      s.mul_linear(w);
      w *= ctx.q();
    }
  }
  return s;
}

/// Coefficients t^0..t^D of prod (num_i t; q)_inf / prod (den_j t; q)_inf.
template <typename Real>
TruncatedPowerSeries<Real> gf_expand(std::span<const std::complex<Real>> numerator,
                                     std::span<const std::complex<Real>> denominator,
                                     Eigen::Index degree_cap, const QContext<Real>& ctx) {
  const auto num = product_series(numerator, degree_cap, ctx);
  if (denominator.empty()) return num;
  const auto den = product_series(denominator, degree_cap, ctx);
  return ps_mul(num, ps_reciprocal(den));
}

template <typename Real>
TruncatedPowerSeries<Real> gf_expand(std::initializer_list<std::complex<Real>> numerator,
                                     std::initializer_list<std::complex<Real>> denominator,
                                     Eigen::Index degree_cap, const QContext<Real>& ctx) {
  return gf_expand(std::span<const std::complex<Real>>(numerator.begin(), numerator.size()),
                   std::span<const std::complex<Real>>(denominator.begin(), denominator.size()),
                   degree_cap, ctx);
}

/// Degree cap used by the generating-function oracles unless told otherwise.
inline constexpr Eigen::Index kDefaultDegreeCap = 24;

}  // namespace qkernel
