#pragma once

#include <complex>
#include <cstddef>

#include "qkernel/errors.hpp"

namespace qkernel {

/// Truncation tolerances and caps shared by every engine.
template <typename Real = double>
struct Tolerances {
  Real eps_product = Real(1e-15);
  Real eps_series = Real(1e-14);
  Real eps_quad = Real(1e-11);
  std::size_t max_product_terms = 10000;
  std::size_t max_series_terms = 100000;
  std::size_t max_quad_nodes = std::size_t{1} << 20;
};

/// Numeric policy: the base q together with its tolerances.
///
/// Immutable after construction. Construction rejects |q| >= 1, non-positive
/// tolerances and caps below 16.
template <typename Real = double>
class QContext {
 public:
  using Complex = std::complex<Real>;

  explicit QContext(Complex q, Tolerances<Real> tol = {}) : q_(q), tol_(tol) {
    if (!(std::abs(q) < Real(1))) throw DomainError("QContext requires |q| < 1");
    if (!(tol.eps_product > 0) || !(tol.eps_series > 0) || !(tol.eps_quad > 0))
      throw DomainError("QContext tolerances must be positive");
    if (tol.max_product_terms < 16 || tol.max_series_terms < 16 ||
        tol.max_quad_nodes < 16)
      throw DomainError("QContext caps must be at least 16");
  }

  const Complex& q() const noexcept { return q_; }
  Real abs_q() const noexcept { return std::abs(q_); }
  const Tolerances<Real>& tolerances() const noexcept { return tol_; }

  Real eps_product() const noexcept { return tol_.eps_product; }
  Real eps_series() const noexcept { return tol_.eps_series; }
  Real eps_quad() const noexcept { return tol_.eps_quad; }
  std::size_t max_product_terms() const noexcept { return tol_.max_product_terms; }
  std::size_t max_series_terms() const noexcept { return tol_.max_series_terms; }
  std::size_t max_quad_nodes() const noexcept { return tol_.max_quad_nodes; }

  /// Same tolerances, different base.
  QContext with_q(Complex q) const { return QContext(q, tol_); }

 private:
  Complex q_;
  Tolerances<Real> tol_;
};

}  // namespace qkernel
