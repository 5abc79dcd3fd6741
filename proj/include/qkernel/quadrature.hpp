#pragma once

/// Integration engines: the uniform trapezoid rule over a full period, which
/// converges geometrically for analytic 2*pi-periodic integrands, and the
/// Jackson q-integral
///
///   int_a^b f(x) d_q x = (1-q) b sum_n q^n f(b q^n) - (1-q) a sum_n q^n f(a q^n).
///
/// Also the two circle weights omega_beta and omega^{(alpha,beta)}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qkernel/context.hpp"
#include "qkernel/pochhammer.hpp"
#include "qkernel/summation.hpp"

namespace qkernel {

template <typename Real = double>
struct QuadratureResult {
  std::complex<Real> value;
  std::size_t nodes_used = 0;
  Real error_estimate = 0;
  bool converged = false;
};

inline constexpr std::size_t kInitialQuadNodes = 64;

/// Trapezoid sums T_N of int_0^{2 pi} f over N = 64, 128, ... until
/// |T_2N - T_N| <= eps_quad (1 + |T_2N|). Each refinement reuses the previous
/// samples and adds the odd nodes; every level is summed pairwise so the
/// result is independent of evaluation order.
template <typename Real, typename F>
QuadratureResult<Real> periodic_quadrature(F&& f, const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;

  std::size_t n = kInitialQuadNodes;
  std::vector<Complex> samples(n);
  for (std::size_t j = 0; j < n; ++j)
    samples[j] = Complex(f(two_pi * Real(j) / Real(n)));
  Complex node_sum = pairwise_sum<Complex>(samples);
  Complex estimate = node_sum * (two_pi / Real(n));

  while (2 * n <= ctx.max_quad_nodes()) {
    samples.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      samples[j] = Complex(f(two_pi * (Real(2 * j + 1)) / Real(2 * n)));
    node_sum += pairwise_sum<Complex>(samples);
    n *= 2;
    const Complex refined = node_sum * (two_pi / Real(n));
    const Real diff = std::abs(refined - estimate);
    if (!std::isfinite(diff)) throw ConvergenceError("quadrature integrand is not finite");
    if (diff <= ctx.eps_quad() * (Real(1) + std::abs(refined)))
      return {refined, n, diff, true};
    estimate = refined;
  }
  throw ConvergenceError("periodic quadrature reached max_quad_nodes (" +
                         std::to_string(ctx.max_quad_nodes()) + ") without converging");
}

/// int_0^pi f for f even and 2*pi-periodic: half of the full-period integral.
template <typename Real, typename F>
QuadratureResult<Real> half_period_quadrature(F&& f, const QContext<Real>& ctx) {
  auto full = periodic_quadrature<Real>(std::forward<F>(f), ctx);
  full.value /= Real(2);
  full.error_estimate /= Real(2);
  return full;
}

template <typename Real = double>
struct JacksonResult {
  std::complex<Real> value;
  std::size_t terms = 0;  ///< function evaluations over both endpoints
};

namespace detail {

/// (1-q) e sum_n q^n f(e q^n) with a tail estimate built from the running
/// maximum of |f| along the geometric sequence.
template <typename Real, typename F>
std::complex<Real> jackson_endpoint(F& f, const std::complex<Real>& e,
                                    const QContext<Real>& ctx, std::size_t& terms) {
  using Complex = std::complex<Real>;
  if (e == Complex(0)) return Complex(0);
  const Complex q = ctx.q();
  const Real abs_q = ctx.abs_q();
  const Real scale = std::abs(e) * std::abs(Complex(1) - q) / (Real(1) - abs_q);
  constexpr std::size_t kMinTerms = 8;

  CompensatedSum<Real> sum;
  Complex qn(1);
  Real abs_qn = 1;
  Real running_max = 0;
  for (std::size_t n = 0;; ++n) {
    if (n >= ctx.max_series_terms())
      throw ConvergenceError("Jackson integral exceeded max_series_terms");
    const Complex fz = Complex(f(e * qn));
    const Real mag = std::abs(fz);
    if (!std::isfinite(mag))
      throw ConvergenceError("Jackson integrand is not finite along the q-sequence");
    sum += qn * fz;
    ++terms;
    running_max = std::max(running_max, mag);
    qn *= q;
    abs_qn *= abs_q;
    if (n + 1 >= kMinTerms && scale * running_max * abs_qn < ctx.eps_series()) break;
  }
  return (Complex(1) - q) * e * sum.value();
}

}  // namespace detail

template <typename Real, typename F>
JacksonResult<Real> jackson_q_integral_detail(F&& f, const std::complex<Real>& a,
                                              const std::complex<Real>& b,
                                              const QContext<Real>& ctx) {
  std::size_t terms = 0;
  const auto upper = detail::jackson_endpoint(f, b, ctx, terms);
  const auto lower = detail::jackson_endpoint(f, a, ctx, terms);
  return {upper - lower, terms};
}

template <typename Real, typename F>
std::complex<Real> jackson_q_integral(F&& f, const std::complex<Real>& a,
                                      const std::complex<Real>& b, const QContext<Real>& ctx) {
  return jackson_q_integral_detail(std::forward<F>(f), a, b, ctx).value;
}

/// omega_beta(cos theta | q) = (e^{2i theta}, e^{-2i theta}; q)_inf / (beta e^{2i theta}, beta e^{-2i theta}; q)_inf
template <typename Real>
std::complex<Real> weight_omega_beta(Real theta, const std::complex<Real>& beta,
                                     const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  const Complex e2 = std::polar(Real(1), 2 * theta);
  const Complex e2c = std::conj(e2);
  const auto inf = PochhammerIndex::infinity();
  return qpoch_multi({e2, e2c}, inf, ctx) / qpoch_multi({beta * e2, beta * e2c}, inf, ctx);
}

/// omega^{(alpha,beta)}(cos theta | q) = (e^{2i theta}, e^{-2i theta}; q)_inf / (alpha e^{2i theta}, beta e^{-2i theta}; q)_inf
template <typename Real>
std::complex<Real> weight_omega_ab(Real theta, const std::complex<Real>& alpha,
                                   const std::complex<Real>& beta, const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  const Complex e2 = std::polar(Real(1), 2 * theta);
  const Complex e2c = std::conj(e2);
  const auto inf = PochhammerIndex::infinity();
  return qpoch_multi({e2, e2c}, inf, ctx) / qpoch_multi({alpha * e2, beta * e2c}, inf, ctx);
}

enum class WeightKind { OmegaBeta, OmegaAlphaBeta };

template <typename Real = double>
struct WeightSpec {
  WeightKind kind = WeightKind::OmegaBeta;
  std::complex<Real> alpha{0};  ///< ignored for OmegaBeta
  std::complex<Real> beta{0};

  void validate() const {
    if (!(std::abs(beta) < Real(1)) ||
        (kind == WeightKind::OmegaAlphaBeta && !(std::abs(alpha) < Real(1))))
      throw DomainError("weight parameters must have modulus < 1");
  }

  std::complex<Real> operator()(Real theta, const QContext<Real>& ctx) const {
    return kind == WeightKind::OmegaBeta ? weight_omega_beta(theta, beta, ctx)
                                         : weight_omega_ab(theta, alpha, beta, ctx);
  }
};

}  // namespace qkernel
