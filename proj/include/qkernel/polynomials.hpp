#pragma once

/// Polynomial families built on the q-ultraspherical generating function
///
///   (beta r e^{i theta}, beta r e^{-i theta}; q)_inf
///   ------------------------------------------------ = sum_n C_n(cos theta; beta|q) r^n
///        (r e^{i theta}, r e^{-i theta}; q)_inf
///
/// and its two-parameter extension C_n^{(alpha,beta)}(e^{i theta}; q), obtained by
/// replacing the numerator with (alpha t e^{i theta}, beta t e^{-i theta}; q)_inf.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "qkernel/context.hpp"
#include "qkernel/pochhammer.hpp"
#include "qkernel/power_series.hpp"

namespace qkernel {

/// A point on the unit circle given by its angle, as opposed to x = cos(theta).
template <typename Real = double>
struct Angle {
  Real radians;
};

enum class Method { Explicit, Recurrence, GenFunc };

namespace detail {

/// Working precision for the cancelling sums: long double when it is wider than Real.
template <typename Real>
using wide_t = std::conditional_t<(std::numeric_limits<long double>::digits > std::numeric_limits<Real>::digits),
                                  long double, Real>;

template <typename Real>
QContext<wide_t<Real>> widen(const QContext<Real>& ctx) {
  using W = wide_t<Real>;
  const W scale = std::numeric_limits<W>::epsilon() / W(std::numeric_limits<Real>::epsilon());
  const auto& t = ctx.tolerances();
  Tolerances<W> w;
  w.eps_product = W(t.eps_product) * scale;
  w.eps_series = W(t.eps_series) * scale;
  w.eps_quad = W(t.eps_quad);
  w.max_product_terms = t.max_product_terms;
  w.max_series_terms = t.max_series_terms;
  w.max_quad_nodes = t.max_quad_nodes;
  return QContext<W>(std::complex<W>(ctx.q()), w);
}

template <typename W, typename Real>
std::complex<W> widen(const std::complex<Real>& z) {
  return std::complex<W>(z);
}

/// (c;q)_k / (q;q)_k for k = 0..n.
template <typename Real>
std::vector<std::complex<Real>> binomial_weights(const std::complex<Real>& c, int n,
                                                 const std::complex<Real>& q) {
  using Complex = std::complex<Real>;
  std::vector<Complex> w(static_cast<std::size_t>(n) + 1);
  w[0] = Complex(1);
  Complex qk(1);
  for (int k = 0; k < n; ++k) {
    w[k + 1] = w[k] * (Complex(1) - c * qk) / (Complex(1) - qk * q);
    qk *= q;
  }
  return w;
}

inline void require_degree(int n) {
  if (n < 0) throw DomainError("polynomial degree must be nonnegative");
}

template <typename Real>
Real checked_acos(Real x) {
  if (!(std::abs(x) <= Real(1))) throw DomainError("x = cos(theta) must lie in [-1, 1]");
  return std::acos(x);
}

template <typename Real>
std::complex<Real> ultraspherical_explicit(int n, Real theta, const std::complex<Real>& beta,
                                           const std::complex<Real>& q) {
  using W = wide_t<Real>;
  const auto w = binomial_weights(widen<W>(beta), n, widen<W>(q));
  std::complex<W> sum(0);
  for (int k = 0; k <= n; ++k) sum += w[k] * w[n - k] * std::cos(W(n - 2 * k) * W(theta));
  return std::complex<Real>(sum);
}

template <typename Real>
std::complex<Real> ultraspherical_recurrence(int n, Real x, const std::complex<Real>& beta,
                                             const std::complex<Real>& q) {
  using Complex = std::complex<Real>;
  Complex prev(1);
  if (n == 0) return prev;
  Complex cur = Real(2) * x * (Complex(1) - beta) / (Complex(1) - q);
  // (1 - q^{j+1}) C_{j+1} = 2x (1 - beta q^j) C_j - (1 - beta^2 q^{j-1}) C_{j-1}
  Complex qjm1(1);
  for (int j = 1; j < n; ++j) {
    const Complex qj = qjm1 * q;
    const Complex next = (Real(2) * x * (Complex(1) - beta * qj) * cur -
                          (Complex(1) - beta * beta * qjm1) * prev) /
                         (Complex(1) - qj * q);
    prev = cur;
    cur = next;
    qjm1 = qj;
  }
  return cur;
}

}  // namespace detail

/// C_n(cos theta; beta | q) at an angle.
template <typename Real>
std::complex<Real> ultraspherical_c(int n, Angle<Real> theta, const std::complex<Real>& beta,
                                    Method method, const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  detail::require_degree(n);
  switch (method) {
    case Method::Explicit:
      return detail::ultraspherical_explicit(n, theta.radians, beta, ctx.q());
    case Method::Recurrence:
      return detail::ultraspherical_recurrence(n, std::cos(theta.radians), beta, ctx.q());
    case Method::GenFunc: {
      using W = detail::wide_t<Real>;
      const auto e = std::polar(W(1), W(theta.radians));
      const auto ec = std::conj(e);
      const auto b = detail::widen<W>(beta);
      return Complex(gf_expand<W>({b * e, b * ec}, {e, ec}, n, detail::widen(ctx))[n]);
    }
  }
  throw DomainError("unknown evaluation method");
}

/// C_n(x; beta | q) for x in [-1, 1].
template <typename Real>
std::complex<Real> ultraspherical_c(int n, Real x, const std::complex<Real>& beta,
                                    Method method, const QContext<Real>& ctx) {
  const Real theta = detail::checked_acos(x);
  if (method == Method::Recurrence) {
    detail::require_degree(n);
    return detail::ultraspherical_recurrence(n, x, beta, ctx.q());
  }
  return ultraspherical_c(n, Angle<Real>{theta}, beta, method, ctx);
}

/// C_n^{(alpha,beta)}(e^{i theta}; q), the t^n coefficient of
/// (alpha t e^{i theta}, beta t e^{-i theta}; q)_inf / (t e^{i theta}, t e^{-i theta}; q)_inf.
///
/// Explicit form: sum_k (alpha;q)_k (beta;q)_{n-k} / ((q;q)_k (q;q)_{n-k}) e^{i(2k-n) theta}.
template <typename Real>
std::complex<Real> gasper_c(int n, Angle<Real> theta, const std::complex<Real>& alpha,
                            const std::complex<Real>& beta, Method method,
                            const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  using W = detail::wide_t<Real>;
  detail::require_degree(n);
  switch (method) {
    case Method::Explicit: {
      const auto q = detail::widen<W>(ctx.q());
      const auto wa = detail::binomial_weights(detail::widen<W>(alpha), n, q);
      const auto wb = detail::binomial_weights(detail::widen<W>(beta), n, q);
      std::complex<W> sum(0);
      for (int k = 0; k <= n; ++k)
        sum += wa[k] * wb[n - k] * std::polar(W(1), W(2 * k - n) * W(theta.radians));
      return Complex(sum);
    }
    case Method::GenFunc: {
      const auto e = std::polar(W(1), W(theta.radians));
      const auto ec = std::conj(e);
      return Complex(gf_expand<W>({detail::widen<W>(alpha) * e, detail::widen<W>(beta) * ec}, {e, ec}, n,
                                  detail::widen(ctx))[n]);
    }
    case Method::Recurrence:
      break;
  }
  throw DomainError("gasper_c supports the explicit and generating-function methods only");
}

/// Homogeneous polynomial Phi_n^{(alpha,beta)}(x, y | q).
template <typename Real>
std::complex<Real> phi_poly(int n, const std::complex<Real>& alpha,
                            const std::complex<Real>& beta, const std::complex<Real>& x,
                            const std::complex<Real>& y, const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  detail::require_degree(n);
  const Complex q = ctx.q();
  Complex sum(0);
  for (int k = 0; k <= n; ++k) {
    sum += qbinom(n, k, q) * qpoch_finite(alpha, q, k) * qpoch_finite(beta, q, n - k) *
           detail::ipow(x, static_cast<unsigned>(k)) *
           detail::ipow(y, static_cast<unsigned>(n - k));
  }
  return sum;
}

/// Continuous q-Hermite H_n(x|q) = (q;q)_n C_n(x; 0|q).
template <typename Real>
std::complex<Real> q_hermite(int n, Real x, const QContext<Real>& ctx) {
  return qpoch_finite(ctx.q(), ctx.q(), n) *
         ultraspherical_c(n, x, std::complex<Real>(0), Method::Explicit, ctx);
}

template <typename Real>
Real chebyshev_t(int n, Real x) {
  detail::require_degree(n);
  return std::cos(Real(n) * detail::checked_acos(x));
}

/// h_n(beta|q), the reciprocal of the squared norm of C_n(.; beta|q) under omega_beta on [0, pi].
template <typename Real>
std::complex<Real> h_norm(int n, const std::complex<Real>& beta, const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  detail::require_degree(n);
  const Complex q = ctx.q();
  const Complex qn = detail::ipow(q, static_cast<unsigned>(n));
  const auto inf = PochhammerIndex::infinity();
  const Complex num = qpoch_multi({q, beta * beta}, inf, ctx) * qpoch_finite(q, q, n) *
                      (Complex(1) - beta * qn);
  const Complex den = Real(2) * std::numbers::pi_v<Real> *
                      qpoch_multi({beta, beta * q}, inf, ctx) *
                      qpoch_finite(beta * beta, q, n) * (Complex(1) - beta);
  if (den == Complex(0)) throw PoleError("h_n(beta|q) denominator vanishes");
  return num / den;
}

/// Coefficients c_0..c_{floor(n/2)} of C_n(x; gamma|q) = sum_k c_k C_{n-2k}(x; beta|q).
///
/// beta^k (gamma/beta; q)_k is evaluated as prod_{j<k} (beta - gamma q^j), which stays
/// finite at beta = 0.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1> connection_coeffs(
    int n, const std::complex<Real>& beta, const std::complex<Real>& gamma,
    const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  detail::require_degree(n);
  const Complex q = ctx.q();
  const int half = n / 2;
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> c(half + 1);
  Complex lead(1);  // prod_{j<k} (beta - gamma q^j)
  Complex qj(1);
  for (int k = 0; k <= half; ++k) {
    const Complex den = qpoch_finite(q, q, k) * qpoch_finite(beta * q, q, n - k) *
                        (Complex(1) - beta);
    if (den == Complex(0)) throw PoleError("connection coefficient denominator vanishes");
    c[k] = lead * qpoch_finite(gamma, q, n - k) *
           (Complex(1) - beta * detail::ipow(q, static_cast<unsigned>(n - 2 * k))) / den;
    lead *= beta - gamma * qj;
    qj *= q;
  }
  return c;
}

enum class Family { Ultraspherical, Gasper, Phi, QHermite, Chebyshev };

/// A single evaluation request for any of the families above.
template <typename Real = double>
struct PolynomialEval {
  Family family = Family::Ultraspherical;
  int degree = 0;
  std::complex<Real> alpha{0};
  std::complex<Real> beta{0};
  std::variant<Real, Angle<Real>> point = Real(0);  ///< x = cos(theta), or theta
  Method method = Method::Explicit;
};

template <typename Real>
std::complex<Real> evaluate(const PolynomialEval<Real>& req, const QContext<Real>& ctx) {
  using Complex = std::complex<Real>;
  const Real theta = std::holds_alternative<Angle<Real>>(req.point)
                         ? std::get<Angle<Real>>(req.point).radians
                         : detail::checked_acos(std::get<Real>(req.point));
  switch (req.family) {
    case Family::Ultraspherical:
      if (const Real* x = std::get_if<Real>(&req.point))
        return ultraspherical_c(req.degree, *x, req.beta, req.method, ctx);
      return ultraspherical_c(req.degree, Angle<Real>{theta}, req.beta, req.method, ctx);
    case Family::Gasper:
      return gasper_c(req.degree, Angle<Real>{theta}, req.alpha, req.beta, req.method, ctx);
    case Family::Phi:
      return phi_poly(req.degree, req.alpha, req.beta, std::polar(Real(1), theta),
                      std::polar(Real(1), -theta), ctx);
    case Family::QHermite:
      return q_hermite(req.degree, std::cos(theta), ctx);
    case Family::Chebyshev:
      return Complex(chebyshev_t(req.degree, std::cos(theta)));
  }
  throw DomainError("unknown polynomial family");
}

}  // namespace qkernel
