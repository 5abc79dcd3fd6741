#include "qkernel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

#include "qkernel/qkernel.hpp"

namespace qkernel::verify {

namespace {

constexpr double kPi = std::numbers::pi;
const auto kInf = PochhammerIndex::infinity();

bool same_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) || a == b;
}

bool same_complex(const Complex& a, const Complex& b) {
  return same_double(a.real(), b.real()) && same_double(a.imag(), b.imag());
}

double scaled_error(const Complex& lhs, const Complex& rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

Complex cpow(const Complex& z, int n) { return detail::ipow(z, static_cast<unsigned>(n)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// C_n(cos theta; beta|q) with the weights (beta;q)_k/(q;q)_k computed once.
class Ultraspherical {
 public:
  Ultraspherical(int n, Complex beta, const Context& ctx)
      : n_(n), w_(detail::binomial_weights(beta, n, ctx.q())) {}

  Complex operator()(double theta) const {
    Complex sum(0);
    for (int k = 0; k <= n_; ++k) sum += w_[k] * w_[n_ - k] * std::cos((n_ - 2 * k) * theta);
    return sum;
  }

 private:
  int n_;
  std::vector<Complex> w_;
};

/// C_n^{(alpha,beta)}(e^{i theta}; q) with precomputed weights.
class Gasper {
 public:
  Gasper(int n, Complex alpha, Complex beta, const Context& ctx)
      : n_(n),
        wa_(detail::binomial_weights(alpha, n, ctx.q())),
        wb_(detail::binomial_weights(beta, n, ctx.q())) {}

  Complex operator()(double theta) const {
    Complex sum(0);
    for (int k = 0; k <= n_; ++k) sum += wa_[k] * wb_[n_ - k] * std::polar(1.0, (2 * k - n_) * theta);
    return sum;
  }

 private:
  int n_;
  std::vector<Complex> wa_, wb_;
};

/// Runs body() and turns any kernel or standard exception into a failed report.
template <typename Body>
VerificationReport guarded(const std::string& id, const Params& params, double tol, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  try {
    report = body();
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    report = make_report(id, params, Complex(nan, nan), Complex(nan, nan), tol, 0, e.what());
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void require_nonnegative(int v, const char* name) {
  if (v < 0) throw DomainError(std::string(name) + " must be nonnegative");
}

void require_unit_disk(const Complex& v, const char* name) {
  if (!(std::abs(v) < 1.0)) throw DomainError(std::string(name) + " must have modulus < 1");
}

}  // namespace

bool operator==(const VerificationReport& a, const VerificationReport& b) {
  if (a.check_id != b.check_id || a.params.size() != b.params.size()) return false;
  for (auto ia = a.params.begin(), ib = b.params.begin(); ia != a.params.end(); ++ia, ++ib)
    if (ia->first != ib->first || !same_complex(ia->second, ib->second)) return false;
  return same_complex(a.lhs, b.lhs) && same_complex(a.rhs, b.rhs) &&
         same_double(a.abs_err, b.abs_err) && same_double(a.rel_err, b.rel_err) &&
         same_double(a.tol, b.tol) && a.nodes_used == b.nodes_used && a.pass == b.pass &&
         same_double(a.runtime_ms, b.runtime_ms) && a.note == b.note;
}

VerificationReport make_report(std::string check_id, Params params, Complex lhs, Complex rhs,
                               double tol, std::int64_t nodes_used, std::string note) {
  VerificationReport r;
  r.check_id = std::move(check_id);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
  r.tol = tol;
  r.nodes_used = nodes_used;
  r.pass = r.rel_err <= tol;
  r.note = std::move(note);
  return r;
}

double default_tolerance(ToleranceKind kind) {
  if (const char* env = std::getenv("QKERNEL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0 && std::isfinite(v)) return v;
  }
  switch (kind) {
    case ToleranceKind::Quadrature:
      return 1e-9;
    case ToleranceKind::Series:
      return 1e-11;
    case ToleranceKind::Bound:
      return 1e-12;
  }
  return 1e-9;
}

// ---------------------------------------------------------------------------
// Closed forms

Complex thm_1_1_rhs(int m, int n, Complex beta, const Context& ctx) {
  if (m != n) return 0.0;
  return 1.0 / h_norm(n, beta, ctx);
}

QuadratureResult<double> thm_1_1_lhs(int m, int n, Complex beta, const Context& ctx) {
  const Ultraspherical cm(m, beta, ctx), cn(n, beta, ctx);
  return half_period_quadrature<double>(
      [&](double th) { return cm(th) * cn(th) * weight_omega_beta(th, beta, ctx); }, ctx);
}

Complex thm_1_2_rhs(int m, int n, Complex beta, Complex gamma, const Context& ctx) {
  if ((m - n) % 2 != 0 || m < n) return 0.0;
  const Complex q = ctx.q();
  const int k = (m - n) / 2;
  const int s = (m + n) / 2;
  // beta^k (gamma/beta; q)_k as prod_{j<k} (beta - gamma q^j)
  Complex lead(1), qj(1);
  for (int j = 0; j < k; ++j) {
    lead *= beta - gamma * qj;
    qj *= q;
  }
  const Complex den = (1.0 - beta) * h_norm(n, beta, ctx) * qpoch_finite(q, q, k) *
                      qpoch_finite(q * beta, q, s);
  if (den == Complex(0)) throw PoleError("connection-integral closed-form denominator vanishes");
  return (1.0 - beta * cpow(q, n)) * lead * qpoch_finite(gamma, q, s) / den;
}

Complex thm_1_3_diagonal(int n, Complex alpha, Complex beta, const Context& ctx) {
  const Complex q = ctx.q();
  const Complex qn = cpow(q, n);
  const Complex den = qpoch_multi({q, alpha * beta}, kInf, ctx) * qpoch_finite(q, q, n);
  if (den == Complex(0)) throw PoleError("two-parameter norm denominator vanishes");
  return 2.0 * kPi * qpoch_multi({alpha, beta}, kInf, ctx) *
         (1.0 / (1.0 - alpha * qn) + 1.0 / (1.0 - beta * qn)) *
         qpoch_finite(alpha * beta, q, n) / den;
}

SeriesSum thm_1_4_rhs(Complex alpha, Complex beta, Complex s, Complex t, const Context& ctx) {
  const Complex q = ctx.q();
  const double abs_q = ctx.abs_q();
  const Complex st = s * t;
  const double abs_st = std::abs(st);
  if (!(abs_st < 1.0)) throw DomainError("five-parameter q-beta series requires |st| < 1");

  CompensatedSum<double> sum;
  Complex poch(1);  // (alpha beta; q)_n / (q;q)_n (st)^n
  Complex qn(1);
  double abs_qn = 1;
  for (std::size_t n = 0;; ++n) {
    if (n >= ctx.max_series_terms())
      throw ConvergenceError("five-parameter q-beta series exceeded max_series_terms");
    sum += (1.0 / (1.0 - alpha * qn) + 1.0 / (1.0 - beta * qn)) * poch;

    // |poch_{m+1}/poch_m| <= rho for all m >= n; the weights are bounded by w_bound.
    const double rho = abs_st * (1.0 + std::abs(alpha * beta) * abs_qn) / (1.0 - abs_qn * abs_q);
    const double w_bound = 1.0 / (1.0 - std::abs(alpha) * abs_qn * abs_q) +
                           1.0 / (1.0 - std::abs(beta) * abs_qn * abs_q);
    if (rho < 1.0) {
      const double tail = w_bound * std::abs(poch) * rho / (1.0 - rho);
      const Complex partial = sum.value();
      if (tail <= ctx.eps_series() * std::abs(partial) || poch == Complex(0))
        return {partial, tail, n + 1};
    }
    poch *= (1.0 - alpha * beta * qn) / (1.0 - qn * q) * st;
    qn *= q;
    abs_qn *= abs_q;
  }
}

Eigen::MatrixXcd gram_matrix_thm_1_1(int max_degree, Complex beta, const Context& ctx) {
  Eigen::MatrixXcd g(max_degree + 1, max_degree + 1);
  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; n <= max_degree; ++n) g(m, n) = thm_1_1_lhs(m, n, beta, ctx).value;
  return g;
}

// ---------------------------------------------------------------------------
// Checks

VerificationReport verify_thm_1_1(int m, int n, Complex beta, const Context& ctx,
                                  std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Quadrature));
  Params params{{"m", m}, {"n", n}, {"beta", beta}, {"q", ctx.q()}};
  return guarded("thm-1.1", params, tol, [&] {
    require_nonnegative(m, "m");
    require_nonnegative(n, "n");
    require_unit_disk(beta, "beta");
    const auto lhs = thm_1_1_lhs(m, n, beta, ctx);
    return make_report("thm-1.1", params, lhs.value, thm_1_1_rhs(m, n, beta, ctx), tol,
                       static_cast<std::int64_t>(lhs.nodes_used));
  });
}

VerificationReport verify_thm_1_2(int m, int n, Complex beta, Complex gamma, const Context& ctx,
                                  std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Quadrature));
  Params params{{"m", m}, {"n", n}, {"beta", beta}, {"gamma", gamma}, {"q", ctx.q()}};
  return guarded("thm-1.2", params, tol, [&] {
    require_nonnegative(m, "m");
    require_nonnegative(n, "n");
    require_unit_disk(beta, "beta");
    require_unit_disk(gamma, "gamma");
    const Ultraspherical cm(m, gamma, ctx), cn(n, beta, ctx);
    const auto lhs = half_period_quadrature<double>(
        [&](double th) { return cm(th) * cn(th) * weight_omega_beta(th, beta, ctx); }, ctx);
    std::string note;
    if (m < n && (m - n) % 2 == 0)
      note = "m < n: closed form carries 1/(q;q)_{(m-n)/2} with negative index, taken as 0";
    return make_report("thm-1.2", params, lhs.value, thm_1_2_rhs(m, n, beta, gamma, ctx), tol,
                       static_cast<std::int64_t>(lhs.nodes_used), note);
  });
}

VerificationReport verify_thm_1_3(int m, int n, Complex alpha, Complex beta, const Context& ctx,
                                  std::optional<double> tol_in, SecondFactor variant) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Quadrature));
  Params params{{"m", m}, {"n", n}, {"alpha", alpha}, {"beta", beta}, {"q", ctx.q()}};
  return guarded("thm-1.3", params, tol, [&] {
    require_nonnegative(m, "m");
    require_nonnegative(n, "n");
    require_unit_disk(alpha, "alpha");
    require_unit_disk(beta, "beta");
    const Gasper cm(m, alpha, beta, ctx), cn(n, alpha, beta, ctx);
    const double sign = variant == SecondFactor::SameAngle ? 1.0 : -1.0;
    const auto lhs = periodic_quadrature<double>(
        [&](double th) { return cm(th) * cn(sign * th) * weight_omega_ab(th, alpha, beta, ctx); },
        ctx);
    const Complex rhs = m == n ? thm_1_3_diagonal(n, alpha, beta, ctx) : Complex(0);
    const std::string note = variant == SecondFactor::SameAngle
                                 ? "integrand C_m(e^{i theta}) C_n(e^{i theta}) omega^(alpha,beta)"
                                 : "integrand C_m(e^{i theta}) C_n(e^{-i theta}) omega^(alpha,beta)";
    return make_report("thm-1.3", params, lhs.value, rhs, tol,
                       static_cast<std::int64_t>(lhs.nodes_used), note);
  });
}

VerificationReport verify_thm_1_4(Complex alpha, Complex beta, Complex s, Complex t,
                                  const Context& ctx, std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Quadrature));
  Params params{{"alpha", alpha}, {"beta", beta}, {"s", s}, {"t", t}, {"q", ctx.q()}};
  return guarded("thm-1.4", params, tol, [&] {
    for (const auto& [name, v] : params) require_unit_disk(v, name.c_str());
    const auto lhs = periodic_quadrature<double>(
        [&](double th) {
          const Complex e = std::polar(1.0, th), ec = std::conj(e);
          const Complex e2 = e * e, e2c = ec * ec;
          const Complex num = qpoch_multi({alpha * t * e, beta * t * ec, alpha * s * e,
                                           beta * s * ec, e2, e2c},
                                          kInf, ctx);
          const Complex den =
              qpoch_multi({t * e, t * ec, s * e, s * ec, alpha * e2, beta * e2c}, kInf, ctx);
          return num / den;
        },
        ctx);
    const auto series = thm_1_4_rhs(alpha, beta, s, t, ctx);
    const Complex den = qpoch_multi({ctx.q(), alpha * beta}, kInf, ctx);
    if (den == Complex(0)) throw PoleError("q-beta integral prefactor denominator vanishes");
    const Complex rhs = 2.0 * kPi * qpoch_multi({alpha, beta}, kInf, ctx) / den * series.value;
    return make_report("thm-1.4", params, lhs.value, rhs, tol,
                       static_cast<std::int64_t>(lhs.nodes_used),
                       "series terms " + std::to_string(series.terms) + ", tail bound " +
                           fmt(series.tail_bound));
  });
}

VerificationReport verify_prop_3_1(Complex a, Complex b, Complex c, Complex x, Complex y,
                                   const Context& ctx, std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"a", a}, {"b", b}, {"c", c}, {"x", x}, {"y", y}, {"q", ctx.q()}};
  return guarded("prop-3.1", params, tol, [&] {
    if (x == Complex(0) || y == Complex(0)) throw DomainError("x and y must be nonzero");
    const double worst = std::max({std::abs(a), std::abs(b), std::abs(c * x), std::abs(c * y),
                                   std::abs(a * x / y), std::abs(b * y / x)});
    if (!(worst < 1.0))
      throw DomainError("requires max(|a|,|b|,|cx|,|cy|,|ax/y|,|by/x|) < 1");
    const Complex q = ctx.q();
    const auto integrand = [&](const Complex& z) {
      return qpoch_multi({q * z / x, q * z / y, a * b * c * z}, kInf, ctx) /
             qpoch_multi({a * z / y, b * z / x, c * z}, kInf, ctx);
    };
    const auto lhs = jackson_q_integral_detail(integrand, x, y, ctx);
    const Complex den =
        qpoch_multi({a * x / y, b * y / x, a, b, c * x, c * y}, kInf, ctx);
    if (den == Complex(0)) throw PoleError("Al-Salam-Verma product denominator vanishes");
    const Complex rhs = (1.0 - q) * y *
                        qpoch_multi({q, x / y, q * y / x, a * b, a * c * x, b * c * y}, kInf, ctx) /
                        den;
    return make_report("prop-3.1", params, lhs.value, rhs, tol,
                       static_cast<std::int64_t>(lhs.terms));
  });
}

VerificationReport verify_prop_3_2(int n, Complex a, Complex b, Complex x, Complex y,
                                   const Context& ctx, std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"n", n}, {"a", a}, {"b", b}, {"x", x}, {"y", y}, {"q", ctx.q()}};
  return guarded("prop-3.2", params, tol, [&] {
    require_nonnegative(n, "n");
    if (x == Complex(0) || y == Complex(0)) throw DomainError("x and y must be nonzero");
    const Complex q = ctx.q();
    const Complex prefactor_den =
        (1.0 - q) * y * qpoch_multi({q, a * b, x / y, q * y / x}, kInf, ctx);
    if (prefactor_den == Complex(0))
      throw PoleError("q-integral prefactor denominator (q, ab, x/y, qy/x; q)_inf vanishes");
    const Complex prefactor = qpoch_finite(a * b, q, n) *
                              qpoch_multi({a, b, b * y / x, a * x / y}, kInf, ctx) / prefactor_den;
    const auto integrand = [&](const Complex& z) {
      return qpoch_multi({q * z / x, q * z / y}, kInf, ctx) * cpow(z, n) /
             qpoch_multi({b * z / x, a * z / y}, kInf, ctx);
    };
    const auto integral = jackson_q_integral_detail(integrand, x, y, ctx);
    return make_report("prop-3.2", params, phi_poly(n, a, b, x, y, ctx),
                       prefactor * integral.value, tol,
                       static_cast<std::int64_t>(integral.terms));
  });
}

std::vector<double> connection_grid(int grid_size) {
  std::vector<double> thetas(static_cast<std::size_t>(std::max(grid_size, 0)));
  for (int j = 0; j < grid_size; ++j) thetas[j] = kPi * (j + 0.5) / grid_size;
  return thetas;
}

VerificationReport verify_rogers_connection(int n, Complex beta, Complex gamma,
                                            std::span<const double> thetas, const Context& ctx,
                                            std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"n", n},
                {"beta", beta},
                {"gamma", gamma},
                {"q", ctx.q()},
                {"grid", static_cast<double>(thetas.size())}};
  return guarded("rogers-connection", params, tol, [&] {
    require_nonnegative(n, "n");
    require_unit_disk(beta, "beta");
    require_unit_disk(gamma, "gamma");
    if (thetas.empty()) throw DomainError("empty theta grid");
    const auto coeffs = connection_coeffs(n, beta, gamma, ctx);
    Complex worst_l(0), worst_r(0);
    double worst = -1;
    for (const double th : thetas) {
      const Complex l = Ultraspherical(n, gamma, ctx)(th);
      Complex r(0);
      for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        r += coeffs[k] * Ultraspherical(n - 2 * static_cast<int>(k), beta, ctx)(th);
      const double e = scaled_error(l, r);
      if (e > worst) {
        worst = e;
        worst_l = l;
        worst_r = r;
      }
    }
    return make_report("rogers-connection", params, worst_l, worst_r, tol,
                       static_cast<std::int64_t>(thetas.size()), "worst point of the grid");
  });
}

VerificationReport verify_askey_ismail_chebyshev(int n, int k, Complex beta, const Context& ctx,
                                                 std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Quadrature));
  Params params{{"n", n}, {"k", k}, {"beta", beta}, {"q", ctx.q()}};
  return guarded("askey-ismail", params, tol, [&] {
    require_nonnegative(n, "n");
    if (k < 1) throw DomainError("Askey-Ismail integral requires k >= 1");
    require_unit_disk(beta, "beta");
    const Complex q = ctx.q();
    const Ultraspherical cn(n, beta, ctx);
    const int order = n + 2 * k;
    const auto lhs = half_period_quadrature<double>(
        [&](double th) {
          return cn(th) * chebyshev_t(order, std::cos(th)) * weight_omega_beta(th, beta, ctx);
        },
        ctx);
    // beta^k (1/beta; q)_k as prod_{j<k} (beta - q^j)
    Complex lead(1), qj(1);
    for (int j = 0; j < k; ++j) {
      lead *= beta - qj;
      qj *= q;
    }
    const Complex den = (1.0 - cpow(q, n + k)) *
                        qpoch_multi({q, beta * beta * cpow(q, n)}, kInf, ctx);
    if (den == Complex(0)) throw PoleError("Askey-Ismail closed-form denominator vanishes");
    const Complex rhs = kPi * qbinom(n + k, k, q) * (1.0 - cpow(q, order)) *
                        qpoch_multi({beta, beta * cpow(q, n + k + 1)}, kInf, ctx) * lead / den;
    return make_report("askey-ismail", params, lhs.value, rhs, tol,
                       static_cast<std::int64_t>(lhs.nodes_used),
                       "W_beta taken as omega_beta");
  });
}

VerificationReport verify_gf_4_1(Complex beta, double theta, int degree, const Context& ctx,
                                 std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"beta", beta}, {"q", ctx.q()}, {"theta", theta}, {"D", degree}};
  return guarded("gf-4.1", params, tol, [&] {
    require_nonnegative(degree, "D");
    require_unit_disk(beta, "beta");
    const Complex q = ctx.q();
    const Complex e = std::polar(1.0, theta), ec = std::conj(e);
    const auto g = gf_expand<double>({beta * q * e, beta * q * ec}, {e, ec}, degree, ctx);
    Complex worst_l(0), worst_r(0);
    double worst = -1;
    Complex qn(1);
    for (int n = 0; n <= degree; ++n) {
      const Complex l = (1.0 - beta * qn) * Ultraspherical(n, beta, ctx)(theta);
      const Complex r = (1.0 - beta) * (g[n] - (n >= 2 ? beta * g[n - 2] : Complex(0)));
      const double err = scaled_error(l, r);
      if (err > worst) {
        worst = err;
        worst_l = l;
        worst_r = r;
      }
      qn *= q;
    }
    return make_report("gf-4.1", params, worst_l, worst_r, tol, degree + 1,
                       "worst coefficient up to t^" + std::to_string(degree));
  });
}

namespace {

/// Worst coefficient mismatch of the resummation
///   sum_n (q beta/gamma;q)_n (gamma u q^n;q)_inf / ((q;q)_n (beta u q^n;q)_inf) (gamma q^m)^n
///   = (beta;q)_inf/(gamma;q)_inf sum_j (gamma/beta;q)_j (gamma;q)_{m+j} beta^j u^j / ((q;q)_j (beta;q)_{m+j+1})
/// in the variable u = t^2 for m = 0..degree, coefficients u^0..u^{degree/2}.
struct Mismatch {
  double err = -1;
  Complex lhs, rhs;
};

Mismatch resummation_mismatch(Complex beta, Complex gamma, int degree, const Context& ctx) {
  const Complex q = ctx.q();
  const double abs_q = ctx.abs_q();
  const int jmax = degree / 2;
  const Complex ratio_base = q * beta / gamma;
  const Complex front = qpoch_infinite(beta, ctx) / qpoch_infinite(gamma, ctx);
  Mismatch worst;
  for (int m = 0; m <= degree; ++m) {
    const Complex z = gamma * cpow(q, m);
    TruncatedPowerSeries<double> lhs(jmax);
    Complex c(1);  // (q beta/gamma;q)_n (gamma q^m)^n / (q;q)_n
    Complex qn(1);
    double abs_qn = 1;
    for (std::size_t n = 0;; ++n) {
      if (n >= ctx.max_series_terms()) throw ConvergenceError("resummation did not converge");
      const auto inner = gf_expand<double>({gamma * qn}, {beta * qn}, jmax, ctx);
      lhs = lhs + inner * c;
      const double rho = (std::abs(z) + std::abs(ratio_base * z) * abs_qn) / (1.0 - abs_qn * abs_q);
      if (rho < 1.0) {
        const double tail = inner.coeffs().cwiseAbs().maxCoeff() * std::abs(c) * rho / (1.0 - rho);
        if (tail < ctx.eps_series() || c == Complex(0)) break;
      }
      c *= (1.0 - ratio_base * qn) * z / (1.0 - qn * q);
      qn *= q;
      abs_qn *= abs_q;
    }
    Complex lead(1), qj(1);
    for (int j = 0; j <= jmax; ++j) {
      const Complex r = front * lead * qpoch_finite(gamma, q, m + j) /
                        (qpoch_finite(q, q, j) * qpoch_finite(beta, q, m + j + 1));
      const double err = scaled_error(lhs[j], r);
      if (err > worst.err) worst = {err, lhs[j], r};
      lead *= beta - gamma * qj;
      qj *= q;
    }
  }
  return worst;
}

}  // namespace

VerificationReport verify_prop_4_2(Complex beta, Complex gamma, double theta, int degree,
                                   const Context& ctx, std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"beta", beta}, {"gamma", gamma}, {"q", ctx.q()}, {"theta", theta}, {"D", degree}};
  return guarded("prop-4.2", params, tol, [&] {
    require_nonnegative(degree, "D");
    require_unit_disk(beta, "beta");
    require_unit_disk(gamma, "gamma");
    if (beta == Complex(0)) throw DomainError("the connection generating function requires beta != 0");
    const Complex q = ctx.q();
    Mismatch worst;
    for (int n = 0; n <= degree; ++n) {
      const Complex l = Ultraspherical(n, gamma, ctx)(theta);
      Complex r(0), lead(1), qj(1);
      for (int j = 0; 2 * j <= n; ++j) {
        const int m = n - 2 * j;
        r += (1.0 - beta * cpow(q, m)) * lead * qpoch_finite(gamma, q, j + m) /
             (qpoch_finite(q, q, j) * qpoch_finite(beta, q, m + j + 1)) *
             Ultraspherical(m, beta, ctx)(theta);
        lead *= beta - gamma * qj;
        qj *= q;
      }
      const double err = scaled_error(l, r);
      if (err > worst.err) worst = {err, l, r};
    }
    std::string note = "worst coefficient up to t^" + std::to_string(degree);
    if (gamma != Complex(0)) {
      const auto inner = resummation_mismatch(beta, gamma, degree, ctx);
      note += "; inner resummation worst error " + fmt(inner.err);
      if (inner.err > worst.err) {
        worst = inner;
        note += " (reported)";
      }
    } else {
      note += "; inner resummation skipped at gamma = 0";
    }
    return make_report("prop-4.2", params, worst.lhs, worst.rhs, tol, degree + 1, note);
  });
}

VerificationReport verify_uniform_bound(int n, double alpha, double beta, int grid_size,
                                        const Context& ctx, std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Bound));
  Params params{{"n", n}, {"alpha", alpha}, {"beta", beta}, {"q", ctx.q()}, {"grid", grid_size}};
  return guarded("uniform-bound", params, tol, [&] {
    require_nonnegative(n, "n");
    if (grid_size < 1) throw DomainError("grid must have at least one point");
    if (ctx.q().imag() != 0.0) throw DomainError("uniform bound requires real q");
    if (!(std::abs(alpha) < 1.0) || !(std::abs(beta) < 1.0))
      throw DomainError("uniform bound requires -1 < alpha, beta < 1");
    const Gasper c(n, alpha, beta, ctx);
    const double bound = std::abs(c(0.0));
    double excess = 0;
    double peak = 0;
    for (int j = 0; j < grid_size; ++j) {
      const double mag = std::abs(c(2.0 * kPi * j / grid_size));
      peak = std::max(peak, mag);
      excess = std::max(excess, mag - bound);
    }
    return make_report("uniform-bound", params, excess, 0.0, tol, grid_size,
                       "lhs is max(0, |C_n(e^{i theta})| - C_n(1)); max |C_n| " + fmt(peak) +
                           ", C_n(1) " + fmt(bound));
  });
}

VerificationReport verify_qbinomial_theorem(Complex a, Complex z, const Context& ctx,
                                            std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"a", a}, {"z", z}, {"q", ctx.q()}};
  return guarded("qbinomial", params, tol, [&] {
    require_unit_disk(z, "z");
    const auto lhs = phi_series_detail(HypergeometricSpec<double>{{a}, {}, z}, ctx);
    const Complex den = qpoch_infinite(z, ctx);
    if (den == Complex(0)) throw PoleError("(z;q)_inf vanishes");
    return make_report("qbinomial", params, lhs.value, qpoch_infinite(a * z, ctx) / den, tol,
                       static_cast<std::int64_t>(lhs.terms));
  });
}

VerificationReport verify_rogers_6phi5(Complex a, Complex b, Complex c, Complex d,
                                       const Context& ctx, std::optional<double> tol_in) {
  const double tol = tol_in.value_or(default_tolerance(ToleranceKind::Series));
  Params params{{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"q", ctx.q()}};
  return guarded("rogers-6phi5", params, tol, [&] {
    const Complex rhs = rogers_6w5_rhs(a, b, c, d, ctx);
    const std::array<Complex, 3> rest{b, c, d};
    const auto spec = very_well_poised_spec<double>(a, rest, a * ctx.q() / (b * c * d), ctx);
    const auto lhs = phi_series_detail(spec, ctx);
    return make_report("rogers-6phi5", params, lhs.value, rhs, tol,
                       static_cast<std::int64_t>(lhs.terms),
                       lhs.terminated ? "terminating series" : "");
  });
}

}  // namespace qkernel::verify
