#include <doctest.h>

#include <numbers>
#include <vector>

#include "qkernel/qkernel.hpp"
#include "test_support.hpp"

using namespace qkernel;
using qtest::Complex;
using qtest::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("periodic quadrature examples") {
  const QContext<double> ctx(0.3);
  const auto one = periodic_quadrature<double>([](double) { return Complex(1); }, ctx);
  CHECK(one.converged);
  CHECK(std::abs(one.value - 2 * kPi) < 1e-14);

  const auto wave = periodic_quadrature<double>([](double t) { return std::polar(1.0, 3 * t); }, ctx);
  CHECK(std::abs(wave.value) < 1e-14);

  const auto w = periodic_quadrature<double>(
      [&](double t) { return weight_omega_beta(t, Complex(0), ctx); }, ctx);
  CHECK(rel_err(w.value, 4 * kPi / qtest::brute_poch_inf(0.3, 0.3)) < 1e-10);
  CHECK(w.error_estimate <= ctx.eps_quad() * (1 + std::abs(w.value)));
}

TEST_CASE("periodic quadrature gives up at the node cap") {
  Tolerances<double> tol;
  tol.max_quad_nodes = 128;
  const QContext<double> ctx(0.3, tol);
  // a sharply peaked periodic function needs far more than 128 nodes
  const auto peaked = [](double t) { return Complex(1.0 / (1.0001 - std::cos(t))); };
  CHECK_THROWS_AS(periodic_quadrature<double>(peaked, ctx), ConvergenceError);
  CHECK_THROWS_AS(periodic_quadrature<double>([](double) { return Complex(NAN); }, QContext<double>(0.3)),
                  ConvergenceError);
}

TEST_CASE("quadrature is deterministic and spectrally convergent") {
  const QContext<double> ctx(0.3);
  const Complex beta = 0.5;
  const auto f = [&](double t) {
    const Complex c = qtest::brute_ultraspherical(3, t, beta, 0.3);
    return c * c * weight_omega_beta(t, beta, ctx);
  };
  const auto a = periodic_quadrature<double>(f, ctx);
  const auto b = periodic_quadrature<double>(f, ctx);
  CHECK(a.value == b.value);
  const Complex t128 = qtest::brute_trapezoid(f, 128), t256 = qtest::brute_trapezoid(f, 256);
  CHECK(rel_err(t128, t256) < 1e-12);
  CHECK(rel_err(half_period_quadrature<double>(f, ctx).value * 2.0, a.value) < 1e-15);
}

TEST_CASE("half period equals half of the full period for even integrands") {
  const QContext<double> ctx(0.4);
  const auto f = [&](double t) { return weight_omega_beta(t, Complex(0.3), ctx) * std::cos(2 * t); };
  const Complex full = periodic_quadrature<double>(f, ctx).value;
  // midpoint rule on [0, pi] with many nodes as an independent estimate
  Complex mid(0);
  const int n = 4000;
  for (int j = 0; j < n; ++j) mid += f(kPi * (j + 0.5) / n);
  mid *= kPi / n;
  CHECK(rel_err(half_period_quadrature<double>(f, ctx).value, full / 2.0) < 1e-15);
  CHECK(rel_err(mid, full / 2.0) < 1e-9);
}

TEST_CASE("Jackson integral examples") {
  const QContext<double> ctx(0.4);
  const Complex b(0.7, 0.2);
  CHECK(rel_err(jackson_q_integral([](Complex) { return Complex(1); }, Complex(0), b, ctx), b) < 1e-13);
  CHECK(rel_err(jackson_q_integral([](Complex z) { return z; }, Complex(0), b, ctx), b * b / 1.4) < 1e-14);

  const auto poly = [](Complex z) { return 1.0 + 2.0 * z - 0.5 * z * z * z; };
  const Complex a(-0.3, 0.5);
  const Complex whole = jackson_q_integral(poly, a, b, ctx);
  const Complex split = jackson_q_integral(poly, Complex(0), b, ctx) -
                        jackson_q_integral(poly, Complex(0), a, ctx);
  CHECK(std::abs(whole - split) < 1e-12);

  CHECK_THROWS_AS(jackson_q_integral([](Complex z) { return 1.0 / (z * z * z); }, Complex(0), b, ctx),
                  ConvergenceError);
}

TEST_CASE("property: Jackson integral of polynomials") {
  qtest::Gen gen(501);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex q = gen.disk(0.05, 0.9);
    const QContext<double> ctx(q);
    const int d = gen.integer(0, 6);
    std::vector<Complex> c(d + 1);
    for (auto& x : c) x = gen.disk(0, 1);
    const Complex a = gen.disk(0, 1.5), b = gen.disk(0, 1.5);
    const auto f = [&](Complex z) {
      Complex s(0);
      for (int j = d; j >= 0; --j) s = s * z + c[j];
      return s;
    };
    Complex exact(0);
    for (int j = 0; j <= d; ++j)
      exact += c[j] * (std::pow(b, j + 1) - std::pow(a, j + 1)) * (1.0 - q) / (1.0 - std::pow(q, j + 1));
    CHECK(std::abs(jackson_q_integral(f, a, b, ctx) - exact) < 1e-12 * (1 + std::abs(exact)) * 10);
  }
}

TEST_CASE("weights") {
  const QContext<double> ctx(0.5);
  CHECK(std::abs(weight_omega_beta(0.0, Complex(0.3), ctx)) == 0);
  CHECK(std::abs(weight_omega_ab(0.0, Complex(0.3), Complex(-0.2), ctx)) == 0);
  qtest::Gen gen(502);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = gen.real(0.01, 2 * kPi);
    const Complex a = gen.disk(0, 0.95), b = gen.disk(0, 0.95);
    CHECK(rel_err(weight_omega_beta(-t, b, ctx), weight_omega_beta(t, b, ctx)) < 1e-13);
    CHECK(rel_err(weight_omega_ab(t, b, b, ctx), weight_omega_beta(t, b, ctx)) < 1e-15);
    CHECK(rel_err(weight_omega_ab(-t, a, b, ctx), weight_omega_ab(t, b, a, ctx)) < 1e-13);
  }
  const Complex m1 = qtest::brute_poch_inf(-1.0, 0.5);
  CHECK(rel_err(weight_omega_beta(kPi / 2, Complex(0), ctx), m1 * m1) < 1e-14);

  WeightSpec<double> spec{WeightKind::OmegaAlphaBeta, 0.4, 1.2};
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.beta = 0.2;
  spec.validate();
  CHECK(spec(0.7, ctx) == weight_omega_ab(0.7, Complex(0.4), Complex(0.2), ctx));
}
