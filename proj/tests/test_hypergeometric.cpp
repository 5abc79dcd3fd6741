#include <doctest.h>

#include <array>
#include <vector>

#include "qkernel/qkernel.hpp"
#include "test_support.hpp"

using namespace qkernel;
using qtest::Complex;
using qtest::rel_err;
using Spec = HypergeometricSpec<double>;

namespace {

/// Term-by-term sum with brute-force Pochhammers, for a fixed number of terms.
Complex direct_phi(const Spec& spec, Complex q, int terms) {
  Complex s(0);
  for (int n = 0; n < terms; ++n) {
    Complex t = std::pow(spec.z, n) / qtest::brute_poch(q, q, n);
    for (const auto& a : spec.upper) t *= qtest::brute_poch(a, q, n);
    for (const auto& b : spec.lower) t /= qtest::brute_poch(b, q, n);
    s += t;
  }
  return s;
}

}  // namespace

TEST_CASE("phi series examples") {
  const QContext<double> ctx(0.3);
  CHECK(phi_series(Spec{{0.4, 0.2}, {0.5}, 0.0}, ctx) == Complex(1));

  const Complex lhs = phi_series(Spec{{0.4}, {}, 0.5}, ctx);
  const Complex rhs = qpoch_infinite(Complex(0.2), ctx) / qpoch_infinite(Complex(0.5), ctx);
  CHECK(rel_err(lhs, rhs) < 1e-12);

  // upper parameter q^{-3}: four terms survive
  const double q = 0.3;
  const Spec terminating{{std::pow(q, -3), 0.5}, {0.7}, 2.5};
  const auto r = phi_series_detail(terminating, ctx);
  CHECK(r.terminated);
  CHECK(r.terms == 4);
  CHECK(rel_err(r.value, direct_phi(terminating, q, 4)) < 1e-12);
}

TEST_CASE("phi series errors") {
  const QContext<double> ctx(0.3);
  CHECK_THROWS_AS(phi_series(Spec{{0.4}, {0.5}, 0.5}, ctx), DomainError);
  // lower parameter q^{-1} makes the second denominator vanish
  CHECK_THROWS_AS(phi_series(Spec{{0.4, 0.2}, {1.0 / 0.3}, 0.5}, ctx), DomainError);
  Tolerances<double> tol;
  tol.max_series_terms = 20;
  CHECK_THROWS_AS(phi_series(Spec{{0.4}, {}, 0.999}, QContext<double>(0.3, tol)), ConvergenceError);
}

TEST_CASE("phi series tail bound is honest") {
  const QContext<double> ctx(Complex(0.2, 0.3));
  const Spec spec{{Complex(0.3, 0.1), 0.6}, {Complex(-0.2, 0.4)}, Complex(0.5, 0.3)};
  const auto r = phi_series_detail(spec, ctx);
  const Complex reference = direct_phi(spec, ctx.q(), 200);
  CHECK(std::abs(r.value - reference) <= r.tail_bound + 1e-14);
  CHECK(r.tail_bound <= ctx.eps_series() * std::abs(r.value));
}

TEST_CASE("very-well-poised series examples") {
  const QContext<double> ctx(0.4);
  CHECK(w_series<double>(0.5, {0.3, 0.2, 0.1}, 0.0, ctx) == Complex(1));

  const Complex a = 0.5, b = 0.3, c = 0.2, d = 0.1;
  const Complex z = a * 0.4 / (b * c * d);
  // |aq/bcd| = 33.3 at this point
  CHECK(std::abs(z) > 1);
  CHECK_THROWS_AS(rogers_6w5_rhs(a, b, c, d, ctx), DomainError);

  const Complex a2 = 0.05, b2 = 0.5, c2 = 0.6, d2 = 0.7;
  const Complex z2 = a2 * 0.4 / (b2 * c2 * d2);
  const Complex lhs = w_series<double>(a2, {b2, c2, d2}, z2, ctx);
  CHECK(rel_err(lhs, rogers_6w5_rhs(a2, b2, c2, d2, ctx)) < 1e-12);
}

TEST_CASE("Rogers summation, terminating") {
  const double q = 0.4;
  const QContext<double> ctx(q);
  const Complex a = 0.3, c = 0.5, d = 0.6;
  const Complex b = std::pow(q, -2);
  const Complex z = a * q / (b * c * d);
  const std::array<Complex, 3> rest{b, c, d};
  const auto spec = very_well_poised_spec<double>(a, rest, z, ctx);
  const auto r = phi_series_detail(spec, ctx);
  CHECK(r.terminated);
  CHECK(r.terms == 3);
  CHECK(rel_err(r.value, direct_phi(spec, q, 3)) < 1e-12);
  CHECK(rel_err(r.value, rogers_6w5_rhs(a, b, c, d, ctx)) < 1e-12);
}

TEST_CASE("Rogers product rejects the boundary") {
  const QContext<double> ctx(0.4);
  const Complex a = 0.5, b = 0.6, c = 0.7;
  const Complex d = a * 0.4 / (b * c);  // aq/bcd = 1
  CHECK_THROWS_AS(rogers_6w5_rhs(a, b, c, d, ctx), DomainError);
  CHECK_THROWS_AS(rogers_6w5_rhs(a, Complex(0), c, d, ctx), DomainError);
}

TEST_CASE("property: q-binomial theorem over a random cloud") {
  qtest::Gen gen(301);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex a = gen.disk(0, 0.9), z = gen.disk(0, 0.9), q = gen.disk(0, 0.9);
    const QContext<double> ctx(q);
    const Complex lhs = phi_series(Spec{{a}, {}, z}, ctx);
    const Complex rhs = qpoch_infinite(a * z, ctx) / qpoch_infinite(z, ctx);
    CHECK(rel_err(lhs, rhs) < 1e-11);
  }
}

TEST_CASE("property: Rogers 6phi5 over a random cloud") {
  qtest::Gen gen(302);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex q = gen.disk(0.1, 0.7);
    const Complex b = gen.disk(0.5, 0.95), c = gen.disk(0.5, 0.95), d = gen.disk(0.5, 0.95);
    const Complex a = gen.disk(0.05, 0.9) * b * c * d / q;
    const QContext<double> ctx(q);
    const Complex lhs = w_series<double>(a, {b, c, d}, a * q / (b * c * d), ctx);
    CHECK(rel_err(lhs, rogers_6w5_rhs(a, b, c, d, ctx)) < 1e-11);
  }
}

TEST_CASE("property: w_series equals the substituted phi spec summed directly") {
  qtest::Gen gen(303);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex q = gen.disk(0.1, 0.6);
    const Complex a1 = gen.disk(0.1, 0.9);
    const std::array<Complex, 3> rest{gen.disk(0.3, 0.9), gen.disk(0.3, 0.9), gen.disk(0.3, 0.9)};
    const Complex z = gen.disk(0.0, 0.5);
    const QContext<double> ctx(q);
    const Complex root = std::sqrt(a1);
    Spec spec{{a1, q * root, -q * root, rest[0], rest[1], rest[2]},
              {root, -root, q * a1 / rest[0], q * a1 / rest[1], q * a1 / rest[2]},
              z};
    CHECK(rel_err(w_series<double>(a1, rest, z, ctx), direct_phi(spec, q, 120)) < 1e-11);
  }
}
