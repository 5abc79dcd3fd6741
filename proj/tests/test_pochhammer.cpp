#include <doctest.h>

#include <array>
#include <vector>

#include "qkernel/qkernel.hpp"
#include "test_support.hpp"

using namespace qkernel;
using qtest::Complex;
using qtest::rel_err;

TEST_CASE("context rejects |q| >= 1 and bad tolerances") {
  CHECK_THROWS_AS(QContext<double>(1.0), DomainError);
  CHECK_THROWS_AS(QContext<double>(Complex(0.8, 0.8)), DomainError);
  Tolerances<double> tol;
  tol.eps_series = 0;
  CHECK_THROWS_AS(QContext<double>(0.3, tol), DomainError);
  tol = {};
  tol.max_quad_nodes = 8;
  CHECK_THROWS_AS(QContext<double>(0.3, tol), DomainError);
  const QContext<double> ctx(0.3);
  CHECK(ctx.eps_product() == 1e-15);
  CHECK(ctx.max_quad_nodes() == (1u << 20));
  CHECK(ctx.with_q(-0.5).q() == Complex(-0.5));
  CHECK(ctx.with_q(-0.5).eps_quad() == ctx.eps_quad());
}

TEST_CASE("pochhammer index") {
  const PochhammerIndex inf = PochhammerIndex::infinity();
  CHECK(inf.is_infinite());
  CHECK_FALSE(PochhammerIndex(-3).is_infinite());
  CHECK(PochhammerIndex(-3).value() == -3);
  CHECK_FALSE(PochhammerIndex(0) == inf);
}

TEST_CASE("finite q-Pochhammer examples") {
  CHECK(qpoch_finite(0.7, 0.3, 0) == Complex(1));
  CHECK(std::abs(qpoch_finite(0.5, 0.3, 2) - 0.425) < 1e-16);
  CHECK_THROWS_AS(qpoch_finite(0.3, 0.3, -1), PoleError);
  CHECK_THROWS_AS(qpoch_finite(0.3, 0.0, -2), DomainError);
  // (a;q)_{-1} = 1/(1 - a/q)
  CHECK(rel_err(qpoch_finite(0.2, 0.5, -1), 1.0 / (1.0 - 0.4)) < 1e-15);
}

TEST_CASE("infinite q-Pochhammer examples") {
  const QContext<double> ctx(0.5);
  CHECK(qpoch_infinite(Complex(0), ctx) == Complex(1));
  CHECK(qpoch_infinite(Complex(1), ctx) == Complex(0));
  CHECK(rel_err(qpoch_infinite(Complex(0.5), ctx), qtest::brute_poch_inf(0.5, 0.5, 200)) < 1e-15);
  CHECK(rel_err(qpoch(Complex(0.5), 2, ctx), 0.5 * 0.75) < 1e-15);

  Tolerances<double> tight;
  tight.max_product_terms = 16;
  const QContext<double> capped(0.99, tight);
  CHECK_THROWS_AS(qpoch_infinite(Complex(0.5), capped), ConvergenceError);
}

TEST_CASE("multi-argument shorthand") {
  const QContext<double> ctx(0.3);
  CHECK_THROWS_AS(qpoch_multi(std::span<const Complex>{}, 2, ctx), DomainError);
  CHECK(qpoch_multi({Complex(0.4)}, PochhammerIndex::infinity(), ctx) ==
        qpoch_infinite(Complex(0.4), ctx));
  CHECK(rel_err(qpoch_multi({Complex(0.2), Complex(0.4)}, 1, ctx), 0.48) < 1e-15);
}

TEST_CASE("q-binomial coefficients") {
  CHECK(qbinom(5, 0, Complex(0.3)) == Complex(1));
  const Complex q(0.3, 0.2);
  CHECK(rel_err(qbinom(2, 1, q), 1.0 + q) < 1e-15);
  CHECK(rel_err(qbinom(4, 1, Complex(0.2)), qbinom(4, 3, Complex(0.2))) < 1e-15);
  CHECK(qbinom(4, -1, q) == Complex(0));
  CHECK(qbinom(4, 5, q) == Complex(0));
}

TEST_CASE("property: (a;q)_{m+n} = (a;q)_m (aq^m;q)_n") {
  qtest::Gen gen(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex a = gen.disk(0, 0.9), q = gen.disk(0, 0.9);
    const int m = gen.integer(0, 20), n = gen.integer(0, 20);
    const Complex lhs = qpoch_finite(a, q, m + n);
    const Complex rhs = qpoch_finite(a, q, m) * qpoch_finite(a * std::pow(q, m), q, n);
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("property: (a;q)_inf = (a;q)_n (aq^n;q)_inf") {
  qtest::Gen gen(102);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex a = gen.disk(0, 0.9), q = gen.disk(0, 0.9);
    const QContext<double> ctx(q);
    const int n = gen.integer(0, 50);
    const Complex lhs = qpoch_infinite(a, ctx);
    const Complex rhs = qpoch_finite(a, q, n) * qpoch_infinite(a * std::pow(q, n), ctx);
    CHECK(rel_err(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("property: negative index inverts the shifted product") {
  qtest::Gen gen(103);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Complex a = gen.disk(0, 2), q = gen.disk(0.1, 0.9);
    const int n = gen.integer(1, 12);
    try {
      const Complex neg = qpoch_finite(a, q, -n);
      const Complex pos = qpoch_finite(a * std::pow(q, -n), q, n);
      CHECK(std::abs(neg * pos - 1.0) < 1e-10);
      ++checked;
    } catch (const PoleError&) {
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("property: q-Pascal recurrence") {
  qtest::Gen gen(104);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex q = gen.disk(0, 0.9);
    for (int n = 1; n <= 30; ++n)
      for (int k = 0; k <= n; ++k) {
        const Complex rec = qbinom(n - 1, k - 1, q) + std::pow(q, k) * qbinom(n - 1, k, q);
        CHECK(qtest::scaled_err(qbinom(n, k, q), rec) < 1e-11);
      }
  }
}

TEST_CASE("long double instantiation") {
  using LC = std::complex<long double>;
  const QContext<long double> ctx(LC(0.3L));
  const LC v = qpoch_infinite(LC(0.5L), ctx);
  LC brute(1);
  long double qk = 1;
  for (int k = 0; k < 60; ++k, qk *= 0.3L) brute *= 1.0L - 0.5L * qk;
  CHECK(std::abs(v - brute) < 1e-15L);
}
