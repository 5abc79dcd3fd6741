#include <doctest.h>

#include <array>
#include <vector>

#include "qkernel/qkernel.hpp"
#include "test_support.hpp"

using namespace qkernel;
using qtest::Complex;
using qtest::rel_err;
using Series = TruncatedPowerSeries<double>;

namespace {

Series random_series(qtest::Gen& gen, int degree, bool unit_constant = false) {
  Series s(degree);
  for (int j = 0; j <= degree; ++j) s[j] = gen.disk(0, 1);
  if (unit_constant) s[0] = 1;
  return s;
}

}  // namespace

TEST_CASE("series shape") {
  CHECK(Series(4).coeffs().size() == 5);
  CHECK_THROWS_AS(Series(-1), DomainError);
  const Series s({1.0, 2.0, 3.0}, 1);
  CHECK(s.degree_cap() == 1);
  CHECK(s[1] == Complex(2));
  CHECK((Series(3) + Series(5)).degree_cap() == 3);
  CHECK((Series(6) * Series(2)).degree_cap() == 2);
}

TEST_CASE("Cauchy product examples") {
  const auto one = Series::constant(1, 3);
  CHECK((one * one)[0] == Complex(1));
  CHECK((one * one)[3] == Complex(0));

  const Series a({1.0, 1.0}, 2), b({1.0, -1.0}, 2);
  const auto c = ps_mul(a, b);
  CHECK(c[0] == Complex(1));
  CHECK(c[1] == Complex(0));
  CHECK(c[2] == Complex(-1));

  qtest::Gen gen(201);
  const auto x = random_series(gen, 8), y = random_series(gen, 8);
  const auto z = ps_mul(x, y);
  for (int j = 0; j <= 8; ++j) {
    Complex brute(0);
    for (int i = 0; i <= j; ++i) brute += x[i] * y[j - i];
    CHECK(std::abs(z[j] - brute) < 1e-14);
  }
}

TEST_CASE("reciprocal examples") {
  CHECK(ps_reciprocal(Series::constant(1, 4))[0] == Complex(1));
  const auto g = ps_reciprocal(Series({1.0, -1.0}, 4));
  for (int j = 0; j <= 4; ++j) CHECK(g[j] == Complex(1));
  CHECK_THROWS_AS(ps_reciprocal(Series({0.0, 1.0}, 4)), DomainError);

  qtest::Gen gen(202);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(gen, 10, true);
    const auto b = ps_reciprocal(a);
    const auto e = ps_mul(a, b);
    CHECK(std::abs(e[0] - 1.0) < 1e-13);
    for (int j = 1; j <= 10; ++j) {
      double scale = 0;
      for (int i = 0; i <= j; ++i) scale += std::abs(a[i]) * std::abs(b[j - i]);
      CHECK(std::abs(e[j]) <= 1e-13 * scale);
    }
  }
}

TEST_CASE("linear factors") {
  auto s = Series::constant(1, 5);
  s.mul_linear(0.5).div_linear(0.5);
  CHECK(std::abs(s[0] - 1.0) < 1e-16);
  for (int j = 1; j <= 5; ++j) CHECK(std::abs(s[j]) < 1e-16);
}

TEST_CASE("generating-function expansion examples") {
  const QContext<double> ctx(0.3);
  const auto empty = gf_expand<double>({}, {}, 6, ctx);
  CHECK(empty[0] == Complex(1));
  for (int j = 1; j <= 6; ++j) CHECK(empty[j] == Complex(0));

  // q-binomial theorem: coefficient n of (a t;q)_inf/(t;q)_inf is (a;q)_n/(q;q)_n
  const Complex a(0.4, -0.2);
  const auto binom = gf_expand<double>({a}, {Complex(1)}, 16, ctx);
  for (int n = 0; n <= 16; ++n)
    CHECK(rel_err(binom[n], qtest::brute_poch(a, 0.3, n) / qtest::brute_poch(0.3, 0.3, n)) < 1e-12);

  const double theta = 0.8;
  const Complex beta = 0.45;
  const Complex e = std::polar(1.0, theta);
  const auto gf = gf_expand<double>({beta * e, beta * std::conj(e)}, {e, std::conj(e)}, 16, ctx);
  for (int n = 0; n <= 16; ++n)
    CHECK(rel_err(gf[n], qtest::brute_ultraspherical(n, theta, beta, 0.3)) < 1e-11);
}

TEST_CASE("property: gf_expand is multiplicative") {
  qtest::Gen gen(203);
  for (int trial = 0; trial < 20; ++trial) {
    const QContext<double> ctx(gen.disk(0.05, 0.8));
    const std::array<Complex, 2> n1{gen.disk(0, 1), gen.disk(0, 1)}, n2{gen.disk(0, 1), gen.disk(0, 1)};
    const std::array<Complex, 1> d1{gen.disk(0, 1)}, d2{gen.disk(0, 1)};
    const std::array<Complex, 4> nn{n1[0], n1[1], n2[0], n2[1]};
    const std::array<Complex, 2> dd{d1[0], d2[0]};
    const auto joint = gf_expand<double>(nn, dd, 12, ctx);
    const auto split = ps_mul(gf_expand<double>(n1, d1, 12, ctx), gf_expand<double>(n2, d2, 12, ctx));
    for (int j = 0; j <= 12; ++j) CHECK(qtest::scaled_err(joint[j], split[j]) < 1e-12);
  }
}
