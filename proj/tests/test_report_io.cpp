#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "qkernel/report_io.hpp"
#include "qkernel/suite.hpp"

using namespace qkernel::verify;

namespace {

VerificationReport sample() {
  auto r = make_report("thm-1.1", {{"m", 3}, {"n", 3}, {"beta", 0.6}, {"q", Complex(0.3, 0.1)}},
                       Complex(1.25, -0.5), Complex(1.25, -0.5 + 1e-12), 1e-9, 512);
  r.runtime_ms = 1.5;
  return r;
}

}  // namespace

TEST_CASE("format names") {
  CHECK(parse_format("json") == Format::Json);
  CHECK(parse_format("CSV") == Format::Csv);
  CHECK(parse_format("text") == Format::Text);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("complex formatting") {
  CHECK(format_complex(Complex(1, 0)) == "1+0i");
  CHECK(format_complex(Complex(1.4285714285714286, 0)) == "1.4285714285714286+0i");
  CHECK(format_complex(Complex(-0.5, -2)) == "-0.5-2i");
  CHECK(format_complex(Complex(0.1, 0.25)) == "0.10000000000000001+0.25i");
}

TEST_CASE("JSON round trip") {
  const auto r = sample();
  const auto back = reports_from_json(report_to_json(r));
  REQUIRE(back.size() == 1);
  CHECK(back.front() == r);

  auto failed = make_report("prop-3.2", {{"n", 1}}, std::numeric_limits<double>::quiet_NaN(), 0.0, 1e-9, 0,
                            "pole: (1;q)_inf vanishes");
  CHECK(std::isnan(failed.rel_err));
  const std::vector<VerificationReport> both{r, failed};
  const std::string text = reports_to_json(both);
  CHECK(text.find("null") != std::string::npos);
  CHECK(reports_from_json(text) == both);

  // a reparsed default-suite report list is equal member by member
  auto cfg = filter_suite(default_suite_config(), {"prop-3.2", "gf-4.1"});
  const auto result = run_suite(cfg);
  CHECK(reports_from_json(reports_to_json(result.reports)) == result.reports);
}

TEST_CASE("JSON schema") {
  const std::string text = report_to_json(sample());
  for (const char* key : {"\"check_id\"", "\"params\"", "\"lhs\"", "\"rhs\"", "\"abs_err\"", "\"rel_err\"", "\"tol\"",
                          "\"nodes_used\"", "\"pass\"", "\"runtime_ms\""})
    CHECK(text.find(key) != std::string::npos);
  CHECK(text.find("\"note\"") == std::string::npos);
  CHECK(text.find("\"q\": [") != std::string::npos);
  CHECK(text.find("\"m\": 3") != std::string::npos);
}

TEST_CASE("JSON errors") {
  CHECK_THROWS_AS(reports_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(reports_from_json("{\"check_id\": \"x\"}"), std::invalid_argument);
  CHECK_THROWS_AS(reports_from_json("[1]"), std::invalid_argument);
  CHECK(reports_from_json("[]").empty());
}

TEST_CASE("CSV") {
  auto r = sample();
  r.note = "a, b";
  const std::vector<VerificationReport> rs{r};
  const std::string csv = reports_to_csv(rs);
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "check_id,params,lhs,rhs,abs_err,rel_err,tol,nodes_used,pass,runtime_ms,note");
  CHECK(row.rfind("thm-1.1,", 0) == 0);
  CHECK(row.find("1.25-0.5i") != std::string::npos);
  CHECK(row.find("\"a, b\"") != std::string::npos);
  CHECK(row.find("beta=0.59999999999999998;m=3;n=3;q=") != std::string::npos);
  const bool more = std::getline(in, extra) && !extra.empty();
  CHECK_FALSE(more);
  CHECK(serialize(rs, Format::Csv) == csv);
}

TEST_CASE("text and summary") {
  auto r = sample();
  auto bad = make_report("qbinomial", {}, 1.0, 2.0, 1e-11, 0);
  const std::vector<VerificationReport> ok{r, r};
  const std::vector<VerificationReport> mixed{r, bad, bad};
  CHECK(summary_line(ok) == "PASS 2/2");
  CHECK(summary_line(mixed) == "FAIL 2/3");
  CHECK(summary_line(std::vector<VerificationReport>{}) == "PASS 0/0");
  const std::string text = reports_to_text(mixed);
  CHECK(text.find("thm-1.1") != std::string::npos);
  CHECK(text.find("qbinomial") != std::string::npos);
  CHECK(serialize(mixed, Format::Json) == reports_to_json(mixed));
}
