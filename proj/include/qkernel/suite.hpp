#pragma once

/// Check registry and suite runner. A check is addressed by its id and a
/// name -> complex parameter map; integer parameters are carried as real values.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkernel/verify.hpp"

namespace qkernel::verify {

/// Bad check id, missing or unknown parameter, malformed config.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct CheckRequest {
  std::string check_id;
  Params params;
  std::optional<double> tol;
};

struct SuiteConfig {
  std::vector<CheckRequest> checks;
  std::optional<double> tol;  ///< applies to every check without its own tol
  unsigned threads = 0;       ///< 0 picks hardware concurrency
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  std::size_t passed = 0;
  bool pass() const { return passed == reports.size(); }
};

struct ParamSpec {
  std::string name;
  bool integer = false;
  std::optional<double> fallback;  ///< value used when the parameter is omitted
};

struct CheckInfo {
  std::string id;
  std::vector<ParamSpec> params;
};

/// All registered checks, ordered by id.
const std::vector<CheckInfo>& registered_checks();

/// Throws ConfigError for unknown ids.
const CheckInfo& check_info(const std::string& id);

/// Fills fallbacks and validates names and integrality. Throws ConfigError.
Params normalize_params(const CheckInfo& info, const Params& params);

/// Runs one check. ConfigError for malformed requests; numeric problems,
/// including an invalid q, end up in a failed report.
VerificationReport run_check(const CheckRequest& request);

/// Runs every request, possibly concurrently, and returns the reports ordered
/// by check id and then by parameter tuple.
SuiteResult run_suite(const SuiteConfig& config);

/// Strict weak order used for the suite output.
bool report_less(const VerificationReport& a, const VerificationReport& b);

/// Parses a JSON suite config:
///   {"tol": 1e-9, "checks": [{"check_id": "thm-1.1", "params": {"beta": 0.6, "q": 0.3},
///                             "grid": {"m": [0, 1, 2], "n": [0, 1, 2]}, "tol": 1e-9}]}
/// Values are numbers or [re, im] pairs; each "grid" entry expands into the
/// cartesian product. Throws ConfigError.
SuiteConfig parse_suite_config(const std::string& text);

/// Keeps the requests whose id is listed. Throws ConfigError on unknown ids.
SuiteConfig filter_suite(SuiteConfig config, const std::vector<std::string>& ids);

// Fixed-seed parameter clouds used by the default suite and the acceptance run.

inline constexpr std::uint64_t kSuiteSeed = 20240917;

std::vector<Params> thm_1_4_draws(int count, std::uint64_t seed = kSuiteSeed);
std::vector<Params> rogers_6phi5_draws(int count, std::uint64_t seed = kSuiteSeed);
std::vector<Params> rogers_6phi5_terminating_draws(int count, std::uint64_t seed = kSuiteSeed);
std::vector<Params> prop_3_1_draws(int count, std::uint64_t seed = kSuiteSeed);
std::vector<Params> uniform_bound_draws(int count, std::uint64_t seed = kSuiteSeed);
std::vector<Params> qbinomial_draws(int count, std::uint64_t seed = kSuiteSeed);

/// The union of the acceptance grids.
SuiteConfig default_suite_config();

}  // namespace qkernel::verify
