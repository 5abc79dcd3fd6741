#pragma once

/// Command-line front end shared by the qkernel executable and the tests.
///
///   qkernel eval <function> --name value ...
///   qkernel check <check-id> --name value ... [--tol T] [--format json|csv|text] [--out PATH]
///   qkernel suite [--config PATH] [--only id,id] [--tol T] [--format F] [--out PATH]
///
/// Exit codes: 0 success, 1 numeric failure, 2 usage or config error.

#include <ostream>
#include <string>
#include <vector>

namespace qkernel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qkernel::cli
