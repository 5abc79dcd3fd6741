#include "qkernel/cli.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qkernel/qkernel.hpp"
#include "qkernel/report_io.hpp"
#include "qkernel/suite.hpp"
#include "qkernel/verify.hpp"

namespace qkernel::cli {

namespace {

using Complex = std::complex<double>;
using Context = QContext<double>;
using verify::ConfigError;

class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

bool is_key(const std::string& token) {
  return token.size() > 2 && token[0] == '-' && token[1] == '-' &&
         std::isalpha(static_cast<unsigned char>(token[2]));
}

/// --name v1 [v2 ...] pairs after the target; a name may appear once.
std::map<std::string, std::vector<std::string>> split_named(
    const std::vector<std::string>& tokens) {
  std::map<std::string, std::vector<std::string>> named;
  std::vector<std::string>* current = nullptr;
  for (const auto& token : tokens) {
    if (is_key(token)) {
      std::string name = token.substr(2);
      std::string inline_value;
      if (const auto eq = name.find('='); eq != std::string::npos) {
        inline_value = name.substr(eq + 1);
        name = name.substr(0, eq);
      }
      if (named.count(name)) throw UsageError("argument --" + name + " given twice");
      current = &named[name];
      if (!inline_value.empty()) current->push_back(inline_value);
    } else if (current) {
      current->push_back(token);
    } else {
      throw UsageError("unexpected argument '" + token + "'");
    }
  }
  for (const auto& [name, values] : named)
    if (values.empty()) throw UsageError("argument --" + name + " needs a value");
  return named;
}

double parse_real(const std::string& text, const std::string& name) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--" + name + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw UsageError("--" + name + ": '" + text + "' is not a number");
  return v;
}

/// "re" or "re,im".
Complex parse_complex(const std::string& text, const std::string& name) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return parse_real(text, name);
  return {parse_real(text.substr(0, comma), name), parse_real(text.substr(comma + 1), name)};
}

/// Typed access to the named arguments of one command; reports unused names.
class Args {
 public:
  explicit Args(std::map<std::string, std::vector<std::string>> named) : named_(std::move(named)) {}

  bool has(const std::string& name) const { return named_.count(name) != 0; }

  const std::string& single(const std::string& name) {
    const auto& values = raw(name);
    if (values.size() != 1) throw UsageError("--" + name + " takes one value");
    return values.front();
  }

  Complex complex(const std::string& name) { return parse_complex(single(name), name); }

  Complex complex_or(const std::string& name, Complex fallback) {
    return has(name) ? complex(name) : fallback;
  }

  double real(const std::string& name) { return parse_real(single(name), name); }

  int integer(const std::string& name) {
    const double v = real(name);
    if (v != std::round(v) || std::abs(v) > 1e9) throw UsageError("--" + name + " must be an integer");
    return static_cast<int>(v);
  }

  std::vector<Complex> list(const std::string& name) {
    std::vector<Complex> out;
    for (const auto& v : raw(name)) out.push_back(parse_complex(v, name));
    return out;
  }

  std::vector<Complex> list_or_empty(const std::string& name) {
    return has(name) ? list(name) : std::vector<Complex>{};
  }

  void finish() const {
    for (const auto& [name, values] : named_)
      if (!used_.count(name)) throw UsageError("unknown argument --" + name);
  }

 private:
  const std::vector<std::string>& raw(const std::string& name) {
    const auto it = named_.find(name);
    if (it == named_.end()) throw UsageError("missing argument --" + name);
    used_.insert(name);
    return it->second;
  }

  std::map<std::string, std::vector<std::string>> named_;
  std::set<std::string> used_;
};

Method parse_method(Args& a) {
  if (!a.has("method")) return Method::Explicit;
  std::string m = a.single("method");
  for (auto& c : m) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (m == "explicit") return Method::Explicit;
  if (m == "recurrence") return Method::Recurrence;
  if (m == "genfunc") return Method::GenFunc;
  throw UsageError("--method must be explicit, recurrence or genfunc");
}

/// theta from --theta, or acos(x) from --x.
double angle(Args& a) {
  if (a.has("theta") == a.has("x")) throw UsageError("give exactly one of --theta and --x");
  if (a.has("theta")) return a.real("theta");
  const double x = a.real("x");
  if (!(std::abs(x) <= 1)) throw DomainError("x = cos(theta) must lie in [-1, 1]");
  return std::acos(x);
}

Context context(Args& a) { return Context(a.complex("q")); }

using Evaluator = std::function<Complex(Args&)>;

const std::map<std::string, Evaluator>& evaluators() {
  static const std::map<std::string, Evaluator> table = {
      {"qpoch",
       [](Args& a) {
         const Context ctx = context(a);
         const Complex base = a.complex("a");
         const std::string n = a.single("n");
         if (n == "inf" || n == "infinity") return qpoch(base, PochhammerIndex::infinity(), ctx);
         return qpoch(base, PochhammerIndex(a.integer("n")), ctx);
       }},
      {"phi",
       [](Args& a) {
         const Context ctx = context(a);
         HypergeometricSpec<double> spec{a.list("upper"), a.list_or_empty("lower"), a.complex("z")};
         return phi_series(spec, ctx);
       }},
      {"wseries",
       [](Args& a) {
         const Context ctx = context(a);
         const auto rest = a.list("rest");
         return w_series<double>(a.complex("a1"), rest, a.complex("z"), ctx);
       }},
      {"C",
       [](Args& a) {
         const Context ctx = context(a);
         const int n = a.integer("n");
         const Complex beta = a.complex("beta");
         const Method method = parse_method(a);
         if (a.has("x")) return ultraspherical_c(n, a.real("x"), beta, method, ctx);
         return ultraspherical_c(n, Angle<double>{angle(a)}, beta, method, ctx);
       }},
      {"Cg",
       [](Args& a) {
         const Context ctx = context(a);
         const int n = a.integer("n");
         const Complex alpha = a.complex("alpha"), beta = a.complex("beta");
         const Method method = parse_method(a);
         return gasper_c(n, Angle<double>{angle(a)}, alpha, beta, method, ctx);
       }},
      {"Phi",
       [](Args& a) {
         const Context ctx = context(a);
         return phi_poly(a.integer("n"), a.complex("a"), a.complex("b"), a.complex("x"),
                         a.complex("y"), ctx);
       }},
      {"H",
       [](Args& a) {
         const Context ctx = context(a);
         const int n = a.integer("n");
         return q_hermite(n, std::cos(angle(a)), ctx);
       }},
      {"T",
       [](Args& a) {
         const int n = a.integer("n");
         if (a.has("x")) return Complex(chebyshev_t(n, a.real("x")));
         return Complex(chebyshev_t(n, std::cos(angle(a))));
       }},
      {"h",
       [](Args& a) {
         const Context ctx = context(a);
         return h_norm(a.integer("n"), a.complex("beta"), ctx);
       }},
      {"omega_b",
       [](Args& a) {
         const Context ctx = context(a);
         WeightSpec<double> w{WeightKind::OmegaBeta, 0.0, a.complex("beta")};
         w.validate();
         return w(angle(a), ctx);
       }},
      {"omega_ab",
       [](Args& a) {
         const Context ctx = context(a);
         WeightSpec<double> w{WeightKind::OmegaAlphaBeta, a.complex("alpha"), a.complex("beta")};
         w.validate();
         return w(angle(a), ctx);
       }},
      {"jackson",
       [](Args& a) {
         const Context ctx = context(a);
         const auto coeffs = a.list("coeffs");
         const auto poly = [&](const Complex& z) {
           Complex acc(0);
           for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
           return acc;
         };
         return jackson_q_integral(poly, a.complex("a"), a.complex("b"), ctx);
       }},
  };
  return table;
}

std::string join_keys(const std::map<std::string, Evaluator>& table) {
  std::string out;
  for (const auto& [k, v] : table) out += (out.empty() ? "" : ", ") + k;
  return out;
}

std::string check_ids() {
  std::string out;
  for (const auto& c : verify::registered_checks()) out += (out.empty() ? "" : ", ") + c.id;
  return out;
}

int cmd_eval(const std::string& target, const std::vector<std::string>& rest, std::ostream& out) {
  const auto& table = evaluators();
  const auto it = table.find(target);
  if (it == table.end())
    throw UsageError("unknown eval target '" + target + "' (" + join_keys(table) + ")");
  Args args(split_named(rest));
  Complex value;
  try {
    value = it->second(args);
  } catch (const DomainError& e) {
    args.finish();
    throw UsageError(e.what());
  }
  args.finish();
  out << verify::format_complex(value) << '\n';
  return kExitOk;
}

struct OutputOptions {
  double tol = 0;
  std::string format = "json";
  std::string out_path;
};

void emit(const std::vector<verify::VerificationReport>& reports, const OutputOptions& opts,
          std::ostream& out, std::ostream& err) {
  const std::string text = verify::serialize(reports, verify::parse_format(opts.format));
  if (opts.out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open '" + opts.out_path + "' for writing");
    file << text;
  }
  err << verify::summary_line(reports) << '\n';
}

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--tol", opts.tol, "Tolerance overriding the default profile")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}, CLI::ignore_case));
  cmd->add_option("--out", opts.out_path, "Write reports to this file instead of standard output");
}

/// Lets CLI11 handle the output options while the check parameters stay free-form.
std::vector<std::string> take_output_options(std::vector<std::string>& tokens) {
  static const std::set<std::string> known = {"--tol", "--format", "--out"};
  std::vector<std::string> taken;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string key = tokens[i].substr(0, tokens[i].find('='));
    if (known.count(key)) {
      taken.push_back(tokens[i]);
      if (key == tokens[i] && i + 1 < tokens.size()) taken.push_back(tokens[++i]);
    } else {
      kept.push_back(tokens[i]);
    }
  }
  tokens = std::move(kept);
  return taken;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) throw UsageError("expected a command: eval, check or suite");
  const std::string verb = args.front();
  if (verb != "eval" && verb != "check" && verb != "suite" && verb != "-h" && verb != "--help")
    throw UsageError("unknown command '" + verb + "' (eval, check, suite)");

  CLI::App app{"q-series special functions and identity checks", "qkernel"};
  app.require_subcommand(1);
  auto* eval = app.add_subcommand("eval", "Evaluate a library function");
  auto* check = app.add_subcommand("check", "Run one identity check");
  auto* suite = app.add_subcommand("suite", "Run the verification suite");

  std::string target;
  eval->add_option("target", target, "Function name")->required();
  check->add_option("target", target, "Check id")->required();

  OutputOptions check_opts;
  add_output_options(check, check_opts);

  OutputOptions suite_opts;
  std::string config_path;
  std::vector<std::string> only;
  unsigned threads = 0;
  add_output_options(suite, suite_opts);
  suite->add_option("--config", config_path, "JSON suite config")->check(CLI::ExistingFile);
  suite->add_option("--only", only, "Comma-separated check ids")->delimiter(',');
  suite->add_option("--threads", threads, "Worker threads, 0 for all cores");

  std::vector<std::string> for_cli{verb};
  std::vector<std::string> named;
  if (verb == "eval" || verb == "check") {
    if (args.size() < 2 || args[1] == "-h" || args[1] == "--help") {
      for_cli.insert(for_cli.end(), args.begin() + 1, args.end());
    } else {
      for_cli.push_back(args[1]);
      named.assign(args.begin() + 2, args.end());
      if (verb == "check") {
        const auto taken = take_output_options(named);
        for_cli.insert(for_cli.end(), taken.begin(), taken.end());
      }
    }
  } else {
    for_cli.insert(for_cli.end(), args.begin() + 1, args.end());
  }

  std::vector<std::string> reversed(for_cli.rbegin(), for_cli.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (eval->parsed()) return cmd_eval(target, named, out);

  if (check->parsed()) {
    verify::CheckRequest request;
    request.check_id = target;
    try {
      verify::check_info(target);
    } catch (const ConfigError&) {
      throw UsageError("unknown check id '" + target + "' (" + check_ids() + ")");
    }
    Args a(split_named(named));
    for (const auto& spec : verify::check_info(target).params)
      if (a.has(spec.name)) request.params[spec.name] = a.complex(spec.name);
    a.finish();
    if (check_opts.tol > 0) request.tol = check_opts.tol;
    const auto report = verify::run_check(request);
    emit({report}, check_opts, out, err);
    return report.pass ? kExitOk : kExitFailure;
  }

  verify::SuiteConfig config;
  if (config_path.empty()) {
    config = verify::default_suite_config();
  } else {
    std::ifstream file(config_path, std::ios::binary);
    std::stringstream buffer;
    buffer << file.rdbuf();
    config = verify::parse_suite_config(buffer.str());
  }
  if (!only.empty()) config = verify::filter_suite(std::move(config), only);
  if (suite_opts.tol > 0) {
    config.tol = suite_opts.tol;
    for (auto& r : config.checks) r.tol = suite_opts.tol;
  }
  if (threads) config.threads = threads;
  const auto result = verify::run_suite(config);
  emit(result.reports, suite_opts, out, err);
  return result.pass() ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qkernel::cli
