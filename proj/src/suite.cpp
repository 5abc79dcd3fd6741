#include "qkernel/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace qkernel::verify {

namespace {

using json = nlohmann::json;

int as_int(const Params& p, const std::string& name) {
  return static_cast<int>(p.at(name).real());
}

double as_real(const Params& p, const std::string& name) { return p.at(name).real(); }

using Runner = std::function<VerificationReport(const Params&, const Context&, std::optional<double>)>;

struct Entry {
  CheckInfo info;
  Runner run;
};

ParamSpec num(std::string name) { return {std::move(name), false, std::nullopt}; }
ParamSpec integer(std::string name) { return {std::move(name), true, std::nullopt}; }

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({{"askey-ismail", {integer("n"), integer("k"), num("beta"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_askey_ismail_chebyshev(as_int(p, "n"), as_int(p, "k"),
                                                        p.at("beta"), ctx, tol);
                 }});
    e.push_back({{"gf-4.1", {num("beta"), num("q"), num("theta"), integer("D")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_gf_4_1(p.at("beta"), as_real(p, "theta"), as_int(p, "D"), ctx,
                                        tol);
                 }});
    e.push_back({{"prop-3.1", {num("a"), num("b"), num("c"), num("x"), num("y"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_prop_3_1(p.at("a"), p.at("b"), p.at("c"), p.at("x"), p.at("y"),
                                          ctx, tol);
                 }});
    e.push_back({{"prop-3.2", {integer("n"), num("a"), num("b"), num("x"), num("y"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_prop_3_2(as_int(p, "n"), p.at("a"), p.at("b"), p.at("x"),
                                          p.at("y"), ctx, tol);
                 }});
    e.push_back({{"prop-4.2", {num("beta"), num("gamma"), num("q"), num("theta"), integer("D")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_prop_4_2(p.at("beta"), p.at("gamma"), as_real(p, "theta"),
                                          as_int(p, "D"), ctx, tol);
                 }});
    e.push_back({{"qbinomial", {num("a"), num("z"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_qbinomial_theorem(p.at("a"), p.at("z"), ctx, tol);
                 }});
    e.push_back({{"rogers-6phi5", {num("a"), num("b"), num("c"), num("d"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_rogers_6phi5(p.at("a"), p.at("b"), p.at("c"), p.at("d"), ctx,
                                              tol);
                 }});
    e.push_back({{"rogers-connection",
                  {integer("n"), num("beta"), num("gamma"), num("q"), {"grid", true, 16.0}}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   const auto thetas = connection_grid(as_int(p, "grid"));
                   return verify_rogers_connection(as_int(p, "n"), p.at("beta"), p.at("gamma"),
                                                   thetas, ctx, tol);
                 }});
    e.push_back({{"thm-1.1", {integer("m"), integer("n"), num("beta"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_thm_1_1(as_int(p, "m"), as_int(p, "n"), p.at("beta"), ctx, tol);
                 }});
    e.push_back({{"thm-1.2", {integer("m"), integer("n"), num("beta"), num("gamma"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_thm_1_2(as_int(p, "m"), as_int(p, "n"), p.at("beta"),
                                         p.at("gamma"), ctx, tol);
                 }});
    e.push_back({{"thm-1.3", {integer("m"), integer("n"), num("alpha"), num("beta"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_thm_1_3(as_int(p, "m"), as_int(p, "n"), p.at("alpha"),
                                         p.at("beta"), ctx, tol);
                 }});
    e.push_back({{"thm-1.4", {num("alpha"), num("beta"), num("s"), num("t"), num("q")}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   return verify_thm_1_4(p.at("alpha"), p.at("beta"), p.at("s"), p.at("t"), ctx,
                                         tol);
                 }});
    e.push_back({{"uniform-bound",
                  {integer("n"), num("alpha"), num("beta"), num("q"), {"grid", true, 64.0}}},
                 [](const Params& p, const Context& ctx, std::optional<double> tol) {
                   if (p.at("alpha").imag() != 0 || p.at("beta").imag() != 0) {
                     const double nan = std::numeric_limits<double>::quiet_NaN();
                     return make_report("uniform-bound", p, Complex(nan, nan), Complex(nan, nan),
                                        tol.value_or(default_tolerance(ToleranceKind::Bound)), 0,
                                        "domain: uniform bound requires real alpha and beta");
                   }
                   return verify_uniform_bound(as_int(p, "n"), as_real(p, "alpha"),
                                               as_real(p, "beta"), as_int(p, "grid"), ctx, tol);
                 }});
    return e;
  }();
  return entries;
}

const Entry& entry(const std::string& id) {
  for (const auto& e : registry())
    if (e.info.id == id) return e;
  throw ConfigError("unknown check id '" + id + "'");
}

auto sort_key(const VerificationReport& r) {
  std::vector<std::tuple<std::string, double, double>> key;
  key.reserve(r.params.size());
  for (const auto& [name, v] : r.params) key.emplace_back(name, v.real(), v.imag());
  return key;
}

Complex parse_value(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError(where + ": expected a number or an [re, im] pair");
}

std::optional<double> parse_tol(const json& obj, const std::string& where) {
  if (!obj.contains("tol")) return std::nullopt;
  const auto& t = obj.at("tol");
  if (!t.is_number() || !(t.get<double>() > 0))
    throw ConfigError(where + ": tol must be a positive number");
  return t.get<double>();
}

// Random clouds.

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  /// Uniform in (lo, hi) with |value| >= floor.
  double away_from_zero(double lo, double hi, double floor) {
    for (;;) {
      const double v = uniform(lo, hi);
      if (std::abs(v) >= floor) return v;
    }
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex polar(double rlo, double rhi) {
    return std::polar(uniform(rlo, rhi), uniform(-std::numbers::pi, std::numbers::pi));
  }

 private:
  std::mt19937_64 rng_;
};

void add(SuiteConfig& cfg, std::string id, Params p) {
  cfg.checks.push_back({std::move(id), std::move(p), std::nullopt});
}

}  // namespace

const std::vector<CheckInfo>& registered_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return v;
  }();
  return infos;
}

const CheckInfo& check_info(const std::string& id) { return entry(id).info; }

Params normalize_params(const CheckInfo& info, const Params& params) {
  Params out;
  for (const auto& spec : info.params) {
    const auto it = params.find(spec.name);
    Complex v;
    if (it != params.end()) {
      v = it->second;
    } else if (spec.fallback) {
      v = *spec.fallback;
    } else {
      throw ConfigError(info.id + ": missing parameter '" + spec.name + "'");
    }
    if (spec.integer && (v.imag() != 0 || v.real() != std::round(v.real()) ||
                         std::abs(v.real()) > 1e6))
      throw ConfigError(info.id + ": parameter '" + spec.name + "' must be an integer");
    out[spec.name] = v;
  }
  for (const auto& [name, v] : params)
    if (!out.count(name)) throw ConfigError(info.id + ": unknown parameter '" + name + "'");
  return out;
}

VerificationReport run_check(const CheckRequest& request) {
  const Entry& e = entry(request.check_id);
  const Params params = normalize_params(e.info, request.params);
  try {
    const Context ctx(params.at("q"));
    return e.run(params, ctx, request.tol);
  } catch (const Error& err) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return make_report(request.check_id, params, Complex(nan, nan), Complex(nan, nan),
                       request.tol.value_or(default_tolerance(ToleranceKind::Series)), 0,
                       err.what());
  }
}

bool report_less(const VerificationReport& a, const VerificationReport& b) {
  if (a.check_id != b.check_id) return a.check_id < b.check_id;
  return sort_key(a) < sort_key(b);
}

SuiteResult run_suite(const SuiteConfig& config) {
  std::vector<CheckRequest> requests = config.checks;
  for (auto& r : requests) {
    check_info(r.check_id);
    if (!r.tol) r.tol = config.tol;
  }

  SuiteResult result;
  result.reports.resize(requests.size());
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(requests.size())));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < requests.size(); i = next++)
        result.reports[i] = run_check(requests[i]);
    } catch (...) {
      failures[id] = std::current_exception();
      next = requests.size();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  std::stable_sort(result.reports.begin(), result.reports.end(), report_less);
  result.passed = static_cast<std::size_t>(
      std::count_if(result.reports.begin(), result.reports.end(), [](const auto& r) { return r.pass; }));
  return result;
}

SuiteConfig parse_suite_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  SuiteConfig cfg;
  cfg.tol = parse_tol(doc, "config");
  if (doc.contains("threads")) {
    const auto& t = doc.at("threads");
    if (!t.is_number_unsigned()) throw ConfigError("config: threads must be a nonnegative integer");
    cfg.threads = t.get<unsigned>();
  }
  if (!doc.contains("checks")) return cfg;
  if (!doc.at("checks").is_array()) throw ConfigError("config: checks must be an array");

  std::size_t index = 0;
  for (const auto& item : doc.at("checks")) {
    const std::string where = "checks[" + std::to_string(index++) + "]";
    if (!item.is_object() || !item.contains("check_id") || !item.at("check_id").is_string())
      throw ConfigError(where + ": expected an object with a string check_id");
    const std::string id = item.at("check_id").get<std::string>();
    const CheckInfo& info = check_info(id);
    const auto tol = parse_tol(item, where);

    Params base;
    if (item.contains("params")) {
      if (!item.at("params").is_object()) throw ConfigError(where + ": params must be an object");
      for (const auto& [name, v] : item.at("params").items())
        base[name] = parse_value(v, where + ".params." + name);
    }
    std::vector<Params> cells{base};
    if (item.contains("grid")) {
      if (!item.at("grid").is_object()) throw ConfigError(where + ": grid must be an object");
      for (const auto& [name, values] : item.at("grid").items()) {
        if (!values.is_array() || values.empty())
          throw ConfigError(where + ".grid." + name + ": expected a nonempty array");
        if (base.count(name))
          throw ConfigError(where + ": '" + name + "' appears in both params and grid");
        std::vector<Params> expanded;
        for (const auto& cell : cells)
          for (const auto& v : values) {
            Params p = cell;
            p[name] = parse_value(v, where + ".grid." + name);
            expanded.push_back(std::move(p));
          }
        cells = std::move(expanded);
      }
    }
    for (auto& p : cells) {
      normalize_params(info, p);
      cfg.checks.push_back({id, std::move(p), tol});
    }
  }
  return cfg;
}

SuiteConfig filter_suite(SuiteConfig config, const std::vector<std::string>& ids) {
  const std::set<std::string> keep(ids.begin(), ids.end());
  for (const auto& id : keep) check_info(id);
  std::erase_if(config.checks, [&](const CheckRequest& r) { return !keep.count(r.check_id); });
  return config;
}

std::vector<Params> thm_1_4_draws(int count, std::uint64_t seed) {
  Draw d(seed);
  std::vector<Params> out;
  for (int i = 0; i < count; ++i)
    out.push_back({{"alpha", d.uniform(-0.7, 0.7)},
                   {"beta", d.uniform(-0.7, 0.7)},
                   {"s", d.uniform(-0.6, 0.6)},
                   {"t", d.uniform(-0.6, 0.6)},
                   {"q", d.away_from_zero(-0.6, 0.6, 0.1)}});
  return out;
}

std::vector<Params> rogers_6phi5_draws(int count, std::uint64_t seed) {
  Draw d(seed + 1);
  std::vector<Params> out;
  for (int i = 0; i < count; ++i) {
    const double q = d.away_from_zero(-0.6, 0.6, 0.15);
    const Complex b = d.polar(0.6, 0.95), c = d.polar(0.6, 0.95), dd = d.polar(0.6, 0.95);
    // a chosen so that |aq/bcd| lies in (0.05, 0.85)
    const Complex a = std::polar(d.uniform(0.05, 0.85), d.uniform(-std::numbers::pi, std::numbers::pi)) *
                      b * c * dd / std::abs(q);
    out.push_back({{"a", a}, {"b", b}, {"c", c}, {"d", dd}, {"q", q}});
  }
  return out;
}

std::vector<Params> rogers_6phi5_terminating_draws(int count, std::uint64_t seed) {
  Draw d(seed + 2);
  std::vector<Params> out;
  for (int i = 0; i < count; ++i) {
    const double q = d.uniform(0.2, 0.6);
    const int n = d.integer(1, 6);
    const Complex b = d.polar(0.5, 0.9), c = d.polar(0.5, 0.9);
    const Complex a = d.uniform(0.1, 0.6) * b * c;
    out.push_back({{"a", a}, {"b", b}, {"c", c}, {"d", std::pow(q, -n)}, {"q", q}});
  }
  return out;
}

std::vector<Params> prop_3_1_draws(int count, std::uint64_t seed) {
  Draw d(seed + 3);
  std::vector<Params> out;
  while (static_cast<int>(out.size()) < count) {
    const double q = d.uniform(0.15, 0.6);
    const Complex x = d.polar(0.3, 1.0), y = d.polar(0.3, 1.0);
    const Complex a = d.uniform(-0.6, 0.6), b = d.uniform(-0.6, 0.6);
    const Complex c = d.uniform(-0.8, 0.8) / std::max(std::abs(x), std::abs(y));
    const double worst = std::max({std::abs(a * x / y), std::abs(b * y / x)});
    if (worst > 0.8) continue;
    out.push_back({{"a", a}, {"b", b}, {"c", c}, {"x", x}, {"y", y}, {"q", q}});
  }
  return out;
}

std::vector<Params> uniform_bound_draws(int count, std::uint64_t seed) {
  Draw d(seed + 4);
  std::vector<Params> out;
  for (int i = 0; i < count; ++i)
    out.push_back({{"alpha", d.uniform(-0.95, 0.95)},
                   {"beta", d.uniform(-0.95, 0.95)},
                   {"q", d.away_from_zero(-0.9, 0.9, 0.05)}});
  return out;
}

std::vector<Params> qbinomial_draws(int count, std::uint64_t seed) {
  Draw d(seed + 5);
  std::vector<Params> out;
  for (int i = 0; i < count; ++i)
    out.push_back({{"a", d.polar(0.0, 2.0)}, {"z", d.polar(0.0, 0.9)}, {"q", d.polar(0.1, 0.8)}});
  return out;
}

SuiteConfig default_suite_config() {
  SuiteConfig cfg;
  const Complex x = std::polar(0.8, 0.4);

  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n <= 8; ++n) add(cfg, "thm-1.1", {{"m", m}, {"n", n}, {"beta", 0.6}, {"q", 0.3}});
  for (int n = 0; n <= 6; ++n) add(cfg, "thm-1.1", {{"m", n}, {"n", n}, {"beta", 0.0}, {"q", 0.5}});
  add(cfg, "thm-1.1", {{"m", 0}, {"n", 0}, {"beta", 0.0}, {"q", 0.3}});
  add(cfg, "thm-1.1", {{"m", 1}, {"n", 3}, {"beta", 0.5}, {"q", 0.3}});

  for (int m = 0; m <= 8; ++m)
    for (int n = 0; n <= 8; ++n)
      add(cfg, "thm-1.2", {{"m", m}, {"n", n}, {"beta", 0.25}, {"gamma", 0.5}, {"q", 0.4}});

  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n)
      add(cfg, "thm-1.3", {{"m", m}, {"n", n}, {"alpha", 0.4}, {"beta", -0.3}, {"q", 0.35}});
  add(cfg, "thm-1.3", {{"m", 3}, {"n", 3}, {"alpha", 0.6}, {"beta", 0.6}, {"q", 0.3}});

  add(cfg, "thm-1.4", {{"alpha", 0.5}, {"beta", 0.2}, {"s", 0.3}, {"t", 0.25}, {"q", 0.3}});
  add(cfg, "thm-1.4", {{"alpha", 0.5}, {"beta", 0.2}, {"s", 0.0}, {"t", 0.25}, {"q", 0.3}});
  add(cfg, "thm-1.4", {{"alpha", 0.4}, {"beta", 0.4}, {"s", 0.2}, {"t", 0.2}, {"q", 0.3}});
  for (auto& p : thm_1_4_draws(10)) add(cfg, "thm-1.4", std::move(p));

  for (auto& p : rogers_6phi5_draws(20)) add(cfg, "rogers-6phi5", std::move(p));
  for (auto& p : rogers_6phi5_terminating_draws(5)) add(cfg, "rogers-6phi5", std::move(p));

  add(cfg, "prop-3.1", {{"a", 0.3}, {"b", 0.2}, {"c", 0.4}, {"x", 0.5}, {"y", 0.7}, {"q", 0.35}});
  add(cfg, "prop-3.1", {{"a", 0.3}, {"b", 0.2}, {"c", 0.0}, {"x", 0.5}, {"y", 0.7}, {"q", 0.35}});
  add(cfg, "prop-3.1", {{"a", 0.3}, {"b", 0.2}, {"c", 0.4}, {"x", 0.6}, {"y", 0.6}, {"q", 0.35}});
  for (auto& p : prop_3_1_draws(10)) add(cfg, "prop-3.1", std::move(p));

  for (int n = 0; n <= 10; ++n)
    add(cfg, "prop-3.2",
        {{"n", n}, {"a", 0.3}, {"b", 0.2}, {"x", x}, {"y", std::conj(x)}, {"q", 0.3}});
  add(cfg, "prop-3.2", {{"n", 0}, {"a", 0.0}, {"b", 0.0}, {"x", x}, {"y", std::conj(x)}, {"q", 0.3}});

  for (int n = 0; n <= 12; ++n) {
    add(cfg, "rogers-connection", {{"n", n}, {"beta", 0.4}, {"gamma", 0.7}, {"q", 0.3}});
    add(cfg, "rogers-connection", {{"n", n}, {"beta", 0.4}, {"gamma", 0.4}, {"q", 0.3}});
  }

  for (int n = 0; n <= 6; ++n)
    for (int k = 1; k <= 4; ++k)
      add(cfg, "askey-ismail", {{"n", n}, {"k", k}, {"beta", 0.5}, {"q", 0.3}});
  add(cfg, "askey-ismail", {{"n", 2}, {"k", 2}, {"beta", 0.4}, {"q", 0.25}});
  add(cfg, "askey-ismail", {{"n", 2}, {"k", 2}, {"beta", -0.4}, {"q", 0.25}});

  add(cfg, "gf-4.1", {{"beta", 0.3}, {"q", 0.4}, {"theta", 1.1}, {"D", 16}});
  add(cfg, "gf-4.1", {{"beta", 0.5}, {"q", 0.3}, {"theta", 0.9}, {"D", 16}});
  add(cfg, "gf-4.1", {{"beta", 0.0}, {"q", 0.3}, {"theta", 0.9}, {"D", 16}});

  add(cfg, "prop-4.2", {{"beta", 0.3}, {"gamma", 0.6}, {"q", 0.4}, {"theta", 1.1}, {"D", 16}});
  add(cfg, "prop-4.2", {{"beta", 0.3}, {"gamma", 0.6}, {"q", 0.4}, {"theta", 1.1}, {"D", 12}});
  add(cfg, "prop-4.2", {{"beta", 0.3}, {"gamma", 0.3}, {"q", 0.4}, {"theta", 1.1}, {"D", 16}});

  for (const auto& draw : uniform_bound_draws(20))
    for (int n = 0; n <= 15; ++n) {
      Params p = draw;
      p["n"] = n;
      add(cfg, "uniform-bound", std::move(p));
    }
  add(cfg, "uniform-bound", {{"n", 10}, {"alpha", 0.7}, {"beta", -0.5}, {"q", 0.6}});
  add(cfg, "uniform-bound", {{"n", 15}, {"alpha", 0.2}, {"beta", 0.9}, {"q", -0.4}});

  for (auto& p : qbinomial_draws(10)) add(cfg, "qbinomial", std::move(p));

  for (auto& r : cfg.checks) r.params = normalize_params(check_info(r.check_id), r.params);
  return cfg;
}

}  // namespace qkernel::verify
