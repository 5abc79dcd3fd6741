#include "qkernel/report_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qkernel::verify {

namespace {

using json = nlohmann::json;

json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json complex_json(const Complex& z) { return json::array({real_json(z.real()), real_json(z.imag())}); }

double real_from(const json& v, const char* field) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw std::invalid_argument(std::string("report field '") + field + "' is not a number");
  return v.get<double>();
}

Complex complex_from(const json& v, const char* field) {
  if (v.is_number() || v.is_null()) return real_from(v, field);
  if (!v.is_array() || v.size() != 2)
    throw std::invalid_argument(std::string("report field '") + field + "' is not an [re, im] pair");
  return {real_from(v[0], field), real_from(v[1], field)};
}

const json& field(const json& obj, const char* name) {
  if (!obj.contains(name)) throw std::invalid_argument(std::string("report lacks field '") + name + "'");
  return obj.at(name);
}

json to_json(const VerificationReport& r) {
  json params = json::object();
  for (const auto& [name, v] : r.params)
    params[name] = v.imag() == 0 ? real_json(v.real()) : complex_json(v);
  json j = {{"check_id", r.check_id},
            {"params", params},
            {"lhs", complex_json(r.lhs)},
            {"rhs", complex_json(r.rhs)},
            {"abs_err", real_json(r.abs_err)},
            {"rel_err", real_json(r.rel_err)},
            {"tol", real_json(r.tol)},
            {"nodes_used", r.nodes_used},
            {"pass", r.pass},
            {"runtime_ms", real_json(r.runtime_ms)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

VerificationReport from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("report must be a JSON object");
  VerificationReport r;
  const auto& id = field(j, "check_id");
  if (!id.is_string()) throw std::invalid_argument("check_id must be a string");
  r.check_id = id.get<std::string>();
  const auto& params = field(j, "params");
  if (!params.is_object()) throw std::invalid_argument("params must be an object");
  for (const auto& [name, v] : params.items()) r.params[name] = complex_from(v, "params");
  r.lhs = complex_from(field(j, "lhs"), "lhs");
  r.rhs = complex_from(field(j, "rhs"), "rhs");
  r.abs_err = real_from(field(j, "abs_err"), "abs_err");
  r.rel_err = real_from(field(j, "rel_err"), "rel_err");
  r.tol = real_from(field(j, "tol"), "tol");
  const auto& nodes = field(j, "nodes_used");
  if (!nodes.is_number_integer()) throw std::invalid_argument("nodes_used must be an integer");
  r.nodes_used = nodes.get<std::int64_t>();
  const auto& pass = field(j, "pass");
  if (!pass.is_boolean()) throw std::invalid_argument("pass must be a boolean");
  r.pass = pass.get<bool>();
  r.runtime_ms = real_from(field(j, "runtime_ms"), "runtime_ms");
  if (j.contains("note")) {
    if (!j.at("note").is_string()) throw std::invalid_argument("note must be a string");
    r.note = j.at("note").get<std::string>();
  }
  return r;
}

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string params_inline(const Params& params) {
  std::string out;
  for (const auto& [name, v] : params) {
    if (!out.empty()) out += ';';
    out += name + "=" + (v.imag() == 0 ? g17(v.real()) : format_complex(v));
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "json") return Format::Json;
  if (lower == "csv") return Format::Csv;
  if (lower == "text") return Format::Text;
  throw std::invalid_argument("unknown format '" + name + "' (json, csv, text)");
}

std::string format_complex(const Complex& z) {
  const double im = z.imag();
  const bool negative = std::signbit(im) && !std::isnan(im);
  return g17(z.real()) + (negative ? "-" : "+") + g17(negative ? -im : im) + "i";
}

std::string report_to_json(const VerificationReport& report) { return to_json(report).dump(2); }

std::string reports_to_json(std::span<const VerificationReport> reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<VerificationReport> reports_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  std::vector<VerificationReport> out;
  if (doc.is_array()) {
    for (const auto& item : doc) out.push_back(from_json(item));
  } else {
    out.push_back(from_json(doc));
  }
  return out;
}

std::string reports_to_csv(std::span<const VerificationReport> reports) {
  std::ostringstream os;
  os << "check_id,params,lhs,rhs,abs_err,rel_err,tol,nodes_used,pass,runtime_ms,note\n";
  for (const auto& r : reports) {
    os << csv_quote(r.check_id) << ',' << csv_quote(params_inline(r.params)) << ','
       << format_complex(r.lhs) << ',' << format_complex(r.rhs) << ',' << g17(r.abs_err) << ','
       << g17(r.rel_err) << ',' << g17(r.tol) << ',' << r.nodes_used << ','
       << (r.pass ? "true" : "false") << ',' << g17(r.runtime_ms) << ',' << csv_quote(r.note)
       << '\n';
  }
  return os.str();
}

std::string reports_to_text(std::span<const VerificationReport> reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    char err[32];
    std::snprintf(err, sizeof err, "%.3e", r.rel_err);
    os << (r.pass ? "PASS " : "FAIL ") << r.check_id << " [" << params_inline(r.params)
       << "] rel_err=" << err << " tol=" << r.tol;
    if (!r.note.empty()) os << " (" << r.note << ")";
    os << '\n';
  }
  return os.str();
}

std::string serialize(std::span<const VerificationReport> reports, Format format) {
  switch (format) {
    case Format::Json:
      return reports_to_json(reports);
    case Format::Csv:
      return reports_to_csv(reports);
    case Format::Text:
      return reports_to_text(reports);
  }
  return {};
}

std::string summary_line(std::span<const VerificationReport> reports) {
  const auto failed = std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.pass; });
  const auto total = reports.size();
  if (failed == 0) return "PASS " + std::to_string(total) + "/" + std::to_string(total);
  return "FAIL " + std::to_string(failed) + "/" + std::to_string(total);
}

}  // namespace qkernel::verify
