#pragma once

/// Serialization of verification reports.
///
/// JSON: an array of objects with check_id, params (numbers or [re, im]
/// pairs), lhs and rhs as [re, im], abs_err, rel_err, tol, nodes_used, pass,
/// runtime_ms and, when non-empty, note. NaN is written as null.
/// CSV: one header row, the same columns, complex values as "re+imi".

#include <span>
#include <string>
#include <vector>

#include "qkernel/verify.hpp"

namespace qkernel::verify {

enum class Format { Json, Csv, Text };

/// Throws std::invalid_argument on unknown names.
Format parse_format(const std::string& name);

/// "re+imi" / "re-imi" with 17 significant digits.
std::string format_complex(const Complex& z);

std::string report_to_json(const VerificationReport& report);
std::string reports_to_json(std::span<const VerificationReport> reports);

/// Accepts a single report object or an array of them. Throws std::invalid_argument.
std::vector<VerificationReport> reports_from_json(const std::string& text);

std::string reports_to_csv(std::span<const VerificationReport> reports);
std::string reports_to_text(std::span<const VerificationReport> reports);

std::string serialize(std::span<const VerificationReport> reports, Format format);

/// "PASS k/k" or "FAIL j/k", j the number of failing reports.
std::string summary_line(std::span<const VerificationReport> reports);

}  // namespace qkernel::verify
