#pragma once

// Serialization of orbit records and oscillation reports.  Every format
// carries a versioned schema tag; doubles are written in shortest round-trip
// form and fixed-point values as decimals with enough digits to parse back to
// the same mantissa.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nilosc/numeric.hpp"
#include "nilosc/oscillation.hpp"

namespace nilosc::io {

inline constexpr std::string_view kOrbitSchema = "nilosc.orbit/1";
inline constexpr std::string_view kSequenceSchema = "nilosc.sequence/1";
inline constexpr std::string_view kReportSchema = "nilosc.report/1";
inline constexpr std::string_view kVdcSchema = "nilosc.vdc/1";

enum class Format { jsonl, json, csv };

/// "jsonl", "json" or "csv"; throws ParseError otherwise.
Format parse_format(std::string_view name);
/// Format implied by a file extension, if any.
std::optional<Format> format_from_path(std::string_view path);

std::string format_double(double v);
std::string format_point(const CirclePoint& p);
std::vector<std::string> format_points(const std::vector<CirclePoint>& pts);

nlohmann::json sup_to_json(const SupEstimate& e);
nlohmann::json report_to_json(const OscillationReport& report, const std::optional<DecayFit>& fit);
std::string report_to_csv(const OscillationReport& report, const std::optional<DecayFit>& fit,
                          const std::vector<std::string>& header_comments = {});

}  // namespace nilosc::io
