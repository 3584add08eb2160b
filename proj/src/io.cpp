#include "nilosc/io.hpp"

#include <charconv>
#include <sstream>

namespace nilosc::io {

Format parse_format(std::string_view name) {
  if (name == "jsonl") return Format::jsonl;
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw ParseError("unknown format '" + std::string(name) + "' (expected jsonl, json or csv)");
}

std::optional<Format> format_from_path(std::string_view path) {
  auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  auto ext = path.substr(dot + 1);
  if (ext == "jsonl" || ext == "ndjson") return Format::jsonl;
  if (ext == "json") return Format::json;
  if (ext == "csv") return Format::csv;
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_point(const CirclePoint& p) { return p.value().to_decimal(); }

std::vector<std::string> format_points(const std::vector<CirclePoint>& pts) {
  std::vector<std::string> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(format_point(p));
  return out;
}

nlohmann::json sup_to_json(const SupEstimate& e) {
  return {
      {"N", e.N},
      {"lower", e.lower},
      {"upper", e.upper},
      {"slack", e.slack},
      {"trivial_bound", e.trivial_bound},
      {"fft_size", e.fft_size},
      {"points_per_coeff", e.points_per_coeff},
      {"half_steps", e.half_steps},
      {"argmax_coeffs", format_points(e.argmax.coeffs())},
  };
}

nlohmann::json report_to_json(const OscillationReport& report, const std::optional<DecayFit>& fit) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.points) points.push_back(sup_to_json(p));
  nlohmann::json j = {
      {"schema", kReportSchema},
      {"sequence", report.sequence},
      {"degree", report.points.empty() ? 0 : report.points.front().degree},
      {"points", std::move(points)},
  };
  j["fit"] = fit ? nlohmann::json{{"exponent", fit->exponent}, {"residual", fit->residual}} : nlohmann::json(nullptr);
  return j;
}

std::string report_to_csv(const OscillationReport& report, const std::optional<DecayFit>& fit,
                          const std::vector<std::string>& header_comments) {
  std::ostringstream os;
  os << "# schema=" << kReportSchema << "\n";
  os << "# sequence=" << report.sequence << "\n";
  for (const auto& c : header_comments) os << "# " << c << "\n";
  if (fit) os << "# fit exponent=" << format_double(fit->exponent) << " residual=" << format_double(fit->residual) << "\n";
  os << "N,lower,upper,slack,trivial_bound,argmax_coeffs\n";
  for (const auto& p : report.points) {
    os << p.N << ',' << format_double(p.lower) << ',' << format_double(p.upper) << ',' << format_double(p.slack) << ','
       << format_double(p.trivial_bound) << ',';
    auto coeffs = format_points(p.argmax.coeffs());
    for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? ";" : "") << coeffs[i];
    os << "\n";
  }
  return os.str();
}

}  // namespace nilosc::io
