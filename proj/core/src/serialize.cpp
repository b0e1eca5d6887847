#include "gammalim/serialize.hpp"

#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gammalim::io {

namespace {

using nlohmann::json;

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string decimal(const ExtReal& x, long bits) { return x.to_decimal(decimal_digits_for(bits)); }

json spec_json(const limits::RatioLimitSpec& spec) {
  return json{{"family", std::string(limits::to_string(spec.family))},
              {"n", spec.n},
              {"q", spec.q},
              {"i", spec.i},
              {"k", spec.k}};
}

json closed_form_json(const limits::ClosedFormValue& c) {
  return json{{"sign", c.sign},
              {"num", c.magnitude.numerator().get_str()},
              {"den", c.magnitude.denominator().get_str()}};
}

json report_json(const limits::ConvergenceReport& r, std::optional<bool> passed) {
  const long bits = r.precision_bits;
  json samples = json::array();
  std::set<std::string> numerator_paths;
  std::set<std::string> denominator_paths;
  for (const auto& s : r.samples) {
    const std::string np(kernel::to_string(s.numerator_path));
    const std::string dp(kernel::to_string(s.denominator_path));
    numerator_paths.insert(np);
    denominator_paths.insert(dp);
    samples.push_back(json{{"side", std::string(limits::to_string(s.side))},
                           {"h", decimal(s.h, bits)},
                           {"ratio", decimal(s.ratio, bits)},
                           {"numerator_path", np},
                           {"denominator_path", dp}});
  }
  json doc{{"spec", spec_json(r.spec)},
           {"side", std::string(limits::to_string(r.side))},
           {"precision_bits", r.precision_bits},
           {"samples", samples},
           {"closed_form", closed_form_json(r.closed_form)},
           {"status", std::string(limits::to_string(r.status))},
           {"paths", json{{"numerator", numerator_paths}, {"denominator", denominator_paths}}}};
  if (r.status == limits::ReportStatus::Ok || r.status == limits::ReportStatus::PrecisionExhausted) {
    doc["extrapolated"] = decimal(r.extrapolated, bits);
    doc["error_estimate"] = decimal(r.error_estimate, bits);
    doc["relative_error"] = decimal(r.relative_error, bits);
  } else {
    doc["extrapolated"] = nullptr;
    doc["error_estimate"] = nullptr;
    doc["relative_error"] = nullptr;
  }
  doc["observed_order"] = r.observed_order ? json(decimal(*r.observed_order, bits)) : json(nullptr);
  doc["two_sided_discrepancy"] =
      r.two_sided_discrepancy ? json(decimal(*r.two_sided_discrepancy, bits)) : json(nullptr);
  if (!r.message.empty()) doc["message"] = r.message;
  if (passed) doc["passed"] = *passed;
  return doc;
}

std::string csv_header() {
  return "row,family,n,q,i,k,side,h,value,numerator_path,denominator_path,closed_form,"
         "relative_error,observed_order,status\n";
}

void csv_rows(std::ostringstream& out, const limits::ConvergenceReport& r) {
  const long bits = r.precision_bits;
  const auto& spec = r.spec;
  const std::string prefix = std::string(limits::to_string(spec.family)) + "," + std::to_string(spec.n) +
                             "," + std::to_string(spec.q) + "," + std::to_string(spec.i) + "," +
                             std::to_string(spec.k) + ",";
  for (const auto& s : r.samples) {
    out << "sample," << prefix << limits::to_string(s.side) << "," << decimal(s.h, bits) << ","
        << decimal(s.ratio, bits) << "," << kernel::to_string(s.numerator_path) << ","
        << kernel::to_string(s.denominator_path) << ",,,,\n";
  }
  const bool has_value = r.status == limits::ReportStatus::Ok ||
                         r.status == limits::ReportStatus::PrecisionExhausted;
  out << "summary," << prefix << limits::to_string(r.side) << ",,"
      << (has_value ? decimal(r.extrapolated, bits) : "") << ",,," << r.closed_form.to_string() << ","
      << (has_value ? decimal(r.relative_error, bits) : "") << ","
      << (r.observed_order ? decimal(*r.observed_order, bits) : "") << ","
      << limits::to_string(r.status) << "\n";
}

}  // namespace

std::string laurent_to_json(const LaurentSeries& series, std::string_view function,
                            const std::optional<ExactRational>& exact_leading) {
  const long bits = series.precision();
  json coefficients = json::array();
  for (long p = series.lowest_power(); p <= series.highest_power(); ++p) {
    coefficients.push_back(json{{"power", p}, {"value", decimal(series.coefficient(p), bits)}});
  }
  json doc{{"function", std::string(function)},
           {"pole_index", series.pole_index()},
           {"pole_order", series.pole_order()},
           {"precision_bits", bits},
           {"coefficients", coefficients}};
  if (exact_leading) doc["leading_coefficient_exact"] = exact_leading->to_string();
  return dump(doc);
}

std::string laurent_to_csv(const LaurentSeries& series) {
  const long bits = series.precision();
  std::ostringstream out;
  out << "power,value\n";
  for (long p = series.lowest_power(); p <= series.highest_power(); ++p) {
    out << p << "," << decimal(series.coefficient(p), bits) << "\n";
  }
  return out.str();
}

std::string report_to_json(const limits::ConvergenceReport& report, std::optional<bool> passed) {
  return dump(report_json(report, passed));
}

std::string grid_to_json(const limits::GridResult& grid, const limits::GridOptions& options) {
  json reports = json::array();
  for (std::size_t j = 0; j < grid.reports.size(); ++j) {
    reports.push_back(report_json(grid.reports[j], static_cast<bool>(grid.passed[j])));
  }
  json doc{{"precision_bits", options.precision_bits},
           {"tolerance", options.tolerance.to_decimal(6)},
           {"two_sided_tolerance", options.two_sided_tolerance.to_decimal(6)},
           {"total", grid.reports.size()},
           {"passed", grid.pass_count},
           {"failed", grid.fail_count()},
           {"reports", reports}};
  return dump(doc);
}

std::string report_to_csv(const limits::ConvergenceReport& report) {
  std::ostringstream out;
  out << csv_header();
  csv_rows(out, report);
  return out.str();
}

std::string grid_to_csv(const limits::GridResult& grid) {
  std::ostringstream out;
  out << csv_header();
  for (const auto& r : grid.reports) csv_rows(out, r);
  return out.str();
}

std::string canonicalize_json(std::string_view text) { return dump(json::parse(text)); }

}  // namespace gammalim::io
