#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gammalim/exact_rational.hpp"
#include "gammalim/laurent.hpp"
#include "gammalim/limits.hpp"

namespace gammalim::io {

// Canonical JSON: keys sorted, two-space indent, trailing newline, every real
// number written as a decimal string with ceil(P * 0.302) significant digits.

/// {function, pole_index, pole_order, precision_bits, coefficients: [{power, value}]}
/// plus "leading_coefficient_exact" when given.
std::string laurent_to_json(const LaurentSeries& series, std::string_view function,
                            const std::optional<ExactRational>& exact_leading = std::nullopt);
/// One row per coefficient: power,value
std::string laurent_to_csv(const LaurentSeries& series);

/// {spec, samples, extrapolated, closed_form: {sign, num, den}, relative_error,
///  observed_order, paths, ...}. `passed` is included when given.
std::string report_to_json(const limits::ConvergenceReport& report,
                           std::optional<bool> passed = std::nullopt);
/// {precision_bits, tolerance, total, passed, failed, reports: [...]}
std::string grid_to_json(const limits::GridResult& grid, const limits::GridOptions& options);

/// Header line, one row per sample, then a summary row.
std::string report_to_csv(const limits::ConvergenceReport& report);
std::string grid_to_csv(const limits::GridResult& grid);

/// Re-serializes a JSON document with the canonical layout.
std::string canonicalize_json(std::string_view text);

}  // namespace gammalim::io
