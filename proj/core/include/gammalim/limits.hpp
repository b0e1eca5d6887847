#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gammalim/exact_rational.hpp"
#include "gammalim/ext_real.hpp"
#include "gammalim/kernel.hpp"

namespace gammalim::limits {

enum class Family { GammaDerivative, PsiDerivative };
std::string_view to_string(Family family) noexcept;

/// One instance of lim_{z -> -k} F^(i)(n z) / F^(i)(q z), F = Gamma or psi.
struct RatioLimitSpec {
  Family family = Family::GammaDerivative;
  long n = 1;
  long q = 1;
  long i = 0;
  long k = 0;

  /// Throws InvalidArgument unless n, q >= 1 and i, k >= 0.
  void validate() const;
};

/// sign * magnitude, magnitude > 0.
struct ClosedFormValue {
  int sign = 1;
  ExactRational magnitude{1};

  ExactRational value() const { return sign < 0 ? -magnitude : magnitude; }
  ExtReal to_ext(long precision_bits) const { return ExtReal(value(), precision_bits); }
  std::string to_string() const { return value().to_string(); }
};

/// (-1)^((n-q)k) (q/n)^(i+1) (qk)! / (nk)!
ClosedFormValue closed_gamma_ratio(const RatioLimitSpec& spec);
/// (q/n)^(i+1), independent of k.
ClosedFormValue closed_psi_ratio(const RatioLimitSpec& spec);
ClosedFormValue closed_form(const RatioLimitSpec& spec);

enum class Side { Above, Below, Both };
std::string_view to_string(Side side) noexcept;

/// Sample points z_j = -k +/- h0 r^j, j = 0 .. steps-1.
struct Schedule {
  ExactRational h0{1, 64};
  ExactRational ratio{1, 2};
  unsigned steps = 24;
  Side side = Side::Both;
};

struct Sample {
  Side side = Side::Above;
  ExtReal h;
  ExtReal ratio;
  kernel::EvalPath numerator_path = kernel::EvalPath::Laurent;
  kernel::EvalPath denominator_path = kernel::EvalPath::Laurent;
};

enum class ReportStatus { Ok, PrecisionExhausted, ScheduleOutOfRadius, InvalidSpec, Failed };
std::string_view to_string(ReportStatus status) noexcept;

struct ConvergenceReport {
  RatioLimitSpec spec;
  Side side = Side::Both;
  long precision_bits = kDefaultPrecision;
  /// Above-side samples first (h decreasing), then below-side samples.
  std::vector<Sample> samples;
  ExtReal extrapolated;
  /// Magnitude of the last accepted Richardson correction.
  ExtReal error_estimate;
  ClosedFormValue closed_form;
  /// |extrapolated / closed_form - 1|, the worse side when both are run.
  ExtReal relative_error;
  /// Empirical convergence order of the raw samples; absent when the samples
  /// do not change above the noise floor (e.g. n == q).
  std::optional<ExtReal> observed_order;
  /// Relative difference between the above and below extrapolations.
  std::optional<ExtReal> two_sided_discrepancy;
  ReportStatus status = ReportStatus::Ok;
  std::string message;

  bool passes(const ExtReal& tolerance, const ExtReal& two_sided_tolerance) const;
};

/// Numerical estimate of the limit from sampled ratios plus Richardson
/// extrapolation in h. Numerator and denominator are summed from their
/// Laurent series about -nk and -qk, rescaled to the common variable h.
/// Throws InvalidArgument for a bad spec or schedule and ScheduleOutOfRadius
/// when h0 > 1 / (16 max(n, q)). Loss of convergence is reported through
/// `status`, not thrown.
ConvergenceReport numeric_ratio_limit(const RatioLimitSpec& spec, const Schedule& schedule,
                                      long precision_bits);

struct IndexRange {
  long lo = 0;
  long hi = 0;
};

struct GridRanges {
  IndexRange n{1, 1};
  IndexRange q{1, 1};
  IndexRange i{0, 0};
  IndexRange k{0, 0};
  std::vector<Family> families{Family::GammaDerivative};
};

struct GridOptions {
  Schedule schedule;
  long precision_bits = kDefaultPrecision;
  ExtReal tolerance = ExtReal::parse("1e-15", 128);
  ExtReal two_sided_tolerance = ExtReal::parse("1e-12", 128);
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct GridResult {
  std::vector<ConvergenceReport> reports;
  std::vector<bool> passed;
  std::size_t pass_count = 0;
  std::size_t fail_count() const { return reports.size() - pass_count; }
};

/// Every (family, n, q, i, k) grid point, in that nesting order. Per-point
/// failures land in the report status. Throws InvalidArgument when a range
/// is empty or inverted or no family is requested.
GridResult verify_grid(const GridRanges& ranges, const GridOptions& options);

}  // namespace gammalim::limits
