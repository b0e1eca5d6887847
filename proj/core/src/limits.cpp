#include "gammalim/limits.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "gammalim/error.hpp"
#include "gammalim/laurent.hpp"
#include "gammalim/poles.hpp"

namespace gammalim::limits {

namespace {

constexpr long kGuardBits = 64;

struct SideRun {
  std::vector<Sample> samples;
  ExtReal extrapolated;
  ExtReal error_estimate;
  std::optional<ExtReal> observed_order;
};

poles::PoleFunction pole_function(const RatioLimitSpec& spec) {
  return {spec.family == Family::GammaDerivative ? poles::FunctionKind::GammaDerivative
                                                 : poles::FunctionKind::PsiDerivative,
          static_cast<unsigned>(spec.i)};
}

// Richardson tableau for samples at h_j = h0 r^j with an expansion in powers
// of h: T[j][l] = (T[j][l-1] - r^l T[j-1][l-1]) / (1 - r^l). The diagonal
// entry with the smallest change from its predecessor is returned.
std::pair<ExtReal, ExtReal> richardson(const std::vector<ExtReal>& values, const ExtReal& r) {
  const long bits = values.front().precision();
  std::vector<ExtReal> row = values;  // row[j] holds T[j][level]
  ExtReal best = values.back();
  ExtReal best_change = abs(values.back() - values[values.size() - 2]);
  ExtReal previous_diagonal = values.back();
  ExtReal r_power(1, bits);
  for (std::size_t level = 1; level < values.size(); ++level) {
    r_power *= r;
    const ExtReal denom = 1 - r_power;
    for (std::size_t j = values.size() - 1; j >= level; --j) {
      row[j] = (row[j] - r_power * row[j - 1]) / denom;
      if (j == level) break;
    }
    const ExtReal& diagonal = row.back();
    const ExtReal change = abs(diagonal - previous_diagonal);
    if (change < best_change) {
      best_change = change;
      best = diagonal;
    }
    previous_diagonal = diagonal;
  }
  return {best, best_change};
}

std::optional<ExtReal> observed_order(const std::vector<ExtReal>& values, const ExtReal& r) {
  const long bits = values.front().precision();
  const ExtReal noise = ExtReal::power_of_two(-(bits - kGuardBits - 16), bits) * abs(values.back());
  const ExtReal log_inv_r = -log(r);
  for (std::size_t j = values.size() - 1; j >= 2; --j) {
    const ExtReal d1 = abs(values[j - 1] - values[j - 2]);
    const ExtReal d2 = abs(values[j] - values[j - 1]);
    if (d2 > noise && d1 > noise) return log(d1 / d2) / log_inv_r;
  }
  return std::nullopt;
}

SideRun run_side(Side side, const LaurentSeries& numerator, const LaurentSeries& denominator,
                 const Schedule& schedule, long bits) {
  SideRun run;
  const ExtReal r(schedule.ratio, bits);
  ExtReal h(schedule.h0, bits);
  std::vector<ExtReal> values;
  for (unsigned j = 0; j < schedule.steps; ++j) {
    // The series are already expressed in the signed step, so only |h| is fed.
    ExtReal ratio = numerator.evaluate(h) / denominator.evaluate(h);
    values.push_back(ratio);
    run.samples.push_back(Sample{side, h, std::move(ratio), kernel::EvalPath::Laurent,
                                 kernel::EvalPath::Laurent});
    h *= r;
  }
  auto [value, change] = richardson(values, r);
  run.extrapolated = std::move(value);
  run.error_estimate = std::move(change);
  run.observed_order = observed_order(values, r);
  return run;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  return family == Family::GammaDerivative ? "gamma" : "psi";
}

std::string_view to_string(Side side) noexcept {
  switch (side) {
    case Side::Above: return "above";
    case Side::Below: return "below";
    case Side::Both: return "both";
  }
  return "unknown";
}

std::string_view to_string(ReportStatus status) noexcept {
  switch (status) {
    case ReportStatus::Ok: return "ok";
    case ReportStatus::PrecisionExhausted: return "precision_exhausted";
    case ReportStatus::ScheduleOutOfRadius: return "schedule_out_of_radius";
    case ReportStatus::InvalidSpec: return "invalid_spec";
    case ReportStatus::Failed: return "failed";
  }
  return "unknown";
}

void RatioLimitSpec::validate() const {
  if (n < 1 || q < 1) throw Error(ErrorCode::InvalidArgument, "n and q must be positive integers");
  if (i < 0 || k < 0) throw Error(ErrorCode::InvalidArgument, "i and k must be non-negative integers");
}

ClosedFormValue closed_gamma_ratio(const RatioLimitSpec& spec) {
  spec.validate();
  const ExactRational scale = pow(ExactRational(spec.q, spec.n), spec.i + 1);
  const ExactRational factorials(factorial(static_cast<unsigned long>(spec.q * spec.k)),
                                 factorial(static_cast<unsigned long>(spec.n * spec.k)));
  const long parity = ((spec.n - spec.q) * spec.k) % 2;
  return ClosedFormValue{parity == 0 ? 1 : -1, scale * factorials};
}

ClosedFormValue closed_psi_ratio(const RatioLimitSpec& spec) {
  spec.validate();
  return ClosedFormValue{1, pow(ExactRational(spec.q, spec.n), spec.i + 1)};
}

ClosedFormValue closed_form(const RatioLimitSpec& spec) {
  return spec.family == Family::GammaDerivative ? closed_gamma_ratio(spec) : closed_psi_ratio(spec);
}

bool ConvergenceReport::passes(const ExtReal& tolerance, const ExtReal& two_sided_tolerance) const {
  if (status != ReportStatus::Ok) return false;
  if (!(relative_error <= tolerance)) return false;
  return !two_sided_discrepancy || *two_sided_discrepancy <= two_sided_tolerance;
}

ConvergenceReport numeric_ratio_limit(const RatioLimitSpec& spec, const Schedule& schedule,
                                      long precision_bits) {
  spec.validate();
  require_precision(precision_bits);
  if (schedule.steps < 4) throw Error(ErrorCode::InvalidArgument, "schedule needs at least 4 steps");
  if (!(schedule.ratio > ExactRational(0) && schedule.ratio < ExactRational(1))) {
    throw Error(ErrorCode::InvalidArgument, "schedule ratio must lie in (0, 1)");
  }
  if (!(schedule.h0 > ExactRational(0))) {
    throw Error(ErrorCode::InvalidArgument, "schedule h0 must be positive");
  }
  const long widest = std::max(spec.n, spec.q);
  if (schedule.h0 * ExactRational(16 * widest) > ExactRational(1)) {
    throw Error(ErrorCode::ScheduleOutOfRadius,
                "h0 = " + schedule.h0.to_string() + " exceeds 1/(16*" + std::to_string(widest) + ")");
  }

  const long bits = precision_bits + kGuardBits;
  const poles::PoleFunction f = pole_function(spec);
  const ExtReal h0(schedule.h0, bits);
  // F^(i)(s z) near z = -k has w = s (z + k) = s * (+/- h) about the pole -s k.
  const LaurentSeries numerator_base =
      poles::adaptive_laurent(f, spec.n * spec.k, h0 * spec.n, bits, bits);
  const LaurentSeries denominator_base =
      poles::adaptive_laurent(f, spec.q * spec.k, h0 * spec.q, bits, bits);

  ConvergenceReport report;
  report.spec = spec;
  report.side = schedule.side;
  report.precision_bits = precision_bits;
  report.closed_form = closed_form(spec);

  std::vector<SideRun> runs;
  for (Side side : {Side::Above, Side::Below}) {
    if (schedule.side != Side::Both && schedule.side != side) continue;
    const long sign = side == Side::Above ? 1 : -1;
    const LaurentSeries numerator = numerator_base.scaled_variable(ExtReal(sign * spec.n, bits));
    const LaurentSeries denominator = denominator_base.scaled_variable(ExtReal(sign * spec.q, bits));
    runs.push_back(run_side(side, numerator, denominator, schedule, bits));
  }

  const ExtReal closed = report.closed_form.to_ext(bits);
  ExtReal extrapolated(bits);
  ExtReal worst_error(bits);
  ExtReal worst_estimate(bits);
  for (auto& run : runs) {
    extrapolated += run.extrapolated;
    worst_error = max(worst_error, abs(run.extrapolated / closed - 1));
    worst_estimate = max(worst_estimate, run.error_estimate);
    report.samples.insert(report.samples.end(), run.samples.begin(), run.samples.end());
  }
  extrapolated /= static_cast<long>(runs.size());
  if (runs.size() == 2) {
    report.two_sided_discrepancy =
        relative_difference(runs[0].extrapolated, runs[1].extrapolated).rounded(precision_bits);
  }
  report.observed_order = runs.front().observed_order;
  if (report.observed_order) report.observed_order = report.observed_order->rounded(precision_bits);
  for (auto& s : report.samples) {
    s.h = s.h.rounded(precision_bits);
    s.ratio = s.ratio.rounded(precision_bits);
  }
  report.extrapolated = extrapolated.rounded(precision_bits);
  report.error_estimate = worst_estimate.rounded(precision_bits);
  report.relative_error = worst_error.rounded(precision_bits);

  // Richardson could not resolve even a quarter of the working precision.
  const ExtReal floor = ExtReal::power_of_two(-precision_bits / 4, bits) * abs(extrapolated);
  if (worst_estimate > floor) {
    report.status = ReportStatus::PrecisionExhausted;
    report.message = "extrapolation did not settle below 2^-" + std::to_string(precision_bits / 4);
  }
  return report;
}

GridResult verify_grid(const GridRanges& ranges, const GridOptions& options) {
  for (const IndexRange* r : {&ranges.n, &ranges.q, &ranges.i, &ranges.k}) {
    if (r->lo > r->hi) throw Error(ErrorCode::InvalidArgument, "empty or inverted grid range");
  }
  if (ranges.families.empty()) throw Error(ErrorCode::InvalidArgument, "no family requested");
  require_precision(options.precision_bits);

  std::vector<RatioLimitSpec> points;
  for (Family family : ranges.families) {
    for (long n = ranges.n.lo; n <= ranges.n.hi; ++n) {
      for (long q = ranges.q.lo; q <= ranges.q.hi; ++q) {
        for (long i = ranges.i.lo; i <= ranges.i.hi; ++i) {
          for (long k = ranges.k.lo; k <= ranges.k.hi; ++k) {
            points.push_back(RatioLimitSpec{family, n, q, i, k});
          }
        }
      }
    }
  }

  GridResult result;
  result.reports.resize(points.size());
  result.passed.resize(points.size(), false);

  auto evaluate = [&](std::size_t index) {
    const RatioLimitSpec& spec = points[index];
    ConvergenceReport report;
    try {
      report = numeric_ratio_limit(spec, options.schedule, options.precision_bits);
    } catch (const Error& e) {
      report.spec = spec;
      report.side = options.schedule.side;
      report.precision_bits = options.precision_bits;
      report.status = e.code() == ErrorCode::ScheduleOutOfRadius ? ReportStatus::ScheduleOutOfRadius
                      : e.code() == ErrorCode::PrecisionExhausted ? ReportStatus::PrecisionExhausted
                      : e.code() == ErrorCode::InvalidArgument   ? ReportStatus::InvalidSpec
                                                                 : ReportStatus::Failed;
      report.message = e.what();
      try {
        report.closed_form = closed_form(spec);
      } catch (const Error&) {
      }
    }
    result.reports[index] = std::move(report);
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  if (threads == 1) {
    for (std::size_t j = 0; j < points.size(); ++j) evaluate(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < points.size(); j = next++) evaluate(j);
      });
    }
  }

  for (std::size_t j = 0; j < points.size(); ++j) {
    result.passed[j] = result.reports[j].passes(options.tolerance, options.two_sided_tolerance);
    if (result.passed[j]) ++result.pass_count;
  }
  return result;
}

}  // namespace gammalim::limits
