#pragma once

#include <string_view>

#include "gammalim/ext_real.hpp"

namespace gammalim::kernel {

/// Tunable thresholds for the pointwise kernel.
struct KernelConfig {
  /// gamma_derivative refuses arguments closer than this to a pole.
  double pole_guard = 0.125;
  /// Arguments are shifted up to at least max(asymptotic_floor, P / asymptotic_bits_divisor)
  /// before an asymptotic (Stirling / Bernoulli) series is applied.
  double asymptotic_floor = 20.0;
  double asymptotic_bits_divisor = 8.0;
};

/// A real argument together with its distance to the nearest non-positive
/// integer. For x > 0 that distance is x itself.
class EvalPoint {
 public:
  explicit EvalPoint(ExtReal x);

  const ExtReal& x() const noexcept { return x_; }
  const ExtReal& pole_distance() const noexcept { return pole_distance_; }
  /// m such that -m is the non-positive integer nearest to x.
  long nearest_pole() const noexcept { return nearest_pole_; }
  bool is_pole() const noexcept { return pole_distance_.is_zero(); }

 private:
  ExtReal x_;
  ExtReal pole_distance_;
  long nearest_pole_;
};

enum class EvalPath { Direct, Reflection, Laurent };
std::string_view to_string(EvalPath path) noexcept;

/// Gamma(x). Arguments below 1/2 go through Euler reflection.
/// Throws PoleArgument at non-positive integers.
ExtReal gamma(const EvalPoint& x, long precision_bits, const KernelConfig& config = {});

/// ln Gamma(x) for x > 0 (argument shift plus Stirling series).
/// Throws NonPositiveArgument.
ExtReal log_gamma(const ExtReal& x, long precision_bits, const KernelConfig& config = {});

/// d^i/dx^i cot(x), evaluated as P_i(cot x). Throws CotPole when sin(x)
/// vanishes at the working precision.
ExtReal cot_derivative(unsigned order, const ExtReal& x);

/// i-th derivative of cot at pi*x, i.e. P_i(cot(pi x)), with the argument
/// reduced exactly modulo 1 before multiplying by pi.
ExtReal cot_derivative_at_pi(unsigned order, const ExtReal& x);

/// Polygamma psi^(i)(x): asymptotic series for large x, upward recurrence
/// for 0 < x below the threshold, reflection through cot derivatives for
/// x < 0. Throws PoleArgument.
ExtReal polygamma(unsigned order, const EvalPoint& x, long precision_bits,
                  const KernelConfig& config = {});

/// Gamma^(i)(x) through Gamma^(m+1) = sum_j C(m,j) Gamma^(j) psi^(m-j).
/// Throws PoleArgument at a pole and NearPole when the argument is closer to
/// a pole than config.pole_guard (use the Laurent path there).
ExtReal gamma_derivative(unsigned order, const EvalPoint& x, long precision_bits,
                         const KernelConfig& config = {});

/// sin(pi x) with exact argument reduction.
ExtReal sin_pi(const ExtReal& x);

/// The shift target used before applying an asymptotic series for
/// derivative order `order` at `precision_bits`. Grows with the order so the
/// smallest asymptotic term stays below 2^-precision.
double asymptotic_threshold(unsigned order, long precision_bits, const KernelConfig& config);

/// The path `polygamma`/`gamma` take for an argument away from the poles.
EvalPath path_for(const EvalPoint& x, bool gamma_family);

}  // namespace gammalim::kernel
