#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gammalim/ext_real.hpp"

namespace gammalim {

/// Finite Laurent expansion sum_{j=-p}^{D} a_j w^j about the point z = -m,
/// w = z + m. Coefficients are stored from the most negative power upward.
class LaurentSeries {
 public:
  /// `coeffs[0]` multiplies w^-pole_order. Throws InvalidArgument when the
  /// list is empty or when pole_order > 0 but the leading coefficient is 0.
  LaurentSeries(long pole_index, unsigned pole_order, std::vector<ExtReal> coeffs);

  long pole_index() const noexcept { return pole_index_; }
  unsigned pole_order() const noexcept { return pole_order_; }
  long lowest_power() const noexcept { return -static_cast<long>(pole_order_); }
  long highest_power() const noexcept {
    return lowest_power() + static_cast<long>(coeffs_.size()) - 1;
  }
  long precision() const noexcept;

  /// a_power; throws InvalidArgument outside [lowest_power, highest_power].
  const ExtReal& coefficient(long power) const;
  const ExtReal& leading() const noexcept { return coeffs_.front(); }
  std::span<const ExtReal> coefficients() const noexcept { return coeffs_; }

  /// Termwise d/dw. The pole order grows by one and the top power drops by one.
  LaurentSeries differentiated() const;
  /// Substitution w = s u, i.e. a_j -> a_j s^j (negative j included).
  LaurentSeries scaled_variable(const ExtReal& s) const;
  LaurentSeries truncated(long highest_power) const;
  LaurentSeries rounded(long precision_bits) const;

  ExtReal evaluate(const ExtReal& w) const;
  /// Twice the larger of the two highest retained terms at w.
  ExtReal truncation_estimate(const ExtReal& w) const;

 private:
  long pole_index_;
  unsigned pole_order_;
  std::vector<ExtReal> coeffs_;
};

/// Product of two expansions about the same point, truncated so that every
/// retained coefficient is complete.
LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b);

}  // namespace gammalim
