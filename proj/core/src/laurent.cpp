#include "gammalim/laurent.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gammalim/error.hpp"

namespace gammalim {

LaurentSeries::LaurentSeries(long pole_index, unsigned pole_order, std::vector<ExtReal> coeffs)
    : pole_index_(pole_index), pole_order_(pole_order), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "empty Laurent series");
  if (pole_order_ > 0 && coeffs_.front().is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "Laurent series with a pole needs a nonzero leading coefficient");
  }
}

long LaurentSeries::precision() const noexcept {
  long p = std::numeric_limits<long>::max();
  for (const auto& c : coeffs_) p = std::min(p, c.precision());
  return p;
}

const ExtReal& LaurentSeries::coefficient(long power) const {
  if (power < lowest_power() || power > highest_power()) {
    throw Error(ErrorCode::InvalidArgument,
                "power " + std::to_string(power) + " outside the retained range");
  }
  return coeffs_[static_cast<std::size_t>(power - lowest_power())];
}

LaurentSeries LaurentSeries::differentiated() const {
  if (coeffs_.size() < 2 && pole_order_ == 0) {
    throw Error(ErrorCode::DegreeZero, "cannot differentiate a constant-only series");
  }
  const long low = lowest_power();
  if (pole_order_ == 0) {
    std::vector<ExtReal> out;
    for (std::size_t j = 1; j < coeffs_.size(); ++j) out.push_back(coeffs_[j] * static_cast<long>(j));
    return LaurentSeries(pole_index_, 0, std::move(out));
  }
  // a_j w^j -> j a_j w^(j-1): powers low..high map onto low-1..high-1.
  std::vector<ExtReal> out;
  out.reserve(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    out.push_back(coeffs_[k] * (low + static_cast<long>(k)));
  }
  return LaurentSeries(pole_index_, pole_order_ + 1, std::move(out));
}

LaurentSeries LaurentSeries::scaled_variable(const ExtReal& s) const {
  std::vector<ExtReal> out;
  out.reserve(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const long power = lowest_power() + static_cast<long>(k);
    out.push_back(coeffs_[k] * pow(s, power));
  }
  return LaurentSeries(pole_index_, pole_order_, std::move(out));
}

LaurentSeries LaurentSeries::truncated(long highest) const {
  if (highest >= highest_power()) return *this;
  if (highest < lowest_power()) throw Error(ErrorCode::InvalidArgument, "truncation below the pole");
  return LaurentSeries(pole_index_, pole_order_,
                       std::vector<ExtReal>(coeffs_.begin(),
                                            coeffs_.begin() + (highest - lowest_power() + 1)));
}

LaurentSeries LaurentSeries::rounded(long precision_bits) const {
  std::vector<ExtReal> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.rounded(precision_bits));
  return LaurentSeries(pole_index_, pole_order_, std::move(out));
}

ExtReal LaurentSeries::evaluate(const ExtReal& w) const {
  // Horner on the regular-form polynomial, then divide by w^p.
  ExtReal acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
    acc *= w;
    acc += coeffs_[k];
  }
  if (pole_order_ == 0) return acc;
  return acc / pow(w, static_cast<long>(pole_order_));
}

ExtReal LaurentSeries::truncation_estimate(const ExtReal& w) const {
  const long top = highest_power();
  ExtReal last = abs(coeffs_.back() * pow(w, top));
  if (coeffs_.size() > 1) last = max(last, abs(coeffs_[coeffs_.size() - 2] * pow(w, top - 1)));
  return 2 * last;
}

LaurentSeries laurent_mul(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.pole_index() != b.pole_index()) {
    throw Error(ErrorCode::InvalidArgument, "Laurent product needs expansions about the same pole");
  }
  const long low = a.lowest_power() + b.lowest_power();
  // The product coefficient at power t is complete only while both factors
  // are: t <= min(a.high + b.low, a.low + b.high).
  const long high = std::min(a.highest_power() + b.lowest_power(), a.lowest_power() + b.highest_power());
  const long prec = std::min(a.precision(), b.precision());
  std::vector<ExtReal> out(static_cast<std::size_t>(high - low + 1), ExtReal(prec));
  const auto ac = a.coefficients();
  const auto bc = b.coefficients();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    for (std::size_t j = 0; j < bc.size(); ++j) {
      const std::size_t t = i + j;
      if (t < out.size()) out[t] += ac[i] * bc[j];
    }
  }
  return LaurentSeries(a.pole_index(), a.pole_order() + b.pole_order(), std::move(out));
}

}  // namespace gammalim
