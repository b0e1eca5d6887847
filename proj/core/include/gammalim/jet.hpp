#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gammalim/ext_real.hpp"

namespace gammalim {

/// Truncated Taylor series c0 + c1 w + ... + cD w^D.
///
/// Binary operations truncate at the smaller of the two degrees, so a jet
/// never claims more coefficients than both operands can vouch for.
class Jet {
 public:
  /// Throws InvalidArgument on an empty coefficient list.
  explicit Jet(std::vector<ExtReal> coeffs);

  static Jet zero(std::size_t degree, long precision_bits);
  static Jet unit(std::size_t degree, long precision_bits);
  static Jet constant(const ExtReal& value, std::size_t degree);
  /// The identity germ w.
  static Jet variable(std::size_t degree, long precision_bits);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  long precision() const noexcept;

  const ExtReal& operator[](std::size_t j) const { return coeffs_[j]; }
  std::span<const ExtReal> coefficients() const noexcept { return coeffs_; }

  Jet truncated(std::size_t degree) const;
  ExtReal evaluate(const ExtReal& w) const;

 private:
  std::vector<ExtReal> coeffs_;
};

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
/// Cauchy product truncated to min(deg a, deg b).
Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, const ExtReal& s);
/// Multiplicative inverse; throws ZeroConstantTerm when a[0] == 0.
Jet jet_reciprocal(const Jet& a);
/// Term-wise d/dw; throws DegreeZero for a constant-only jet.
Jet jet_differentiate(const Jet& a);
/// Substitution w = s*u: coefficient j is scaled by s^j.
Jet jet_compose_affine(const Jet& a, const ExtReal& s);

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }

}  // namespace gammalim
