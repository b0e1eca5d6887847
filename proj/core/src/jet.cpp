#include "gammalim/jet.hpp"

#include <algorithm>
#include <limits>

#include "gammalim/error.hpp"

namespace gammalim {

Jet::Jet(std::vector<ExtReal> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "jet needs at least one coefficient");
}

Jet Jet::zero(std::size_t degree, long precision_bits) {
  return Jet(std::vector<ExtReal>(degree + 1, ExtReal(precision_bits)));
}

Jet Jet::unit(std::size_t degree, long precision_bits) {
  std::vector<ExtReal> c(degree + 1, ExtReal(precision_bits));
  c[0] = ExtReal(1, precision_bits);
  return Jet(std::move(c));
}

Jet Jet::constant(const ExtReal& value, std::size_t degree) {
  std::vector<ExtReal> c(degree + 1, ExtReal(value.precision()));
  c[0] = value;
  return Jet(std::move(c));
}

Jet Jet::variable(std::size_t degree, long precision_bits) {
  std::vector<ExtReal> c(degree + 1, ExtReal(precision_bits));
  if (degree >= 1) c[1] = ExtReal(1, precision_bits);
  return Jet(std::move(c));
}

long Jet::precision() const noexcept {
  long p = std::numeric_limits<long>::max();
  for (const auto& c : coeffs_) p = std::min(p, c.precision());
  return p;
}

Jet Jet::truncated(std::size_t degree) const {
  if (degree >= this->degree()) return *this;
  return Jet(std::vector<ExtReal>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(degree) + 1));
}

ExtReal Jet::evaluate(const ExtReal& w) const {
  ExtReal acc = coeffs_.back();
  for (std::size_t j = coeffs_.size() - 1; j-- > 0;) {
    acc *= w;
    acc += coeffs_[j];
  }
  return acc;
}

Jet jet_add(const Jet& a, const Jet& b) {
  const std::size_t d = std::min(a.degree(), b.degree());
  std::vector<ExtReal> c;
  c.reserve(d + 1);
  for (std::size_t j = 0; j <= d; ++j) c.push_back(a[j] + b[j]);
  return Jet(std::move(c));
}

Jet jet_sub(const Jet& a, const Jet& b) {
  const std::size_t d = std::min(a.degree(), b.degree());
  std::vector<ExtReal> c;
  c.reserve(d + 1);
  for (std::size_t j = 0; j <= d; ++j) c.push_back(a[j] - b[j]);
  return Jet(std::move(c));
}

Jet jet_mul(const Jet& a, const Jet& b) {
  const std::size_t d = std::min(a.degree(), b.degree());
  const long p = std::min(a.precision(), b.precision());
  std::vector<ExtReal> c(d + 1, ExtReal(p));
  for (std::size_t j = 0; j <= d; ++j) {
    for (std::size_t l = 0; l <= j; ++l) c[j] += a[l] * b[j - l];
  }
  return Jet(std::move(c));
}

Jet jet_scale(const Jet& a, const ExtReal& s) {
  std::vector<ExtReal> c;
  c.reserve(a.degree() + 1);
  for (const auto& x : a.coefficients()) c.push_back(x * s);
  return Jet(std::move(c));
}

Jet jet_reciprocal(const Jet& a) {
  if (a[0].is_zero()) {
    throw Error(ErrorCode::ZeroConstantTerm, "jet reciprocal requires a nonzero constant term");
  }
  const std::size_t d = a.degree();
  const long p = a.precision();
  std::vector<ExtReal> b;
  b.reserve(d + 1);
  const ExtReal inv0 = 1 / a[0].rounded(p);
  b.push_back(inv0);
  // a0*bj + sum_{l>=1} al*b(j-l) = 0
  for (std::size_t j = 1; j <= d; ++j) {
    ExtReal acc(p);
    for (std::size_t l = 1; l <= j; ++l) acc += a[l] * b[j - l];
    b.push_back(-(acc * inv0));
  }
  return Jet(std::move(b));
}

Jet jet_differentiate(const Jet& a) {
  if (a.degree() == 0) throw Error(ErrorCode::DegreeZero, "cannot differentiate a degree-0 jet");
  std::vector<ExtReal> c;
  c.reserve(a.degree());
  for (std::size_t j = 0; j < a.degree(); ++j) c.push_back(a[j + 1] * static_cast<long>(j + 1));
  return Jet(std::move(c));
}

Jet jet_compose_affine(const Jet& a, const ExtReal& s) {
  std::vector<ExtReal> c;
  c.reserve(a.degree() + 1);
  ExtReal power(1, s.precision());
  for (std::size_t j = 0; j <= a.degree(); ++j) {
    c.push_back(a[j] * power);
    power *= s;
  }
  return Jet(std::move(c));
}

}  // namespace gammalim
