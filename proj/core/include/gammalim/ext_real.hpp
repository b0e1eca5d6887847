#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <mpfr.h>

namespace gammalim {

inline constexpr long kDefaultPrecision = 256;
inline constexpr long kMinPrecision = 64;

class ExactRational;

/// Throws InvalidArgument when `bits` is below kMinPrecision.
void require_precision(long bits);

/// Number of significant decimal digits printed for a value carried at `bits`
/// of precision: ceil(bits * 0.302).
int decimal_digits_for(long bits) noexcept;

/// Extended-precision binary floating point value (MPFR, round-to-nearest).
///
/// Every value carries its own precision. Binary arithmetic between values of
/// different precisions produces a result at the smaller of the two, correctly
/// rounded. Arithmetic with machine integers keeps the precision of the
/// ExtReal operand.
class ExtReal {
 public:
  explicit ExtReal(long precision_bits = kDefaultPrecision);
  ExtReal(long value, long precision_bits);
  ExtReal(const ExactRational& value, long precision_bits);

  static ExtReal from_double(double value, long precision_bits);
  /// Parses a decimal literal ("1.25", "-3e-4"). Throws InvalidArgument.
  static ExtReal parse(std::string_view text, long precision_bits);
  /// 2^exponent, exact.
  static ExtReal power_of_two(long exponent, long precision_bits);

  ExtReal(const ExtReal& other);
  ExtReal(ExtReal&& other) noexcept;
  ExtReal& operator=(const ExtReal& other);
  ExtReal& operator=(ExtReal&& other) noexcept;
  ~ExtReal();

  long precision() const noexcept { return mpfr_get_prec(value_); }
  /// Copy correctly rounded to a new precision.
  ExtReal rounded(long precision_bits) const;

  mpfr_srcptr raw() const noexcept { return value_; }
  mpfr_ptr raw() noexcept { return value_; }

  ExtReal& operator+=(const ExtReal& rhs);
  ExtReal& operator-=(const ExtReal& rhs);
  ExtReal& operator*=(const ExtReal& rhs);
  ExtReal& operator/=(const ExtReal& rhs);
  ExtReal& operator+=(long rhs);
  ExtReal& operator-=(long rhs);
  ExtReal& operator*=(long rhs);
  ExtReal& operator/=(long rhs);

  ExtReal operator-() const;

  int sign() const noexcept { return mpfr_sgn(value_); }
  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }

  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent() const noexcept { return mpfr_get_exp(value_); }

  /// Decimal rendering with `significant_digits` digits. Positional notation
  /// for moderate magnitudes, scientific ("d.ddde-12") otherwise.
  std::string to_decimal(int significant_digits) const;
  /// to_decimal with decimal_digits_for(precision()) digits.
  std::string to_decimal() const;

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const ExtReal& a, long b);
  friend bool operator==(const ExtReal& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }

 private:
  mpfr_t value_;
};

inline ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }
inline ExtReal operator-(ExtReal a, const ExtReal& b) { return a -= b; }
inline ExtReal operator*(ExtReal a, const ExtReal& b) { return a *= b; }
inline ExtReal operator/(ExtReal a, const ExtReal& b) { return a /= b; }
inline ExtReal operator+(ExtReal a, long b) { return a += b; }
inline ExtReal operator-(ExtReal a, long b) { return a -= b; }
inline ExtReal operator*(ExtReal a, long b) { return a *= b; }
inline ExtReal operator/(ExtReal a, long b) { return a /= b; }
inline ExtReal operator+(long a, ExtReal b) { return b += a; }
inline ExtReal operator*(long a, ExtReal b) { return b *= a; }
ExtReal operator-(long a, const ExtReal& b);
ExtReal operator/(long a, const ExtReal& b);

ExtReal abs(const ExtReal& x);
ExtReal sqrt(const ExtReal& x);
ExtReal exp(const ExtReal& x);
ExtReal log(const ExtReal& x);
ExtReal sin(const ExtReal& x);
ExtReal cos(const ExtReal& x);
ExtReal cot(const ExtReal& x);
ExtReal pow(const ExtReal& base, long exponent);
ExtReal ldexp(const ExtReal& x, long exponent);
/// Nearest integer, ties away from zero.
ExtReal round(const ExtReal& x);
ExtReal max(const ExtReal& a, const ExtReal& b);

/// |a - b| / max(|a|, |b|); zero when both are zero.
ExtReal relative_difference(const ExtReal& a, const ExtReal& b);

}  // namespace gammalim
