#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gammalim {

/// Reduced fraction of arbitrary-size integers with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long value) : value_(value) {}  // NOLINT(implicit)
  ExactRational(long numerator, long denominator);
  ExactRational(const mpz_class& numerator, const mpz_class& denominator);
  explicit ExactRational(const mpz_class& integer);
  explicit ExactRational(const mpq_class& value);

  /// Accepts "7", "-5/2", "+3/6" (reduced on construction). Throws InvalidArgument.
  static ExactRational parse(std::string_view text);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  /// "num/den", or just "num" when the denominator is 1.
  std::string to_string() const;

  mpq_srcptr raw() const { return value_.get_mpq_t(); }
  const mpq_class& value() const { return value_; }

  ExactRational& operator+=(const ExactRational& rhs);
  ExactRational& operator-=(const ExactRational& rhs);
  ExactRational& operator*=(const ExactRational& rhs);
  ExactRational& operator/=(const ExactRational& rhs);
  ExactRational operator-() const { return ExactRational(mpq_class(-value_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

inline ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
inline ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
inline ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
inline ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

ExactRational pow(const ExactRational& base, long exponent);
ExactRational abs(const ExactRational& x);

mpz_class factorial(unsigned long n);
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace gammalim
