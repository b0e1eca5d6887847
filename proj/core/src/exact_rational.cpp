#include "gammalim/exact_rational.hpp"

#include <string>

#include "gammalim/error.hpp"

namespace gammalim {

namespace {

bool parse_integer(std::string_view text, mpz_class& out) {
  if (text.empty()) return false;
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  if (s.empty() || s == "-") return false;
  const size_t digits_from = s.front() == '-' ? 1 : 0;
  if (s.find_first_not_of("0123456789", digits_from) != std::string::npos) return false;
  return out.set_str(s, 10) == 0;
}

}  // namespace

ExactRational::ExactRational(long numerator, long denominator)
    : ExactRational(mpz_class(numerator), mpz_class(denominator)) {}

ExactRational::ExactRational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

ExactRational::ExactRational(const mpz_class& integer) : value_(integer) {}

ExactRational::ExactRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

ExactRational ExactRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  mpz_class num;
  mpz_class den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(text, num)
                      : parse_integer(text.substr(0, slash), num) &&
                            parse_integer(text.substr(slash + 1), den);
  if (!ok || den == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "cannot parse rational literal '" + std::string(text) + "'");
  }
  return ExactRational(num, den);
}

std::string ExactRational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.sign() == 0) throw Error(ErrorCode::InvalidArgument, "division by zero rational");
  value_ /= rhs.value_;
  return *this;
}

ExactRational pow(const ExactRational& base, long exponent) {
  if (exponent < 0) return pow(ExactRational(1) / base, -exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return ExactRational(num, den);
}

ExactRational abs(const ExactRational& x) { return x.sign() < 0 ? -x : x; }

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace gammalim
