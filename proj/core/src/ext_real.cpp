#include "gammalim/ext_real.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "gammalim/error.hpp"
#include "gammalim/exact_rational.hpp"

namespace gammalim {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

long min_prec(const ExtReal& a, const ExtReal& b) {
  return std::min(a.precision(), b.precision());
}

// Applies a binary MPFR operation into `lhs` at the smaller precision.
template <typename Op>
void binary_in_place(ExtReal& lhs, const ExtReal& rhs, Op op) {
  const long p = min_prec(lhs, rhs);
  if (p == lhs.precision()) {
    op(lhs.raw(), lhs.raw(), rhs.raw(), kRound);
    return;
  }
  ExtReal out(p);
  op(out.raw(), lhs.raw(), rhs.raw(), kRound);
  lhs = std::move(out);
}

template <typename Op>
ExtReal unary(const ExtReal& x, Op op) {
  ExtReal out(x.precision());
  op(out.raw(), x.raw(), kRound);
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::PoleArgument: return "PoleArgument";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::CotPole: return "CotPole";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::ExactPole: return "ExactPole";
    case ErrorCode::OutOfRadius: return "OutOfRadius";
    case ErrorCode::ScheduleOutOfRadius: return "ScheduleOutOfRadius";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

void require_precision(long bits) {
  if (bits < kMinPrecision) {
    throw Error(ErrorCode::InvalidArgument,
                "precision must be at least " + std::to_string(kMinPrecision) +
                    " bits, got " + std::to_string(bits));
  }
}

int decimal_digits_for(long bits) noexcept {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.302));
}

ExtReal::ExtReal(long precision_bits) {
  mpfr_init2(value_, precision_bits);
  mpfr_set_zero(value_, 1);
}

ExtReal::ExtReal(long value, long precision_bits) {
  mpfr_init2(value_, precision_bits);
  mpfr_set_si(value_, value, kRound);
}

ExtReal::ExtReal(const ExactRational& value, long precision_bits) {
  mpfr_init2(value_, precision_bits);
  mpfr_set_q(value_, value.raw(), kRound);
}

ExtReal ExtReal::from_double(double value, long precision_bits) {
  ExtReal out(precision_bits);
  mpfr_set_d(out.value_, value, kRound);
  return out;
}

ExtReal ExtReal::parse(std::string_view text, long precision_bits) {
  const std::string s(text);
  ExtReal out(precision_bits);
  char* end = nullptr;
  if (!s.empty()) mpfr_strtofr(out.value_, s.c_str(), &end, 10, kRound);
  if (s.empty() || end != s.c_str() + s.size() ||
      s.find_first_not_of("+-.0123456789eE") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse decimal literal '" + s + "'");
  }
  if (!out.is_finite()) {
    throw Error(ErrorCode::InvalidArgument, "non-finite literal '" + s + "'");
  }
  return out;
}

ExtReal ExtReal::power_of_two(long exponent, long precision_bits) {
  ExtReal out(1, precision_bits);
  mpfr_mul_2si(out.value_, out.value_, exponent, kRound);
  return out;
}

ExtReal::ExtReal(const ExtReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRound);
}

ExtReal::ExtReal(ExtReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

ExtReal& ExtReal::operator=(const ExtReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRound);
  }
  return *this;
}

ExtReal& ExtReal::operator=(ExtReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

ExtReal::~ExtReal() { mpfr_clear(value_); }

ExtReal ExtReal::rounded(long precision_bits) const {
  ExtReal out(precision_bits);
  mpfr_set(out.value_, value_, kRound);
  return out;
}

ExtReal& ExtReal::operator+=(const ExtReal& rhs) {
  binary_in_place(*this, rhs, mpfr_add);
  return *this;
}
ExtReal& ExtReal::operator-=(const ExtReal& rhs) {
  binary_in_place(*this, rhs, mpfr_sub);
  return *this;
}
ExtReal& ExtReal::operator*=(const ExtReal& rhs) {
  binary_in_place(*this, rhs, mpfr_mul);
  return *this;
}
ExtReal& ExtReal::operator/=(const ExtReal& rhs) {
  binary_in_place(*this, rhs, mpfr_div);
  return *this;
}
ExtReal& ExtReal::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRound);
  return *this;
}
ExtReal& ExtReal::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRound);
  return *this;
}
ExtReal& ExtReal::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRound);
  return *this;
}
ExtReal& ExtReal::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRound);
  return *this;
}

ExtReal ExtReal::operator-() const { return unary(*this, mpfr_neg); }

std::string ExtReal::to_decimal(int significant_digits) const {
  if (is_nan()) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  significant_digits = std::max(significant_digits, 1);
  if (is_zero()) {
    return significant_digits == 1 ? "0" : "0." + std::string(significant_digits - 1, '0');
  }
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw_digits(
      mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(significant_digits), value_, kRound),
      mpfr_free_str);
  std::string digits(raw_digits.get());
  std::string sign_str;
  if (digits.front() == '-') {
    sign_str = "-";
    digits.erase(0, 1);
  }
  // value = 0.d1d2d3... * 10^exp10
  const long n = static_cast<long>(digits.size());
  std::string body;
  if (exp10 > 0 && exp10 <= n) {
    body = digits.substr(0, exp10);
    if (exp10 < n) body += "." + digits.substr(exp10);
  } else if (exp10 <= 0 && exp10 > -6) {
    body = "0." + std::string(static_cast<size_t>(-exp10), '0') + digits;
  } else {
    body = digits.substr(0, 1);
    if (n > 1) body += "." + digits.substr(1);
    body += "e" + std::to_string(exp10 - 1);
  }
  return sign_str + body;
}

std::string ExtReal::to_decimal() const { return to_decimal(decimal_digits_for(precision())); }

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const ExtReal& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

ExtReal operator-(long a, const ExtReal& b) {
  ExtReal out(b.precision());
  mpfr_si_sub(out.raw(), a, b.raw(), kRound);
  return out;
}

ExtReal operator/(long a, const ExtReal& b) {
  ExtReal out(b.precision());
  mpfr_si_div(out.raw(), a, b.raw(), kRound);
  return out;
}

ExtReal abs(const ExtReal& x) { return unary(x, mpfr_abs); }
ExtReal sqrt(const ExtReal& x) { return unary(x, mpfr_sqrt); }
ExtReal exp(const ExtReal& x) { return unary(x, mpfr_exp); }
ExtReal log(const ExtReal& x) { return unary(x, mpfr_log); }
ExtReal sin(const ExtReal& x) { return unary(x, mpfr_sin); }
ExtReal cos(const ExtReal& x) { return unary(x, mpfr_cos); }
ExtReal cot(const ExtReal& x) { return unary(x, mpfr_cot); }

ExtReal pow(const ExtReal& base, long exponent) {
  ExtReal out(base.precision());
  mpfr_pow_si(out.raw(), base.raw(), exponent, kRound);
  return out;
}

ExtReal ldexp(const ExtReal& x, long exponent) {
  ExtReal out(x);
  mpfr_mul_2si(out.raw(), out.raw(), exponent, kRound);
  return out;
}

ExtReal round(const ExtReal& x) {
  ExtReal out(x.precision());
  mpfr_round(out.raw(), x.raw());
  return out;
}

ExtReal max(const ExtReal& a, const ExtReal& b) { return (a < b) ? b : a; }

ExtReal relative_difference(const ExtReal& a, const ExtReal& b) {
  ExtReal scale = max(abs(a), abs(b));
  ExtReal diff = abs(a - b);
  if (scale.is_zero()) return diff;
  return diff / scale;
}

}  // namespace gammalim
