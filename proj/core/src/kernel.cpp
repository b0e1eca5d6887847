#include "gammalim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gammalim/bernoulli.hpp"
#include "gammalim/constants.hpp"
#include "gammalim/cot_derivative.hpp"
#include "gammalim/error.hpp"
#include "gammalim/exact_rational.hpp"

namespace gammalim::kernel {

namespace {

constexpr long kGuardBits = 32;

long to_long(const ExtReal& integral) { return mpfr_get_si(integral.raw(), MPFR_RNDN); }

[[noreturn]] void throw_pole(const EvalPoint& x, unsigned pole_order, std::string_view what) {
  throw Error(ErrorCode::PoleArgument,
              std::string(what) + ": pole of order " + std::to_string(pole_order) + " at " +
                  std::to_string(-x.nearest_pole()));
}

// Number of unit shifts needed to move x to at least `threshold`.
long shift_count(const ExtReal& x, double threshold) {
  const double xd = x.to_double();
  if (xd >= threshold) return 0;
  return static_cast<long>(std::ceil(threshold - xd));
}

// ln Gamma(y) for y above the asymptotic threshold.
ExtReal stirling_log_gamma(const ExtReal& y) {
  const long w = y.precision();
  const ExtReal half_log_two_pi = log(2 * const_pi(w)) / 2;
  ExtReal sum = (y - ExtReal(1, w) / 2) * log(y) - y + half_log_two_pi;
  const ExtReal inv_y2 = 1 / (y * y);
  ExtReal power = 1 / y;
  ExtReal previous(w);
  for (unsigned long j = 1;; ++j) {
    const long denom = static_cast<long>(2 * j * (2 * j - 1));
    ExtReal term = ExtReal(bernoulli(2 * j), w) * power / denom;
    const ExtReal magnitude = abs(term);
    if (j > 1 && magnitude > previous) break;
    sum += term;
    if (magnitude.exponent() < sum.exponent() - w - 2) break;
    previous = magnitude;
    power *= inv_y2;
  }
  return sum;
}

// psi^(i)(y) for y above the asymptotic threshold.
ExtReal asymptotic_polygamma(unsigned order, const ExtReal& y) {
  const long w = y.precision();
  const long i = static_cast<long>(order);
  const ExtReal inv_y = 1 / y;
  const ExtReal inv_y2 = inv_y * inv_y;
  ExtReal sum(w);
  // factor_j = (2j + i - 1)! / (2j)!, with the i = 0 case folded in as 1/(2j).
  ExtReal power(w);
  ExtReal factor(w);
  if (order == 0) {
    sum = log(y) - inv_y / 2;
    power = inv_y2;
  } else {
    const ExtReal fact_i(ExactRational(factorial(order)), w);
    const ExtReal fact_im1(ExactRational(factorial(order - 1)), w);
    power = pow(inv_y, i);
    sum = fact_im1 * power + fact_i * power * inv_y / 2;
    power *= inv_y2;
    // (i+1)! / 2!
    factor = fact_i * (i + 1) / 2;
  }
  ExtReal previous(w);
  ExtReal correction(w);
  for (unsigned long j = 1;; ++j) {
    const long two_j = static_cast<long>(2 * j);
    if (order == 0) {
      factor = ExtReal(1, w) / two_j;
    } else if (j > 1) {
      factor *= (two_j + i - 2) * (two_j + i - 1);
      factor /= (two_j - 1) * two_j;
    }
    ExtReal term = ExtReal(bernoulli(2 * j), w) * factor * power;
    const ExtReal magnitude = abs(term);
    if (j > 1 && magnitude > previous) break;
    correction += term;
    if (magnitude.exponent() < sum.exponent() - w - 2) break;
    previous = magnitude;
    power *= inv_y2;
  }
  if (order == 0) return sum - correction;
  sum += correction;
  return (order % 2 == 1) ? sum : -sum;
}

ExtReal positive_polygamma(unsigned order, const ExtReal& x, const KernelConfig& config) {
  const long w = x.precision();
  const long shifts = shift_count(x, asymptotic_threshold(order, w, config));
  ExtReal tail(w);
  for (long j = 0; j < shifts; ++j) tail += pow(x + j, -static_cast<long>(order) - 1);
  ExtReal value = asymptotic_polygamma(order, x + shifts);
  if (shifts == 0) return value;
  // psi^(i)(x) = psi^(i)(x + N) + (-1)^(i+1) i! sum_{j<N} (x + j)^-(i+1)
  tail *= ExtReal(ExactRational(factorial(order)), w);
  return (order % 2 == 1) ? value + tail : value - tail;
}

ExtReal positive_log_gamma(const ExtReal& x, const KernelConfig& config) {
  const long w = x.precision();
  if (x == 1 || x == 2) return ExtReal(w);
  const long shifts = shift_count(x, asymptotic_threshold(0, w, config));
  ExtReal product(1, w);
  for (long j = 0; j < shifts; ++j) product *= x + j;
  ExtReal value = stirling_log_gamma(x + shifts);
  if (shifts == 0) return value;
  return value - log(product);
}

}  // namespace

std::string_view to_string(EvalPath path) noexcept {
  switch (path) {
    case EvalPath::Direct: return "direct";
    case EvalPath::Reflection: return "reflection";
    case EvalPath::Laurent: return "laurent";
  }
  return "unknown";
}

EvalPoint::EvalPoint(ExtReal x) : x_(std::move(x)), pole_distance_(x_.precision()), nearest_pole_(0) {
  if (x_ > 0) {
    pole_distance_ = x_;
    return;
  }
  const ExtReal nearest = round(x_);
  nearest_pole_ = -to_long(nearest);
  pole_distance_ = abs(x_ - nearest);
}

double asymptotic_threshold(unsigned order, long precision_bits, const KernelConfig& config) {
  double threshold = std::max(config.asymptotic_floor,
                              static_cast<double>(precision_bits) / config.asymptotic_bits_divisor);
  // The smallest asymptotic term relative to the leading one is roughly
  // exp(-2 pi T (1 + a ln a - a)) with a = i / (2 pi T).
  const double needed = (static_cast<double>(precision_bits) + 8.0) * std::log(2.0);
  for (;;) {
    const double span = 2.0 * M_PI * threshold;
    const double a = std::min(1.0, static_cast<double>(order) / span);
    const double decay = span * (1.0 + (a > 0 ? a * std::log(a) : 0.0) - a);
    if (decay >= needed) return threshold;
    threshold *= 1.25;
  }
}

EvalPath path_for(const EvalPoint& x, bool gamma_family) {
  if (gamma_family) return x.x() < ExtReal(1, 2) / 2 ? EvalPath::Reflection : EvalPath::Direct;
  return x.x().sign() < 0 ? EvalPath::Reflection : EvalPath::Direct;
}

ExtReal sin_pi(const ExtReal& x) {
  const long p = x.precision();
  const ExtReal n = round(x);
  const ExtReal r = x - n;  // exact: |r| <= 1/2 and r uses only bits of x
  ExtReal s = sin(const_pi(p + kGuardBits) * r.rounded(p + kGuardBits)).rounded(p);
  ExtReal half(p);
  mpfr_div_2ui(half.raw(), n.raw(), 1, MPFR_RNDN);
  const bool odd = !half.is_integer();
  return odd ? -s : s;
}

ExtReal cot_derivative(unsigned order, const ExtReal& x) {
  const long p = x.precision();
  const ExtReal s = sin(x);
  if (s.is_zero() || s.exponent() < -(p - 8) + std::max(0L, x.exponent())) {
    throw Error(ErrorCode::CotPole, "cot is singular at the given argument");
  }
  return cot_derivative_polynomial(order).evaluate(cos(x) / s);
}

ExtReal cot_derivative_at_pi(unsigned order, const ExtReal& x) {
  const long p = x.precision();
  const ExtReal r = x - round(x);
  if (r.is_zero()) throw Error(ErrorCode::CotPole, "cot(pi x) is singular at integer x");
  const ExtReal c = cot(const_pi(p + kGuardBits) * r.rounded(p + kGuardBits)).rounded(p);
  return cot_derivative_polynomial(order).evaluate(c);
}

ExtReal log_gamma(const ExtReal& x, long precision_bits, const KernelConfig& config) {
  require_precision(precision_bits);
  if (x.sign() <= 0) {
    throw Error(ErrorCode::NonPositiveArgument, "log_gamma requires a positive argument");
  }
  const long w = precision_bits + kGuardBits + std::max(0L, x.exponent());
  return positive_log_gamma(x.rounded(std::max(w, x.precision())), config).rounded(precision_bits);
}

ExtReal gamma(const EvalPoint& x, long precision_bits, const KernelConfig& config) {
  require_precision(precision_bits);
  if (x.is_pole()) throw_pole(x, 1, "gamma");
  const long w = precision_bits + kGuardBits + 2 * std::max(0L, x.x().exponent());
  const ExtReal xw = x.x().rounded(std::max(w, x.x().precision()));
  if (path_for(x, true) == EvalPath::Direct) {
    return exp(positive_log_gamma(xw, config)).rounded(precision_bits);
  }
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const ExtReal reflected = 1 - xw;
  const long wr = precision_bits + kGuardBits + 2 * std::max(0L, reflected.exponent());
  const ExtReal g = exp(positive_log_gamma(reflected.rounded(std::max(wr, xw.precision())), config));
  return (const_pi(w) / (sin_pi(xw) * g)).rounded(precision_bits);
}

ExtReal polygamma(unsigned order, const EvalPoint& x, long precision_bits, const KernelConfig& config) {
  require_precision(precision_bits);
  if (x.is_pole()) throw_pole(x, order + 1, "polygamma");
  const long w = precision_bits + kGuardBits;
  const ExtReal xw = x.x().rounded(std::max(w, x.x().precision()));
  if (xw.sign() > 0) return positive_polygamma(order, xw, config).rounded(precision_bits);
  // (-1)^i psi^(i)(1 - x) - psi^(i)(x) = pi^(i+1) cot^(i)(pi x)
  ExtReal mirrored = positive_polygamma(order, 1 - xw, config);
  if (order % 2 == 1) mirrored = -mirrored;
  const ExtReal cot_term = pow(const_pi(w), static_cast<long>(order) + 1) *
                           cot_derivative_at_pi(order, xw);
  return (mirrored - cot_term).rounded(precision_bits);
}

ExtReal gamma_derivative(unsigned order, const EvalPoint& x, long precision_bits,
                         const KernelConfig& config) {
  require_precision(precision_bits);
  if (x.is_pole()) throw_pole(x, order + 1, "gamma_derivative");
  if (order == 0) return gamma(x, precision_bits, config);
  if (x.pole_distance().to_double() < config.pole_guard) {
    throw Error(ErrorCode::NearPole,
                "gamma_derivative: argument within " + std::to_string(config.pole_guard) +
                    " of the pole at " + std::to_string(-x.nearest_pole()) +
                    "; use the Laurent evaluation");
  }
  const long w = precision_bits + kGuardBits + 4 * static_cast<long>(order);
  const EvalPoint xw(x.x().rounded(std::max(w, x.x().precision())));
  std::vector<ExtReal> psi;
  psi.reserve(order);
  for (unsigned j = 0; j < order; ++j) psi.push_back(polygamma(j, xw, w, config));
  std::vector<ExtReal> derivs{gamma(xw, w, config)};
  for (unsigned m = 0; m < order; ++m) {
    ExtReal next(w);
    for (unsigned j = 0; j <= m; ++j) {
      const ExtReal c(ExactRational(binomial(m, j)), w);
      next += c * derivs[j] * psi[m - j];
    }
    derivs.push_back(std::move(next));
  }
  return derivs.back().rounded(precision_bits);
}

}  // namespace gammalim::kernel
