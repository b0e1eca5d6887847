#pragma once

// Test-only reference routines. They use nothing from the library beyond
// ExtReal/ExactRational arithmetic, so they stay independent of the kernel,
// poles, and constants code they are used to check.

#include <array>
#include <random>

#include "gammalim/exact_rational.hpp"
#include "gammalim/ext_real.hpp"

namespace oracle {

using gammalim::ExactRational;
using gammalim::ExtReal;

// B_2 .. B_30
inline const std::array<ExactRational, 15> kEvenBernoulli{
    ExactRational(1, 6),
    ExactRational(-1, 30),
    ExactRational(1, 42),
    ExactRational(-1, 30),
    ExactRational(5, 66),
    ExactRational(-691, 2730),
    ExactRational(7, 6),
    ExactRational(-3617, 510),
    ExactRational(43867, 798),
    ExactRational(-174611, 330),
    ExactRational(854513, 138),
    ExactRational(-236364091, 2730),
    ExactRational(8553103, 6),
    ExactRational(mpz_class("-23749461029"), mpz_class(870)),
    ExactRational(mpz_class("8615841276005"), mpz_class(14322))};

inline ExtReal atan_inverse(long n, long bits) {
  // atan(1/n) = sum (-1)^k / ((2k+1) n^(2k+1))
  const ExtReal inv = ExtReal(1, bits) / n;
  const ExtReal inv2 = inv * inv;
  ExtReal power = inv;
  ExtReal sum(bits);
  for (long k = 0;; ++k) {
    ExtReal term = power / (2 * k + 1);
    if (term.is_zero() || (!sum.is_zero() && term.exponent() < sum.exponent() - bits - 4)) break;
    sum += (k % 2 == 0) ? term : -term;
    power *= inv2;
  }
  return sum;
}

inline ExtReal machin_pi(long bits) {
  const long w = bits + 16;
  return (16 * atan_inverse(5, w) - 4 * atan_inverse(239, w)).rounded(bits);
}

inline ExtReal bbp_pi(long bits) {
  const long w = bits + 16;
  ExtReal sum(w);
  ExtReal scale(1, w);
  for (long k = 0; k < bits / 4 + 8; ++k) {
    const long e = 8 * k;
    ExtReal term = ExtReal(4, w) / (e + 1) - ExtReal(2, w) / (e + 4) - ExtReal(1, w) / (e + 5) -
                   ExtReal(1, w) / (e + 6);
    sum += term * scale;
    scale /= 16;
  }
  return sum.rounded(bits);
}

/// sum_{j>=0} (x + j)^-s for s >= 2: partial sum to N plus the integral of
/// the tail, the half-term, and Euler-Maclaurin corrections B_2..B_30.
inline ExtReal hurwitz_direct(long s, const ExtReal& x, long bits, long terms = 2000) {
  const long w = bits + 32;
  const ExtReal xw = x.rounded(w);
  ExtReal sum(w);
  for (long j = terms - 1; j >= 0; --j) sum += pow(xw + j, -s);
  const ExtReal a = xw + terms;
  sum += pow(a, 1 - s) / (s - 1);
  sum += pow(a, -s) / 2;
  // + sum_k B_2k / (2k)! * s (s+1) ... (s+2k-2) a^-(s+2k-1)
  ExtReal rising(s, w);  // s (s+1) ... (s + 2k - 2)
  ExtReal fact(2, w);    // (2k)!
  for (long k = 1; k <= 15; ++k) {
    if (k > 1) {
      rising *= (s + 2 * k - 3) * (s + 2 * k - 2);
      fact *= (2 * k - 1) * (2 * k);
    }
    sum += ExtReal(kEvenBernoulli[static_cast<std::size_t>(k - 1)], w) * rising / fact *
           pow(a, -(s + 2 * k - 1));
  }
  return sum.rounded(bits);
}

/// psi^(i)(x) = (-1)^(i+1) i! zeta(i+1, x) for i >= 1.
inline ExtReal polygamma_direct(unsigned i, const ExtReal& x, long bits) {
  ExtReal value = hurwitz_direct(static_cast<long>(i) + 1, x, bits) *
                  ExtReal(ExactRational(gammalim::factorial(i)), bits);
  return (i % 2 == 1) ? value : -value;
}

/// Euler's constant as H_N - ln N - 1/(2N) + sum B_2k / (2k N^2k), N = 1000.
inline ExtReal euler_gamma_harmonic(long bits) {
  const long w = bits + 32;
  const long n = 1000;
  ExtReal h(w);
  for (long j = n; j >= 1; --j) h += ExtReal(1, w) / j;
  const ExtReal nn(n, w);
  ExtReal sum = h - log(nn) - ExtReal(1, w) / (2 * n);
  for (long k = 1; k <= 15; ++k) {
    sum += ExtReal(kEvenBernoulli[static_cast<std::size_t>(k - 1)], w) / (2 * k) / pow(nn, 2 * k);
  }
  return sum.rounded(bits);
}

inline ExtReal ldexp_one(long e, long bits) { return ExtReal::power_of_two(e, bits); }

/// |a/b - 1| (b nonzero) or |a| when b is zero.
inline ExtReal rel_err(const ExtReal& a, const ExtReal& b) {
  if (b.is_zero()) return abs(a);
  return abs(a / b - 1);
}

/// Uniform double in [lo, hi) from a fixed-seed engine.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oracle

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<gammalim::ExtReal> {
  static String convert(const gammalim::ExtReal& x) { return x.to_decimal(40).c_str(); }
};
}  // namespace doctest
#endif
