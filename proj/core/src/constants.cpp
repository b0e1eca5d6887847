#include "gammalim/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "gammalim/bernoulli.hpp"
#include "gammalim/error.hpp"
#include "gammalim/exact_rational.hpp"

namespace gammalim {

namespace {

class ConstantCache {
 public:
  template <typename Compute>
  ExtReal get(long bits, Compute compute) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = values_.find(bits); it != values_.end()) return it->second;
    }
    // Computed outside the lock; the first value stored wins.
    ExtReal value = compute(bits);
    std::lock_guard lock(mutex_);
    return values_.try_emplace(bits, std::move(value)).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<long, ExtReal> values_;
};

}  // namespace

ExtReal const_pi(long precision_bits) {
  require_precision(precision_bits);
  static ConstantCache cache;
  return cache.get(precision_bits, [](long bits) {
    ExtReal out(bits);
    mpfr_const_pi(out.raw(), MPFR_RNDN);
    return out;
  });
}

namespace detail {

ExtReal euler_gamma_brent_mcmillan(long precision_bits) {
  // gamma = U/V - ln N + O(e^{-4N}), U = sum A_k, V = sum B_k,
  // B_k = (N^k/k!)^2, A_k = B_k (H_k - ln N).
  const long n = static_cast<long>(std::ceil((precision_bits + 24) * std::log(2.0) / 4.0)) + 1;
  const long w = precision_bits + 48 + static_cast<long>(std::ceil(std::log2(static_cast<double>(n))));
  const ExtReal log_n = log(ExtReal(n, w));
  ExtReal a = -log_n;
  ExtReal b(1, w);
  ExtReal u = a;
  ExtReal v = b;
  const long n2 = n * n;
  for (long k = 1;; ++k) {
    b *= n2;
    b /= k * k;
    a *= n2;
    a /= k;
    a += b;
    a /= k;
    u += a;
    v += b;
    if (k > n && b.exponent() < v.exponent() - w - 4 &&
        (a.is_zero() || a.exponent() < u.exponent() - w - 4)) {
      break;
    }
  }
  return (u / v).rounded(precision_bits);
}

ExtReal euler_gamma_euler_maclaurin(long precision_bits) {
  // gamma = H_N - ln N - 1/(2N) + sum_{j>=1} B_{2j} / (2j N^{2j}), asymptotic;
  // the smallest term is about e^{-2 pi N}.
  const long n = static_cast<long>(std::ceil((precision_bits + 24) * std::log(2.0) / (2 * M_PI))) + 8;
  const long w = precision_bits + 32;
  ExtReal harmonic(w);
  for (long j = n; j >= 1; --j) harmonic += 1 / ExtReal(j, w);
  const ExtReal nn(n, w);
  ExtReal sum = harmonic - log(nn) - 1 / (2 * nn);
  const ExtReal inv_n2 = 1 / (nn * nn);
  ExtReal power = inv_n2;
  ExtReal previous_magnitude(w);
  for (unsigned long j = 1;; ++j) {
    ExtReal term = ExtReal(bernoulli(2 * j), w) * power / static_cast<long>(2 * j);
    const ExtReal magnitude = abs(term);
    if (j > 1 && magnitude > previous_magnitude) break;
    sum += term;
    if (magnitude.is_zero() || magnitude.exponent() < sum.exponent() - w - 4) break;
    previous_magnitude = magnitude;
    power *= inv_n2;
  }
  return sum.rounded(precision_bits);
}

}  // namespace detail

ExtReal const_euler_gamma(long precision_bits) {
  require_precision(precision_bits);
  static ConstantCache cache;
  return cache.get(precision_bits, [](long bits) {
    ExtReal primary = detail::euler_gamma_brent_mcmillan(bits);
    const ExtReal check = detail::euler_gamma_euler_maclaurin(bits);
    if (relative_difference(primary, check) > ExtReal::power_of_two(16 - bits, bits)) {
      throw Error(ErrorCode::InternalInconsistency,
                  "Euler-Mascheroni routes disagree at " + std::to_string(bits) + " bits");
    }
    return primary;
  });
}

}  // namespace gammalim
