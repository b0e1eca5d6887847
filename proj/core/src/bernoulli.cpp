#include "gammalim/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace gammalim {

namespace {

struct BernoulliTable {
  std::mutex mutex;
  std::vector<mpq_class> values{mpq_class(1), mpq_class(-1, 2)};
};

BernoulliTable& table() {
  static BernoulliTable t;
  return t;
}

// Extends `values` through index m. Odd indices above 1 vanish and are
// skipped in the sum.
void extend(std::vector<mpq_class>& values, unsigned long m) {
  mpz_class binom;
  for (unsigned long n = values.size(); n <= m; ++n) {
    if (n % 2 == 1) {
      values.emplace_back(0);
      continue;
    }
    mpq_class sum = 0;
    for (unsigned long j = 0; j < n; ++j) {
      if (j > 1 && j % 2 == 1) continue;
      mpz_bin_uiui(binom.get_mpz_t(), n + 1, j);
      sum += binom * values[j];
    }
    mpq_class b = -sum / mpq_class(static_cast<long>(n + 1));
    b.canonicalize();
    values.push_back(std::move(b));
  }
}

}  // namespace

ExactRational bernoulli(unsigned long m) {
  auto& t = table();
  std::lock_guard lock(t.mutex);
  if (m >= t.values.size()) extend(t.values, m);
  return ExactRational(t.values[m]);
}

}  // namespace gammalim
