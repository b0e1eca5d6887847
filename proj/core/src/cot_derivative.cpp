#include "gammalim/cot_derivative.hpp"

#include <deque>
#include <mutex>

namespace gammalim::kernel {

namespace {

CotDerivPolynomial next_polynomial(const CotDerivPolynomial& p) {
  // derivative of P_i, then multiply by -(1 + c^2)
  const auto& a = p.coefficients;
  std::vector<mpz_class> d(a.size() > 1 ? a.size() - 1 : 1, 0);
  for (std::size_t j = 1; j < a.size(); ++j) d[j - 1] = a[j] * static_cast<unsigned long>(j);
  std::vector<mpz_class> out(d.size() + 2, 0);
  for (std::size_t j = 0; j < d.size(); ++j) {
    out[j] -= d[j];
    out[j + 2] -= d[j];
  }
  return CotDerivPolynomial{p.order + 1, std::move(out)};
}

}  // namespace

ExtReal CotDerivPolynomial::evaluate(const ExtReal& c) const {
  const long p = c.precision();
  ExtReal acc(p);
  ExtReal coef(p);
  for (std::size_t j = coefficients.size(); j-- > 0;) {
    acc *= c;
    mpfr_set_z(coef.raw(), coefficients[j].get_mpz_t(), MPFR_RNDN);
    acc += coef;
  }
  return acc;
}

const CotDerivPolynomial& cot_derivative_polynomial(unsigned order) {
  static std::mutex mutex;
  static std::deque<CotDerivPolynomial> table{CotDerivPolynomial{0, {0, 1}}};
  std::lock_guard lock(mutex);
  while (table.size() <= order) table.push_back(next_polynomial(table.back()));
  return table[order];
}

}  // namespace gammalim::kernel
