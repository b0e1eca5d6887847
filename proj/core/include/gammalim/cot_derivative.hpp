#pragma once

#include <vector>

#include <gmpxx.h>

#include "gammalim/ext_real.hpp"

namespace gammalim::kernel {

/// Integer polynomial P_i with d^i/dx^i cot(x) = P_i(cot x).
/// P_0(c) = c and P_{i+1}(c) = -(1 + c^2) P_i'(c).
struct CotDerivPolynomial {
  unsigned order = 0;
  /// coefficients[j] multiplies c^j; degree is order + 1.
  std::vector<mpz_class> coefficients;

  ExtReal evaluate(const ExtReal& c) const;
};

/// Cached table entry for order i. References stay valid for the life of
/// the process.
const CotDerivPolynomial& cot_derivative_polynomial(unsigned order);

}  // namespace gammalim::kernel
