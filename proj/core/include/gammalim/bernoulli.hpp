#pragma once

#include "gammalim/exact_rational.hpp"

namespace gammalim {

/// Exact Bernoulli number B_m (convention B_1 = -1/2), from the recurrence
/// sum_{j=0}^{m} C(m+1, j) B_j = 0. Results are memoized process-wide; the
/// table only grows and is safe to query from several threads.
ExactRational bernoulli(unsigned long m);

}  // namespace gammalim
