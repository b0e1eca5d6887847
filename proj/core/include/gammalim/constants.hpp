#pragma once

#include "gammalim/ext_real.hpp"

namespace gammalim {

/// pi correctly rounded to `precision_bits`. Memoized per precision.
ExtReal const_pi(long precision_bits);

/// Euler-Mascheroni constant. Each precision is computed once, by the
/// Brent-McMillan Bessel-sum formula, and accepted only after it agrees with
/// an Euler-Maclaurin evaluation of H_N - ln N to within 2^(16-P) relative.
/// Throws InternalInconsistency otherwise. Shares no code with polygamma.
ExtReal const_euler_gamma(long precision_bits);

namespace detail {
ExtReal euler_gamma_brent_mcmillan(long precision_bits);
ExtReal euler_gamma_euler_maclaurin(long precision_bits);
}  // namespace detail

}  // namespace gammalim
