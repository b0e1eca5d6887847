#pragma once

#include <cstddef>
#include <string>

#include "gammalim/exact_rational.hpp"
#include "gammalim/ext_real.hpp"
#include "gammalim/jet.hpp"
#include "gammalim/laurent.hpp"

namespace gammalim::poles {

/// Radius of the disk |z + m| < 1/4 on which Gamma(z) = (-1)^m / (m! (z + m)) f_m(z).
inline constexpr double kValidityRadius = 0.25;
/// Pole-aware evaluation is only used for |z + m| < 1/8.
inline constexpr double kWorkingRadius = 0.125;
inline constexpr std::size_t kDefaultJetDegree = 16;

/// Taylor jet of the analytic factor f_m(-m + w), normalised so that f_m(-m) = 1.
struct FnJet {
  long m = 0;
  Jet jet;
};

/// f_m(-m + w) = m! * [pi w / sin(pi w)] * [1 / Gamma(1 + m - w)].
/// The first factor comes from its Bernoulli-number series; the second from
/// the recurrence (j + 1) g_{j+1} = sum_k L_k g_{j-k}, where
/// L_k = (-1)^k psi^(k)(1 + m) / k! are the Taylor coefficients of
/// psi(1 + m - w) = g'/g.
FnJet fn_jet(long m, std::size_t degree, long precision_bits);

/// Gamma about z = -m: pole order 1, a_{-1} = (-1)^m / m!.
LaurentSeries gamma_laurent(long m, std::size_t degree, long precision_bits);

/// Gamma^(i) about z = -m, coefficients a_{-(i+1)} .. a_degree. Built by the
/// Leibniz expansion and checked against termwise differentiation of
/// gamma_laurent; throws InternalInconsistency if the two disagree beyond
/// 2^(40-P) relative.
LaurentSeries gamma_derivative_laurent(unsigned order, long m, std::size_t degree,
                                       long precision_bits);

/// The two independent constructions behind gamma_derivative_laurent.
LaurentSeries gamma_derivative_laurent_leibniz(unsigned order, long m, std::size_t degree,
                                               long precision_bits);
LaurentSeries gamma_derivative_laurent_termwise(unsigned order, long m, std::size_t degree,
                                                long precision_bits);

/// psi^(i) about z = -m: principal coefficient (-1)^(i+1) i! set exactly,
/// regular part the i-th derivative of f_m' / f_m.
LaurentSeries psi_laurent(unsigned order, long m, std::size_t degree, long precision_bits);

enum class FunctionKind { Gamma, GammaDerivative, PsiDerivative };

struct PoleFunction {
  FunctionKind kind = FunctionKind::Gamma;
  unsigned order = 0;

  unsigned pole_order() const noexcept { return kind == FunctionKind::Gamma ? 1 : order + 1; }
};

/// Laurent series of `f` about -m (dispatches to the builders above).
LaurentSeries laurent_for(PoleFunction f, long m, std::size_t degree, long precision_bits);

/// Exact leading coefficient: (-1)^(m+i) i!/m! for Gamma^(i), (-1)^(i+1) i! for psi^(i).
ExactRational exact_leading_coefficient(PoleFunction f, long m);

/// Series of `f` about -m whose truncation estimate at |w| = radius is below
/// 2^-target_bits relative to the leading term, doubling the degree from
/// `initial_degree`. Computed and returned at `precision_bits`.
/// Throws PrecisionExhausted if no degree up to 16 * precision_bits suffices.
LaurentSeries adaptive_laurent(PoleFunction f, long m, const ExtReal& radius, long target_bits,
                               long precision_bits, std::size_t initial_degree = kDefaultJetDegree);

struct NearPoleValue {
  ExtReal value;
  ExtReal truncation_estimate;
  std::size_t degree = 0;
  long pole_index = 0;
};

/// Sums the Laurent series of `f` at w = z + m for the nearest pole -m.
/// Throws ExactPole at z = -m and OutOfRadius when |z + m| >= 1/8.
NearPoleValue eval_near_pole(PoleFunction f, const ExtReal& z, long precision_bits,
                             std::size_t initial_degree = kDefaultJetDegree);

namespace detail {
/// Working-precision f_m jet; memoized per (m, precision), grown on demand.
Jet fn_jet_working(long m, std::size_t degree, long working_bits);
}  // namespace detail

}  // namespace gammalim::poles
