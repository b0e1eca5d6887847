#include "gammalim/poles.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "gammalim/bernoulli.hpp"
#include "gammalim/constants.hpp"
#include "gammalim/error.hpp"
#include "gammalim/kernel.hpp"

namespace gammalim::poles {

namespace {

constexpr long kGuardBits = 64;

void require_pole_index(long m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "pole index must be non-negative");
}

// Coefficients of pi w / sin(pi w) through `degree`:
// sum_l (-1)^(l+1) (2^(2l) - 2) B_(2l) (pi w)^(2l) / (2l)!.
Jet pi_w_over_sin_jet(std::size_t degree, long bits) {
  std::vector<ExtReal> c(degree + 1, ExtReal(bits));
  const ExtReal pi2 = pow(const_pi(bits), 2);
  ExtReal pi_power(1, bits);
  for (std::size_t j = 0; j <= degree; j += 2) {
    const unsigned long l = j / 2;
    mpz_class weight = (mpz_class(1) << static_cast<mp_bitcnt_t>(2 * l)) - 2;
    if (l % 2 == 0) weight = -weight;
    const ExactRational r = ExactRational(weight) * bernoulli(2 * l) /
                            ExactRational(factorial(2 * l));
    c[j] = ExtReal(r, bits) * pi_power;
    pi_power *= pi2;
  }
  return Jet(std::move(c));
}

// Taylor jet of 1 / Gamma(1 + m - w).
Jet reciprocal_gamma_jet(long m, std::size_t degree, long bits) {
  const kernel::EvalPoint base(ExtReal(1 + m, bits));
  std::vector<ExtReal> log_deriv;  // L_k = (-1)^k psi^(k)(1+m) / k!
  log_deriv.reserve(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    ExtReal v = kernel::polygamma(static_cast<unsigned>(k), base, bits) /
                ExtReal(ExactRational(factorial(k)), bits);
    log_deriv.push_back(k % 2 == 0 ? v : -v);
  }
  std::vector<ExtReal> g;
  g.reserve(degree + 1);
  g.push_back(1 / kernel::gamma(base, bits));
  for (std::size_t j = 0; j < degree; ++j) {
    ExtReal acc(bits);
    for (std::size_t k = 0; k <= j; ++k) acc += log_deriv[k] * g[j - k];
    g.push_back(acc / static_cast<long>(j + 1));
  }
  return Jet(std::move(g));
}

Jet compute_fn_jet(long m, std::size_t degree, long bits) {
  const Jet product = jet_mul(pi_w_over_sin_jet(degree, bits), reciprocal_gamma_jet(m, degree, bits));
  return jet_scale(product, ExtReal(ExactRational(factorial(static_cast<unsigned long>(m))), bits));
}

ExtReal exact_value(const ExactRational& r, long bits) { return ExtReal(r, bits); }

ExactRational gamma_residue(long m) {
  const ExactRational r(mpz_class(1), factorial(static_cast<unsigned long>(m)));
  return m % 2 == 0 ? r : -r;
}

void check_dual_path(const LaurentSeries& leibniz, const LaurentSeries& termwise, long bits) {
  const ExtReal tolerance = ExtReal::power_of_two(40 - bits, bits);
  for (long p = leibniz.lowest_power(); p <= leibniz.highest_power(); ++p) {
    if (relative_difference(leibniz.coefficient(p), termwise.coefficient(p)) > tolerance) {
      throw Error(ErrorCode::InternalInconsistency,
                  "Leibniz and termwise Gamma-derivative expansions disagree at power " +
                      std::to_string(p));
    }
  }
}

}  // namespace

namespace detail {

Jet fn_jet_working(long m, std::size_t degree, long working_bits) {
  require_pole_index(m);
  static std::mutex mutex;
  static std::map<std::pair<long, long>, Jet> cache;
  const auto key = std::make_pair(m, working_bits);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end() && it->second.degree() >= degree) {
      return it->second.truncated(degree);
    }
  }
  // Coefficients do not depend on the truncation degree, so one long jet
  // serves every shorter request.
  Jet jet = compute_fn_jet(m, std::max<std::size_t>(degree, kDefaultJetDegree), working_bits);
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::move(jet)).first;
  } else if (it->second.degree() < jet.degree()) {
    it->second = std::move(jet);
  }
  return it->second.truncated(degree);
}

}  // namespace detail

FnJet fn_jet(long m, std::size_t degree, long precision_bits) {
  require_precision(precision_bits);
  const Jet working = detail::fn_jet_working(m, degree, precision_bits + kGuardBits);
  std::vector<ExtReal> c;
  c.reserve(working.degree() + 1);
  for (const auto& x : working.coefficients()) c.push_back(x.rounded(precision_bits));
  return FnJet{m, Jet(std::move(c))};
}

namespace {

LaurentSeries gamma_laurent_working(long m, std::size_t degree, long bits) {
  const Jet f = detail::fn_jet_working(m, degree + 1, bits);
  const ExtReal residue = exact_value(gamma_residue(m), bits);
  std::vector<ExtReal> c;
  c.reserve(degree + 2);
  for (const auto& x : f.coefficients()) c.push_back(residue * x);
  return LaurentSeries(m, 1, std::move(c));
}

LaurentSeries leibniz_working(unsigned order, long m, std::size_t degree, long bits) {
  // Gamma^(i)(z) = ((-1)^m / m!) sum_l C(i,l) (-1)^l l! w^-(l+1) f_m^(i-l)(w).
  // The coefficient of w^t in f^(r) is f_{t+r} (t+r)!/t!, so the term for l
  // lands on power t - l - 1 and every term feeding power p uses f_{p+i+1}:
  //   a_p = ((-1)^m/m!) f_{p+i+1} sum_{l : p+l+1 >= 0} C(i,l) (-1)^l l! (p+i+1)!/(p+l+1)!.
  const long i = static_cast<long>(order);
  const Jet f = detail::fn_jet_working(m, degree + order + 1, bits);
  const ExtReal residue = exact_value(gamma_residue(m), bits);
  std::vector<ExtReal> c;
  for (long p = -(i + 1); p <= static_cast<long>(degree); ++p) {
    mpz_class weight = 0;
    for (long l = 0; l <= i; ++l) {
      const long t = p + l + 1;
      if (t < 0) continue;
      mpz_class term = binomial(order, static_cast<unsigned long>(l)) *
                       factorial(static_cast<unsigned long>(l)) *
                       factorial(static_cast<unsigned long>(p + i + 1)) /
                       factorial(static_cast<unsigned long>(t));
      if (l % 2 == 1) term = -term;
      weight += term;
    }
    ExtReal w(bits);
    mpfr_set_z(w.raw(), weight.get_mpz_t(), MPFR_RNDN);
    c.push_back(residue * f[static_cast<std::size_t>(p + i + 1)] * w);
  }
  return LaurentSeries(m, order + 1, std::move(c));
}

LaurentSeries termwise_working(unsigned order, long m, std::size_t degree, long bits) {
  LaurentSeries s = gamma_laurent_working(m, degree + order, bits);
  for (unsigned j = 0; j < order; ++j) s = s.differentiated();
  return s;
}

LaurentSeries psi_laurent_working(unsigned order, long m, std::size_t degree, long bits) {
  const Jet f = detail::fn_jet_working(m, degree + order + 1, bits);
  Jet regular = jet_mul(jet_differentiate(f), jet_reciprocal(f));
  for (unsigned j = 0; j < order; ++j) regular = jet_differentiate(regular);
  std::vector<ExtReal> c;
  c.reserve(order + 1 + regular.degree() + 1);
  ExtReal principal(ExactRational(factorial(order)), bits);
  c.push_back(order % 2 == 0 ? -principal : principal);
  for (unsigned j = 0; j < order; ++j) c.emplace_back(bits);
  for (const auto& x : regular.coefficients()) c.push_back(x);
  return LaurentSeries(m, order + 1, std::move(c));
}

LaurentSeries laurent_working(PoleFunction f, long m, std::size_t degree, long bits) {
  switch (f.kind) {
    case FunctionKind::Gamma:
      return gamma_laurent_working(m, degree, bits);
    case FunctionKind::GammaDerivative: {
      LaurentSeries leibniz = leibniz_working(f.order, m, degree, bits);
      check_dual_path(leibniz, termwise_working(f.order, m, degree, bits), bits - kGuardBits);
      return leibniz;
    }
    case FunctionKind::PsiDerivative:
      return psi_laurent_working(f.order, m, degree, bits);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function kind");
}

}  // namespace

LaurentSeries gamma_laurent(long m, std::size_t degree, long precision_bits) {
  require_precision(precision_bits);
  require_pole_index(m);
  return gamma_laurent_working(m, degree, precision_bits + kGuardBits).rounded(precision_bits);
}

LaurentSeries gamma_derivative_laurent_leibniz(unsigned order, long m, std::size_t degree,
                                               long precision_bits) {
  require_precision(precision_bits);
  require_pole_index(m);
  return leibniz_working(order, m, degree, precision_bits + kGuardBits).rounded(precision_bits);
}

LaurentSeries gamma_derivative_laurent_termwise(unsigned order, long m, std::size_t degree,
                                                long precision_bits) {
  require_precision(precision_bits);
  require_pole_index(m);
  return termwise_working(order, m, degree, precision_bits + kGuardBits).rounded(precision_bits);
}

LaurentSeries gamma_derivative_laurent(unsigned order, long m, std::size_t degree,
                                       long precision_bits) {
  require_precision(precision_bits);
  require_pole_index(m);
  return laurent_working({FunctionKind::GammaDerivative, order}, m, degree,
                         precision_bits + kGuardBits)
      .rounded(precision_bits);
}

LaurentSeries psi_laurent(unsigned order, long m, std::size_t degree, long precision_bits) {
  require_precision(precision_bits);
  require_pole_index(m);
  return psi_laurent_working(order, m, degree, precision_bits + kGuardBits).rounded(precision_bits);
}

LaurentSeries laurent_for(PoleFunction f, long m, std::size_t degree, long precision_bits) {
  require_precision(precision_bits);
  require_pole_index(m);
  return laurent_working(f, m, degree, precision_bits + kGuardBits).rounded(precision_bits);
}

ExactRational exact_leading_coefficient(PoleFunction f, long m) {
  require_pole_index(m);
  switch (f.kind) {
    case FunctionKind::Gamma:
      return gamma_residue(m);
    case FunctionKind::GammaDerivative: {
      const ExactRational r(factorial(f.order), factorial(static_cast<unsigned long>(m)));
      return (m + static_cast<long>(f.order)) % 2 == 0 ? r : -r;
    }
    case FunctionKind::PsiDerivative: {
      const ExactRational r(factorial(f.order));
      return f.order % 2 == 1 ? r : -r;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function kind");
}

LaurentSeries adaptive_laurent(PoleFunction f, long m, const ExtReal& radius, long target_bits,
                               long precision_bits, std::size_t initial_degree) {
  require_precision(precision_bits);
  require_pole_index(m);
  const long bits = precision_bits + kGuardBits;
  const ExtReal r = abs(radius).rounded(bits);
  const ExtReal tolerance = ExtReal::power_of_two(-target_bits, bits);
  const std::size_t max_degree = static_cast<std::size_t>(16 * precision_bits);
  for (std::size_t degree = std::max<std::size_t>(initial_degree, 1); degree <= max_degree; degree *= 2) {
    LaurentSeries s = laurent_working(f, m, degree, bits);
    const ExtReal leading = abs(s.leading() * pow(r, s.lowest_power()));
    if (s.truncation_estimate(r) <= tolerance * leading) return s.rounded(precision_bits);
  }
  throw Error(ErrorCode::PrecisionExhausted,
              "Laurent series did not converge at radius " + radius.to_decimal(10));
}

NearPoleValue eval_near_pole(PoleFunction f, const ExtReal& z, long precision_bits,
                             std::size_t initial_degree) {
  require_precision(precision_bits);
  const kernel::EvalPoint point(z);
  if (point.is_pole()) {
    throw Error(ErrorCode::ExactPole, "pole of order " + std::to_string(f.pole_order()) + " at " +
                                          std::to_string(-point.nearest_pole()));
  }
  if (!(point.pole_distance().to_double() < kWorkingRadius)) {
    throw Error(ErrorCode::OutOfRadius, "argument is not within 1/8 of a pole");
  }
  const long m = point.nearest_pole();
  const long bits = precision_bits + kGuardBits;
  const ExtReal w = (z.rounded(std::max(bits, z.precision())) + m).rounded(bits);
  const ExtReal tolerance = ExtReal::power_of_two(32 - precision_bits, bits);
  const std::size_t max_degree = static_cast<std::size_t>(16 * precision_bits);
  for (std::size_t degree = std::max<std::size_t>(initial_degree, 1); degree <= max_degree; degree *= 2) {
    const LaurentSeries s = laurent_working(f, m, degree, bits);
    ExtReal value = s.evaluate(w);
    ExtReal estimate = s.truncation_estimate(w);
    if (estimate <= tolerance * abs(value)) {
      return NearPoleValue{value.rounded(precision_bits), estimate.rounded(precision_bits), degree, m};
    }
  }
  throw Error(ErrorCode::PrecisionExhausted, "Laurent evaluation did not converge");
}

}  // namespace gammalim::poles
