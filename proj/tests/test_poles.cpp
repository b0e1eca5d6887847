#include <string>
#include <thread>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "gammalim/constants.hpp"
#include "gammalim/error.hpp"
#include "gammalim/kernel.hpp"
#include "gammalim/laurent.hpp"
#include "gammalim/poles.hpp"
#include "gammalim/serialize.hpp"
#include "oracles.hpp"

using namespace gammalim;
using poles::FnJet;
using poles::FunctionKind;
using poles::PoleFunction;

namespace {

constexpr long P = 256;

ExtReal q(long num, long den = 1, long bits = P) { return ExtReal(ExactRational(num, den), bits); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gammalim::Error");
  return ErrorCode::InvalidArgument;
}

ExtReal exact(const ExactRational& r) { return ExtReal(r, P); }

// mpmath, 90 digits
const char* const kGammaNearMinus1 =
    "-1073741824.42278433641334591130967129033815348378363170543672360811329318038903006464160425";
const char* const kPsiNearMinus2 =
    "-999999.077212769967543067138411983917219506970954522063708096790609298597786287337108609081";
const char* const kGammaMinus005 =
    "-20.6290663425806439233150959186054750972416578803337418855300080882695092222813612957754107";

}  // namespace

TEST_CASE("fn_jet examples") {
  const FnJet f0 = poles::fn_jet(0, 8, P);
  CHECK(f0.m == 0);
  CHECK(f0.jet.degree() == 8);
  CHECK(oracle::rel_err(f0.jet[0], ExtReal(1, P)) <= oracle::ldexp_one(16 - P, P));

  // f_0(w) = Gamma(1 + w): slope from central differences of log_gamma at doubled precision
  const long w = 2 * P;
  const ExtReal h = oracle::ldexp_one(-P / 4, w);
  const ExtReal one(1, w);
  const ExtReal slope = (kernel::log_gamma(one + h, w) - kernel::log_gamma(one - h, w)) / (2 * h);
  CHECK(oracle::rel_err(f0.jet[1], slope.rounded(P)) <= oracle::ldexp_one(8 - P / 2, P));
  CHECK(oracle::rel_err(f0.jet[1], -oracle::euler_gamma_harmonic(P)) <= oracle::ldexp_one(24 - P, P));

  const FnJet f2 = poles::fn_jet(2, 8, P);
  CHECK(oracle::rel_err(f2.jet[0], ExtReal(1, P)) <= oracle::ldexp_one(16 - P, P));
  // f_2'(-2) = H_2 - gamma
  CHECK(oracle::rel_err(f2.jet[1], q(3, 2) - oracle::euler_gamma_harmonic(P)) <=
        oracle::ldexp_one(24 - P, P));
}

TEST_CASE("fn_jet normalisation for m up to 20") {
  for (long m = 0; m <= 20; ++m) {
    CAPTURE(m);
    CHECK(oracle::rel_err(poles::fn_jet(m, 4, P).jet[0], ExtReal(1, P)) <= oracle::ldexp_one(16 - P, P));
  }
}

TEST_CASE("fn_jet evaluated near the pole reproduces Gamma by reflection") {
  for (long m = 0; m <= 5; ++m) {
    const ExtReal wv = q(1, 10);
    const FnJet f = poles::fn_jet(m, 160, P);
    const ExtReal z = wv - m;
    // Gamma(z) = (-1)^m / (m! w) f_m(z)
    ExtReal predicted = f.jet.evaluate(wv) / (wv * exact(ExactRational(factorial(m))));
    if (m % 2 == 1) predicted = -predicted;
    CAPTURE(m);
    CHECK(oracle::rel_err(predicted, kernel::gamma(kernel::EvalPoint(z), P)) <= oracle::ldexp_one(24 - P, P));
  }
}

TEST_CASE("gamma_laurent examples and residues") {
  const LaurentSeries g0 = poles::gamma_laurent(0, 6, P);
  CHECK(g0.pole_order() == 1);
  CHECK(g0.lowest_power() == -1);
  CHECK(g0.highest_power() == 6);
  CHECK(oracle::rel_err(g0.coefficient(-1), ExtReal(1, P)) <= oracle::ldexp_one(16 - P, P));
  CHECK(oracle::rel_err(g0.coefficient(0), -const_euler_gamma(P)) <= oracle::ldexp_one(24 - P, P));
  CHECK(oracle::rel_err(poles::gamma_laurent(1, 4, P).coefficient(-1), ExtReal(-1, P)) <=
        oracle::ldexp_one(16 - P, P));
  for (long m = 0; m <= 12; ++m) {
    const LaurentSeries s = poles::gamma_laurent(m, 4, P);
    ExtReal scaled = s.coefficient(-1) * exact(ExactRational(factorial(m)));
    if (m % 2 == 1) scaled = -scaled;
    CAPTURE(m);
    CHECK(oracle::rel_err(scaled, ExtReal(1, P)) <= oracle::ldexp_one(16 - P, P));
  }
}

TEST_CASE("gamma_derivative_laurent examples") {
  const LaurentSeries a = poles::gamma_derivative_laurent(0, 1, 4, P);
  CHECK(a.pole_order() == 1);
  CHECK(oracle::rel_err(a.leading(), ExtReal(-1, P)) <= oracle::ldexp_one(24 - P, P));

  const LaurentSeries b = poles::gamma_derivative_laurent(1, 0, 4, P);
  CHECK(b.pole_order() == 2);
  CHECK(oracle::rel_err(b.leading(), ExtReal(-1, P)) <= oracle::ldexp_one(24 - P, P));
  CHECK(b.coefficient(-1).is_zero());

  const LaurentSeries c = poles::gamma_derivative_laurent(2, 1, 4, P);
  CHECK(c.pole_order() == 3);
  CHECK(oracle::rel_err(c.leading(), ExtReal(-2, P)) <= oracle::ldexp_one(24 - P, P));
  const LaurentSeries twice = poles::gamma_laurent(1, 6, P).differentiated().differentiated();
  for (long p = -3; p <= 4; ++p) {
    CAPTURE(p);
    CHECK(oracle::rel_err(c.coefficient(p), twice.coefficient(p)) <= oracle::ldexp_one(40 - P, P));
  }
}

TEST_CASE("Leibniz and termwise constructions agree") {
  for (unsigned i = 0; i <= 5; ++i) {
    for (long m = 0; m <= 4; ++m) {
      const LaurentSeries a = poles::gamma_derivative_laurent_leibniz(i, m, 4, P);
      const LaurentSeries b = poles::gamma_derivative_laurent_termwise(i, m, 4, P);
      REQUIRE(a.lowest_power() == -static_cast<long>(i) - 1);
      REQUIRE(b.lowest_power() == a.lowest_power());
      for (long p = a.lowest_power(); p <= 4; ++p) {
        CAPTURE(i);
        CAPTURE(m);
        CAPTURE(p);
        CHECK(oracle::rel_err(a.coefficient(p), b.coefficient(p)) <= oracle::ldexp_one(40 - P, P));
      }
    }
  }
}

TEST_CASE("leading-coefficient law") {
  for (unsigned i = 0; i <= 6; ++i) {
    for (long m = 0; m <= 6; ++m) {
      const LaurentSeries s = poles::gamma_derivative_laurent(i, m, 2, P);
      ExtReal scaled = s.leading() * exact(ExactRational(factorial(m))) / exact(ExactRational(factorial(i)));
      if ((m + static_cast<long>(i)) % 2 == 1) scaled = -scaled;
      CAPTURE(i);
      CAPTURE(m);
      CHECK(oracle::rel_err(scaled, ExtReal(1, P)) <= oracle::ldexp_one(24 - P, P));
      const auto expected = poles::exact_leading_coefficient({FunctionKind::GammaDerivative, i}, m);
      CHECK(oracle::rel_err(s.leading(), exact(expected)) <= oracle::ldexp_one(24 - P, P));
    }
  }
}

TEST_CASE("psi_laurent examples") {
  const LaurentSeries a = poles::psi_laurent(0, 0, 6, P);
  CHECK(a.pole_order() == 1);
  CHECK(a.leading() == -1);
  CHECK(oracle::rel_err(a.coefficient(0), -oracle::euler_gamma_harmonic(P)) <= oracle::ldexp_one(24 - P, P));
  const FnJet f0 = poles::fn_jet(0, 4, P);
  CHECK(oracle::rel_err(a.coefficient(0), f0.jet[1] / f0.jet[0]) <= oracle::ldexp_one(24 - P, P));
  for (long m = 0; m <= 5; ++m) {
    const LaurentSeries b = poles::psi_laurent(1, m, 4, P);
    CHECK(b.pole_order() == 2);
    CHECK(b.leading() == 1);
    CHECK(b.coefficient(-1).is_zero());
  }
  for (unsigned i = 0; i <= 6; ++i) {
    const LaurentSeries s = poles::psi_laurent(i, 3, 3, P);
    CHECK(s.pole_order() == i + 1);
    ExtReal expected = exact(ExactRational(factorial(i)));
    if (i % 2 == 0) expected = -expected;
    CHECK(s.leading() == expected);
  }
}

TEST_CASE("psi_laurent regular part matches kernel polygamma") {
  const ExtReal wv = q(1, 16);
  for (unsigned i = 0; i <= 3; ++i) {
    for (long m = 0; m <= 3; ++m) {
      const LaurentSeries s = poles::psi_laurent(i, m, 120, P);
      const ExtReal z = wv - m;
      CAPTURE(i);
      CAPTURE(m);
      CHECK(oracle::rel_err(s.evaluate(wv), kernel::polygamma(i, kernel::EvalPoint(z), P)) <=
            oracle::ldexp_one(32 - P, P));
    }
  }
}

TEST_CASE("Gamma' equals Gamma times psi as Laurent series") {
  for (long m = 0; m <= 4; ++m) {
    const LaurentSeries product = laurent_mul(poles::gamma_laurent(m, 8, P), poles::psi_laurent(0, m, 8, P));
    const LaurentSeries direct = poles::gamma_derivative_laurent(1, m, 6, P);
    REQUIRE(product.lowest_power() == -2);
    const long top = std::min(product.highest_power(), direct.highest_power());
    CHECK(top >= 6);
    for (long p = -2; p <= top; ++p) {
      CAPTURE(m);
      CAPTURE(p);
      CHECK(oracle::rel_err(product.coefficient(p), direct.coefficient(p)) <= oracle::ldexp_one(40 - P, P));
    }
  }
}

TEST_CASE("laurent series structure") {
  CHECK(code_of([] { LaurentSeries(0, 1, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { LaurentSeries(0, 2, {ExtReal(0, P), ExtReal(1, P)}); }) == ErrorCode::InvalidArgument);
  const LaurentSeries s(2, 1, {ExtReal(3, P), ExtReal(1, P), ExtReal(2, P)});
  const LaurentSeries d = s.differentiated();
  CHECK(d.pole_order() == 2);
  CHECK(d.coefficient(-2) == -3);
  CHECK(d.coefficient(-1).is_zero());
  CHECK(d.coefficient(0) == 2);
  CHECK(d.highest_power() == 0);
  CHECK(code_of([&] { (void)s.coefficient(5); }) == ErrorCode::InvalidArgument);
  const LaurentSeries scaled = s.scaled_variable(ExtReal(2, P));
  CHECK(scaled.coefficient(-1) == q(3, 2));
  CHECK(scaled.coefficient(1) == 4);
  CHECK(s.evaluate(ExtReal(1, P)) == 6);
}

TEST_CASE("eval_near_pole examples") {
  const ExtReal z1 = ExtReal(-1, P) + oracle::ldexp_one(-30, P);
  const auto v1 = poles::eval_near_pole({FunctionKind::Gamma, 0}, z1, P);
  CHECK(v1.pole_index == 1);
  CHECK(oracle::rel_err(v1.value, ExtReal::parse(kGammaNearMinus1, P)) <= oracle::ldexp_one(32 - P, P));
  CHECK(oracle::rel_err(v1.value, kernel::gamma(kernel::EvalPoint(z1), P)) <= oracle::ldexp_one(32 - P, P));
  // Gamma(-1 + w) = -1/w + (gamma - 1) + O(w)
  const ExtReal approx = -oracle::ldexp_one(30, P) + (const_euler_gamma(P) - 1);
  CHECK(abs(v1.value - approx) < oracle::ldexp_one(-28, P));

  const ExtReal z2 = ExtReal(-2, P) + ExtReal::parse("1e-6", P);
  const auto v2 = poles::eval_near_pole({FunctionKind::PsiDerivative, 0}, z2, P);
  CHECK(oracle::rel_err(v2.value, ExtReal::parse(kPsiNearMinus2, P)) <= oracle::ldexp_one(32 - P, P));
  CHECK(oracle::rel_err(v2.value, kernel::polygamma(0, kernel::EvalPoint(z2), P)) <=
        oracle::ldexp_one(32 - P, P));

  const ExtReal z3 = q(-1, 20);
  const auto a = poles::eval_near_pole({FunctionKind::GammaDerivative, 0}, z3, P);
  const auto b = poles::eval_near_pole({FunctionKind::Gamma, 0}, z3, P);
  CHECK(oracle::rel_err(a.value, b.value) <= oracle::ldexp_one(32 - P, P));
  CHECK(oracle::rel_err(b.value, ExtReal::parse(kGammaMinus005, P)) <= oracle::ldexp_one(32 - P, P));
}

TEST_CASE("eval_near_pole errors") {
  CHECK(code_of([] { poles::eval_near_pole({FunctionKind::Gamma, 0}, ExtReal(-3, P), P); }) ==
        ErrorCode::ExactPole);
  CHECK(code_of([] { poles::eval_near_pole({FunctionKind::Gamma, 0}, q(-5, 2), P); }) ==
        ErrorCode::OutOfRadius);
  CHECK(code_of([] { poles::eval_near_pole({FunctionKind::PsiDerivative, 2}, q(-17, 8), P); }) ==
        ErrorCode::OutOfRadius);
  try {
    poles::eval_near_pole({FunctionKind::GammaDerivative, 2}, ExtReal(-4, P), P);
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "pole of order 3 at -4");
  }
}

TEST_CASE("seam consistency between Laurent and reflection paths") {
  oracle::Uniform rng(0x5ea4);
  for (int trial = 0; trial < 40; ++trial) {
    const long m = trial % 6;
    double d = rng(1.0 / 16.0, 1.0 / 8.0);
    if (trial % 2 == 1) d = -d;
    const ExtReal z = ExtReal::from_double(d - static_cast<double>(m), P);
    const auto near = poles::eval_near_pole({FunctionKind::Gamma, 0}, z, P);
    CAPTURE(d);
    CAPTURE(m);
    CHECK(oracle::rel_err(near.value, kernel::gamma(kernel::EvalPoint(z), P)) <= oracle::ldexp_one(48 - P, P));
  }
}

TEST_CASE("near-pole Gamma derivatives agree with the kernel across the seam") {
  for (unsigned i = 1; i <= 4; ++i) {
    for (long m = 0; m <= 3; ++m) {
      const ExtReal z = q(-8 * m + 1, 8);  // exactly 1/8 above -m: kernel side of the seam
      const ExtReal zin = q(-9 * m + 1, 9);
      const auto near = poles::eval_near_pole({FunctionKind::GammaDerivative, i}, zin, P);
      const ExtReal kernel_value = kernel::gamma_derivative(i, kernel::EvalPoint(z), P);
      const LaurentSeries s = poles::gamma_derivative_laurent(i, m, 200, P);
      CAPTURE(i);
      CAPTURE(m);
      CHECK(oracle::rel_err(s.evaluate(q(1, 8)), kernel_value) <= oracle::ldexp_one(48 - P, P));
      CHECK(oracle::rel_err(near.value, s.evaluate(q(1, 9))) <= oracle::ldexp_one(40 - P, P));
    }
  }
}

TEST_CASE("adaptive_laurent grows the degree until the tail is small") {
  const LaurentSeries s =
      poles::adaptive_laurent({FunctionKind::GammaDerivative, 3}, 2, q(1, 8), P, P, 4);
  CHECK(s.pole_order() == 4);
  CHECK(s.highest_power() > 4);
  const ExtReal r = q(1, 8);
  CHECK(s.truncation_estimate(r) <= oracle::ldexp_one(-P, P) * abs(s.leading() * pow(r, -4)));
}

TEST_CASE("laurent JSON document") {
  const LaurentSeries s = poles::gamma_laurent(2, 3, P);
  const auto leading = poles::exact_leading_coefficient({FunctionKind::Gamma, 0}, 2);
  CHECK(leading.to_string() == "1/2");
  const std::string text = io::laurent_to_json(s, "gamma", leading);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["function"] == "gamma");
  CHECK(doc["pole_index"] == 2);
  CHECK(doc["pole_order"] == 1);
  CHECK(doc["precision_bits"] == P);
  CHECK(doc["leading_coefficient_exact"] == "1/2");
  REQUIRE(doc["coefficients"].size() == 5);
  CHECK(doc["coefficients"][0]["power"] == -1);
  const std::string v = doc["coefficients"][0]["value"];
  CHECK(v.rfind("0.5000", 0) == 0);
  // the value strings carry ceil(P * 0.302) significant digits
  std::size_t digits = 0;
  for (char ch : v) digits += (ch >= '0' && ch <= '9') ? 1 : 0;
  CHECK(digits == static_cast<std::size_t>(decimal_digits_for(P)) + 1);  // leading "0." plus digits
  CHECK(io::canonicalize_json(text) == text);
  CHECK(io::laurent_to_csv(s).rfind("power,value\n-1,", 0) == 0);
}

TEST_CASE("fn_jet cache is consistent under concurrency") {
  std::vector<std::string> seen(4);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < seen.size(); ++t) {
      pool.emplace_back([&, t] {
        seen[t] = poles::fn_jet(7, 30, 320).jet[19].to_decimal();
      });
    }
  }
  for (const auto& s : seen) CHECK(s == seen.front());
}
