// gammalim: evaluate Gamma/polygamma near their poles, dump Laurent
// expansions, and check the closed-form ratio limits numerically.
//
// Exit codes: 0 ok, 1 verification failure, 2 pole argument, 3 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gammalim/error.hpp"
#include "gammalim/exact_rational.hpp"
#include "gammalim/ext_real.hpp"
#include "gammalim/kernel.hpp"
#include "gammalim/limits.hpp"
#include "gammalim/poles.hpp"
#include "gammalim/serialize.hpp"

namespace {

using namespace gammalim;
using nlohmann::json;

enum Exit { kOk = 0, kVerifyFailed = 1, kPole = 2, kUsage = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  long precision_bits = kDefaultPrecision;
  std::size_t degree = poles::kDefaultJetDegree;
  std::string out;
  std::string format = "text";
  std::string tolerance = "1e-15";
  std::string h0 = "1/64";
  std::string ratio = "1/2";
  unsigned steps = 24;
  std::string side = "both";
};

bool looks_rational(const std::string& text) {
  static const std::regex pattern(R"([+-]?[0-9]+(/[+-]?[0-9]+)?)");
  return std::regex_match(text, pattern);
}

// Rationals are kept exact so that "-3" really is a pole and "-2+1/64"
// style inputs have the intended pole distance.
ExtReal parse_number(const std::string& text, long bits) {
  try {
    if (looks_rational(text)) return ExtReal(ExactRational::parse(text), bits);
    return ExtReal::parse(text, bits);
  } catch (const Error&) {
    throw UsageError("cannot parse number '" + text + "'");
  }
}

ExactRational parse_rational(const std::string& text, const std::string& what) {
  try {
    if (looks_rational(text)) return ExactRational::parse(text);
  } catch (const Error&) {
  }
  throw UsageError(what + " must be an exact rational such as 1/64, got '" + text + "'");
}

limits::IndexRange parse_range(const std::string& text, const std::string& what) {
  static const std::regex pattern(R"(([0-9]+)(\.\.([0-9]+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw UsageError(what + ": expected a range a..b, got '" + text + "'");
  limits::IndexRange r;
  r.lo = std::stol(m[1].str());
  r.hi = m[3].matched ? std::stol(m[3].str()) : r.lo;
  if (r.lo > r.hi) throw UsageError(what + ": empty range '" + text + "'");
  return r;
}

limits::Side parse_side(const std::string& text) {
  if (text == "above") return limits::Side::Above;
  if (text == "below") return limits::Side::Below;
  return limits::Side::Both;
}

limits::Schedule schedule_from(const Config& cfg) {
  limits::Schedule s;
  s.h0 = parse_rational(cfg.h0, "--h0");
  s.ratio = parse_rational(cfg.ratio, "--ratio");
  s.steps = cfg.steps;
  s.side = parse_side(cfg.side);
  if (!(s.h0 > ExactRational(0))) throw UsageError("--h0 must be positive");
  if (!(s.ratio > ExactRational(0) && s.ratio < ExactRational(1))) throw UsageError("--ratio must lie in (0, 1)");
  if (s.steps < 4) throw UsageError("--steps must be at least 4");
  return s;
}

ExtReal tolerance_from(const Config& cfg) {
  const ExtReal t = parse_number(cfg.tolerance, 128);
  if (t.sign() <= 0) throw UsageError("--tol must be positive");
  return t;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + cfg.out + "' for writing");
  file << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string decimal(const ExtReal& x, long bits) { return x.to_decimal(decimal_digits_for(bits)); }

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string function = "gamma";
  unsigned i = 0;
  std::string x;
};

int cmd_eval(const Config& cfg, const EvalArgs& a) {
  const bool gamma_family = a.function == "gamma";
  const long bits = cfg.precision_bits;
  const ExtReal x = parse_number(a.x, bits);
  const kernel::EvalPoint point(x);
  const poles::PoleFunction f{gamma_family ? (a.i == 0 ? poles::FunctionKind::Gamma : poles::FunctionKind::GammaDerivative)
                                           : poles::FunctionKind::PsiDerivative,
                              a.i};
  if (point.is_pole()) {
    throw Error(ErrorCode::PoleArgument, "pole of order " + std::to_string(f.pole_order()) + " at " +
                                             std::to_string(-point.nearest_pole()));
  }

  ExtReal value(bits);
  kernel::EvalPath path;
  if (point.x().sign() <= 0 && point.pole_distance().to_double() < poles::kWorkingRadius) {
    value = poles::eval_near_pole(f, x, bits, cfg.degree).value;
    path = kernel::EvalPath::Laurent;
  } else {
    if (!gamma_family) {
      value = kernel::polygamma(a.i, point, bits);
    } else if (a.i == 0) {
      value = kernel::gamma(point, bits);
    } else {
      value = kernel::gamma_derivative(a.i, point, bits);
    }
    path = kernel::path_for(point, gamma_family);
  }

  const std::string path_name(kernel::to_string(path));
  std::string text;
  if (cfg.format == "json") {
    text = dump(json{{"function", gamma_family ? "gamma" : "polygamma"},
                     {"i", a.i},
                     {"x", a.x},
                     {"precision_bits", bits},
                     {"value", decimal(value, bits)},
                     {"path", path_name}});
  } else if (cfg.format == "csv") {
    text = "function,i,x,value,path\n" + std::string(gamma_family ? "gamma" : "polygamma") + "," +
           std::to_string(a.i) + "," + a.x + "," + decimal(value, bits) + "," + path_name + "\n";
  } else {
    text = decimal(value, bits) + "\npath: " + path_name + "\n";
  }
  emit(cfg, text);
  return kOk;
}

// --- laurent ----------------------------------------------------------------

struct LaurentArgs {
  std::string function = "gamma";
  unsigned i = 0;
  long pole = 0;
  std::optional<std::size_t> order;
};

int cmd_laurent(const Config& cfg, const LaurentArgs& a) {
  if (a.pole < 0) throw UsageError("--pole must be a non-negative integer");
  const bool gamma_family = a.function == "gamma";
  const poles::PoleFunction f{gamma_family ? (a.i == 0 ? poles::FunctionKind::Gamma : poles::FunctionKind::GammaDerivative)
                                           : poles::FunctionKind::PsiDerivative,
                              a.i};
  const std::size_t degree = a.order.value_or(cfg.degree);
  const LaurentSeries series = poles::laurent_for(f, a.pole, degree, cfg.precision_bits);
  const ExactRational leading = poles::exact_leading_coefficient(f, a.pole);
  std::string name = gamma_family ? "gamma" : "psi";
  if (a.i > 0 || !gamma_family) name += "_deriv(" + std::to_string(a.i) + ")";

  std::string text;
  if (cfg.format == "json") {
    text = io::laurent_to_json(series, name, leading);
  } else if (cfg.format == "csv") {
    text = io::laurent_to_csv(series);
  } else {
    std::ostringstream out;
    out << name << " about z = " << -a.pole << ", pole order " << series.pole_order() << "\n";
    out << "leading a[" << series.lowest_power() << "] = " << leading.to_string() << " (exact)\n";
    for (long p = series.lowest_power(); p <= series.highest_power(); ++p) {
      out << "a[" << p << "] = " << decimal(series.coefficient(p), cfg.precision_bits) << "\n";
    }
    text = out.str();
  }
  emit(cfg, text);
  return kOk;
}

// --- limit ------------------------------------------------------------------

struct LimitArgs {
  std::string family = "gamma";
  long n = 1;
  long q = 1;
  long i = 0;
  long k = 0;
  bool numeric = false;
};

limits::Family parse_family(const std::string& text) {
  return text == "psi" ? limits::Family::PsiDerivative : limits::Family::GammaDerivative;
}

int cmd_limit(const Config& cfg, const LimitArgs& a) {
  const limits::RatioLimitSpec spec{parse_family(a.family), a.n, a.q, a.i, a.k};
  const long bits = cfg.precision_bits;
  const limits::ClosedFormValue closed = limits::closed_form(spec);
  std::optional<limits::ConvergenceReport> report;
  bool passed = true;
  if (a.numeric) {
    const limits::Schedule schedule = schedule_from(cfg);
    const ExtReal tol = tolerance_from(cfg);
    report = limits::numeric_ratio_limit(spec, schedule, bits);
    passed = report->passes(tol, limits::GridOptions{}.two_sided_tolerance);
  }

  std::string text;
  if (cfg.format == "json") {
    json doc{{"spec", {{"family", std::string(limits::to_string(spec.family))},
                       {"n", spec.n}, {"q", spec.q}, {"i", spec.i}, {"k", spec.k}}},
             {"closed_form", {{"sign", closed.sign},
                              {"num", closed.magnitude.numerator().get_str()},
                              {"den", closed.magnitude.denominator().get_str()}}},
             {"exact", closed.to_string()},
             {"value", decimal(closed.to_ext(bits), bits)},
             {"precision_bits", bits}};
    if (report) doc["report"] = json::parse(io::report_to_json(*report, passed));
    text = dump(doc);
  } else if (cfg.format == "csv") {
    text = report ? io::report_to_csv(*report)
                  : "family,n,q,i,k,exact,value\n" + std::string(limits::to_string(spec.family)) + "," +
                        std::to_string(spec.n) + "," + std::to_string(spec.q) + "," + std::to_string(spec.i) +
                        "," + std::to_string(spec.k) + "," + closed.to_string() + "," +
                        decimal(closed.to_ext(bits), bits) + "\n";
  } else {
    std::ostringstream out;
    out << closed.to_string() << "\n" << decimal(closed.to_ext(bits), bits) << "\n";
    if (report) {
      out << "numeric:        " << decimal(report->extrapolated, bits) << "\n"
          << "relative error: " << report->relative_error.to_decimal(6) << "\n"
          << "error estimate: " << report->error_estimate.to_decimal(6) << "\n";
      if (report->observed_order) out << "observed order: " << report->observed_order->to_decimal(6) << "\n";
      if (report->two_sided_discrepancy) {
        out << "two-sided gap:  " << report->two_sided_discrepancy->to_decimal(6) << "\n";
      }
      out << "samples:        " << report->samples.size() << "\n"
          << "status:         " << limits::to_string(report->status) << (passed ? " (pass)" : " (FAIL)") << "\n";
    }
    text = out.str();
  }
  emit(cfg, text);
  return passed ? kOk : kVerifyFailed;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string n = "1..4";
  std::string q = "1..4";
  std::string i = "0..4";
  std::string k = "0..3";
  std::string family = "both";
  unsigned threads = 1;
};

std::string summary_table(const limits::GridResult& grid) {
  std::ostringstream out;
  out << "family  n  q  i  k  status                  rel_error     result\n";
  for (std::size_t j = 0; j < grid.reports.size(); ++j) {
    const auto& r = grid.reports[j];
    std::string rel = "-";
    if (r.status == limits::ReportStatus::Ok || r.status == limits::ReportStatus::PrecisionExhausted) {
      rel = r.relative_error.to_decimal(3);
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %2ld %2ld %2ld %2ld  %-22s  %-12s  %s\n",
                  std::string(limits::to_string(r.spec.family)).c_str(), r.spec.n, r.spec.q, r.spec.i, r.spec.k,
                  std::string(limits::to_string(r.status)).c_str(), rel.c_str(), grid.passed[j] ? "pass" : "FAIL");
    out << line;
  }
  out << "total " << grid.reports.size() << ", passed " << grid.pass_count << ", failed " << grid.fail_count()
      << "\n";
  return out.str();
}

int cmd_verify(const Config& cfg, const VerifyArgs& a) {
  limits::GridRanges ranges;
  ranges.n = parse_range(a.n, "--n");
  ranges.q = parse_range(a.q, "--q");
  ranges.i = parse_range(a.i, "--i");
  ranges.k = parse_range(a.k, "--k");
  if (ranges.n.lo < 1 || ranges.q.lo < 1) throw UsageError("--n and --q ranges must start at 1 or above");
  if (a.family == "gamma") {
    ranges.families = {limits::Family::GammaDerivative};
  } else if (a.family == "psi") {
    ranges.families = {limits::Family::PsiDerivative};
  } else {
    ranges.families = {limits::Family::GammaDerivative, limits::Family::PsiDerivative};
  }
  limits::GridOptions options;
  options.schedule = schedule_from(cfg);
  options.precision_bits = cfg.precision_bits;
  options.tolerance = tolerance_from(cfg);
  options.threads = a.threads;

  const limits::GridResult grid = limits::verify_grid(ranges, options);
  const std::string table = summary_table(grid);
  std::string document;
  if (cfg.format == "json") {
    document = io::grid_to_json(grid, options);
  } else if (cfg.format == "csv") {
    document = io::grid_to_csv(grid);
  } else {
    document = table;
  }
  if (cfg.out.empty()) {
    std::cout << document;
  } else {
    emit(cfg, document);
    std::cout << table;
  }
  return grid.fail_count() == 0 ? kOk : kVerifyFailed;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::PoleArgument:
    case ErrorCode::ExactPole:
      return kPole;
    case ErrorCode::InvalidArgument:
    case ErrorCode::ScheduleOutOfRadius:
      return kUsage;
    default:
      return kVerifyFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma and polygamma near their poles, and the ratio limits at z = -k"};
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_option("--prec", cfg.precision_bits, "working precision in bits (>= 64)")
      ->envname("GAMMALIM_PREC")
      ->check(CLI::Range(kMinPrecision, 1L << 20));
  app.add_option("--degree", cfg.degree, "initial Laurent/jet degree");
  app.add_option("--out", cfg.out, "write the result to this file");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol", cfg.tolerance, "relative tolerance for numeric checks");
  app.add_option("--h0", cfg.h0, "first sample offset, exact rational");
  app.add_option("--ratio", cfg.ratio, "geometric ratio of the sample offsets");
  app.add_option("--steps", cfg.steps, "samples per side");
  app.add_option("--side", cfg.side, "approach side")->check(CLI::IsMember({"above", "below", "both"}));

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate Gamma^(i) or psi^(i) at a point");
  eval->add_option("--function", eval_args.function)->check(CLI::IsMember({"gamma", "polygamma"}));
  eval->add_option("--i", eval_args.i, "derivative order");
  eval->add_option("--x", eval_args.x, "argument (decimal or rational)")->required();

  LaurentArgs laurent_args;
  auto* laurent = app.add_subcommand("laurent", "Laurent expansion about z = -m");
  laurent->add_option("--function", laurent_args.function)->check(CLI::IsMember({"gamma", "psi"}));
  laurent->add_option("--i", laurent_args.i, "derivative order");
  laurent->add_option("--pole", laurent_args.pole, "pole index m")->required();
  laurent->add_option("--order", laurent_args.order, "highest retained power");

  LimitArgs limit_args;
  auto* limit = app.add_subcommand("limit", "closed-form ratio limit");
  limit->add_option("--family", limit_args.family)->check(CLI::IsMember({"gamma", "psi"}));
  limit->add_option("--n", limit_args.n)->required();
  limit->add_option("--q", limit_args.q)->required();
  limit->add_option("--i", limit_args.i);
  limit->add_option("--k", limit_args.k);
  limit->add_flag("--numeric", limit_args.numeric, "also estimate the limit numerically");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check a grid of limits against their closed forms");
  verify->add_option("--n", verify_args.n, "range a..b");
  verify->add_option("--q", verify_args.q, "range a..b");
  verify->add_option("--i", verify_args.i, "range a..b");
  verify->add_option("--k", verify_args.k, "range a..b");
  verify->add_option("--family", verify_args.family)->check(CLI::IsMember({"gamma", "psi", "both"}));
  verify->add_option("--threads", verify_args.threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*eval) return cmd_eval(cfg, eval_args);
    if (*laurent) return cmd_laurent(cfg, laurent_args);
    if (*limit) return cmd_limit(cfg, limit_args);
    if (*verify) return cmd_verify(cfg, verify_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}
