// padic: tables, densities, brackets, claim checks and Monte Carlo estimates
// for monic polynomials over Z_p.

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "padic/cache.hpp"
#include "padic/claims.hpp"
#include "padic/class_grammar.hpp"
#include "padic/closedform.hpp"
#include "padic/io.hpp"

using namespace padic;
using io::Json;

namespace {

const char* kClassHelp =
    "Restrict to a residue class. Grammar:\n"
    "  class := \"(x^2+c)^2\" | \"(x^2-c)^2\" | \"x^n\" | \"slope-half\"\n"
    "(x^2+c)^2 and x^n name the trace-zero monics congruent to them mod p; slope-half is the\n"
    "set of trace-zero quartics whose Newton polygon is the segment (0,2)-(4,0).";

struct Outcome {
  std::string payload;
  int exit_code = 0;
};

std::string dbl(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct Region {
  int degree = 0;
  bool trace_zero = false;
  std::string cls;

  ClassSpec spec(const PrimeModulus& p) const {
    if (cls.empty()) {
      if (degree < 1) throw Error(ErrorCode::usage, "--degree is required without --class");
      return ClassSpec::all(degree, p, trace_zero);
    }
    ClassExpr e = parse_class(cls);
    if (degree != 0 && degree != e.degree())
      throw Error(ErrorCode::usage, "--degree " + std::to_string(degree) + " does not match class " + cls);
    return class_spec(e, p);
  }

  Json params() const {
    return Json{{"degree", std::to_string(degree)}, {"trace_zero", trace_zero}, {"class", cls}};
  }
};

/// Closed-form density of the region, when one is known.
std::optional<Rational> known_density(const ClassSpec& spec) {
  const PrimeModulus& p = spec.prime();
  const int n = spec.degree();
  try {
    switch (spec.restriction()) {
      case Restriction::all:
      case Restriction::set_s_complement_quotient:
        if (n == 4) return density_quartic(p);
        if (is_prime(n) && n != p.value()) return density_prime_degree(n, p);
        return std::nullopt;
      case Restriction::slope_half_set: return density_slope_half(p);
      case Restriction::congruent_mod_p: {
        const Int pv = p.value();
        const FFPoly& t = *spec.target();
        if (n != 4) return std::nullopt;
        Int c = mulmod(t[2], inverse<Int>(2, pv), pv);
        FFPoly q(pv, {c, 0, 1});
        if (c != 0 && t == q * q && !detail::is_qr_mod_p(reduce(-c, pv), pv)) return density_double_quadratic(p);
        return std::nullopt;
      }
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

Json closed_form_json(const std::optional<Rational>& v, const std::function<bool(const Rational&)>& contained) {
  if (!v) return nullptr;
  return Json{{"value", io::rational_json(*v)}, {"decimal", to_decimal(*v, 15)}, {"contained", contained(*v)}};
}

// ---- commands ----

struct TableArgs {
  Int p = 0;
  Region region;
  int kmax = 0;
  bool quotient = false;
  bool per_parent = false;
  std::string format = "csv";
  unsigned workers = 1;
  Int max_work = 50'000'000;
};

Json table_params(const TableArgs& a) {
  Json j{{"p", std::to_string(a.p)}};
  j.update(a.region.params());
  j["kmax"] = std::to_string(a.kmax);
  j["quotient_by_S"] = a.quotient;
  j["per_parent"] = a.per_parent || !a.region.cls.empty();
  j["max_work"] = std::to_string(a.max_work);
  j["format"] = a.format;
  return j;
}

Outcome cmd_table(const TableArgs& a, const Json& params) {
  PrimeModulus p(a.p);
  ClassSpec spec = a.region.spec(p);
  LiftOptions opt;
  opt.quotient_by_S = a.quotient;
  opt.workers = a.workers;
  opt.max_work = a.max_work;
  LevelTable t = lift_table(spec, a.kmax, opt);
  Outcome o;
  if (a.format == "csv") {
    o.payload = io::render_csv(t, a.per_parent || !a.region.cls.empty());
  } else {
    o.payload = io::envelope("table", params, Json{{"class", spec.describe()}, {"table", io::to_json(t)}}).dump(2) + "\n";
  }
  if (t.truncated) o.exit_code = static_cast<int>(ErrorCode::resource_limit);
  return o;
}

struct DensityArgs {
  Int p = 0;
  int prime_degree = 0;
  bool quartic = false, double_quadratic = false, slope_half = false;
  std::string format = "json";
};

Json density_params(const DensityArgs& a) {
  std::string kind = a.prime_degree ? "prime_degree"
                     : a.quartic    ? "quartic"
                     : a.double_quadratic ? "double_quadratic"
                                          : "slope_half";
  return Json{{"p", std::to_string(a.p)}, {"kind", kind}, {"r", std::to_string(a.prime_degree)}, {"format", a.format}};
}

Outcome cmd_density(const DensityArgs& a, const Json& params) {
  int kinds = (a.prime_degree != 0) + a.quartic + a.double_quadratic + a.slope_half;
  if (kinds != 1)
    throw Error(ErrorCode::usage, "choose exactly one of --prime-degree, --quartic, --double-quadratic, --slope-half");
  if (a.p == 2)
    throw Error(ErrorCode::hypothesis, "p = 2 is excluded: the formulas assume an odd prime (open case)");
  PrimeModulus p(a.p);
  Rational v;
  int n = 0;
  if (a.prime_degree) {
    v = density_prime_degree(a.prime_degree, p);
    n = a.prime_degree;
  } else if (a.quartic) {
    v = density_quartic(p);
    n = 4;
  } else if (a.double_quadratic) {
    v = density_double_quadratic(p);
  } else {
    v = density_slope_half(p);
  }
  const std::string kind = params.at("kind").get<std::string>();
  Outcome o;
  if (a.format == "csv") {
    o.payload = "kind,p,r,numerator,denominator,decimal\n" + kind + "," + std::to_string(a.p) + "," +
                (kind == "prime_degree" ? std::to_string(a.prime_degree) : "") + "," + boost::multiprecision::numerator(v).str() + "," +
                boost::multiprecision::denominator(v).str() + "," + to_decimal(v, 15) + "\n";
    return o;
  }
  Json result{{"kind", kind}, {"value", io::rational_json(v)}, {"decimal", to_decimal(v, 15)}};
  if (n) {
    Rational res = approx_residual(n, v);
    // diagnostic |I - 1/n| <= p^(-n/2), compared as squares
    bool within = res * res <= rpow(a.p, -n);
    result["residual"] = Json{{"value", io::rational_json(res)}, {"within_p_minus_n_over_2", within}};
  }
  o.payload = io::envelope("density", params, result).dump(2) + "\n";
  return o;
}

struct BracketArgs {
  Int p = 0;
  Region region{0, true, ""};
  int kmax = 0;
  bool quotient = false;
  std::string format = "json";
  unsigned workers = 1;
  Int max_work = 50'000'000;
};

Json bracket_params(const BracketArgs& a) {
  Json j{{"p", std::to_string(a.p)}};
  j.update(a.region.params());
  j["kmax"] = std::to_string(a.kmax);
  j["quotient_by_S"] = a.quotient;
  j["max_work"] = std::to_string(a.max_work);
  j["format"] = a.format;
  return j;
}

Outcome cmd_bracket(const BracketArgs& a, const Json& params) {
  PrimeModulus p(a.p);
  ClassSpec spec = a.region.spec(p);
  LiftOptions opt;
  opt.workers = a.workers;
  opt.max_work = a.max_work;
  DensityBracket b = density_bracket(spec, a.kmax, a.quotient, opt);
  Outcome o;
  if (a.format == "csv") {
    o.payload = io::render_csv(b);
  } else {
    auto cf = known_density(spec);
    o.payload = io::envelope("bracket", params,
                             Json{{"class", spec.describe()},
                                  {"bracket", io::to_json(b)},
                                  {"closed_form", closed_form_json(cf, [&](const Rational& v) { return b.contains(v); })}})
                    .dump(2) +
                "\n";
  }
  if (b.truncated) o.exit_code = static_cast<int>(ErrorCode::resource_limit);
  return o;
}

struct ClaimsArgs {
  std::vector<Int> primes{3, 5};
  bool all = false;
  std::vector<std::string> claims;
  std::string format = "json";
  unsigned workers = 1;
};

Json claims_params(const ClaimsArgs& a) {
  Json ps = Json::array();
  for (Int p : a.primes) ps.push_back(std::to_string(p));
  Json cs = Json::array();
  for (const auto& c : a.claims) cs.push_back(c);
  return Json{{"primes", ps}, {"claims", cs}, {"format", a.format}};
}

Outcome cmd_verify_claims(const ClaimsArgs& a, const Json& params) {
  ClaimGrid grid;
  grid.primes = a.primes;
  for (Int p : a.primes)
    if (p != 3 && p != 5) throw Error(ErrorCode::usage, "claim grids are defined for p in {3, 5}");
  if (!a.all)
    for (const auto& c : a.claims) {
      bool known = false;
      for (const char* id : kClaimIds) known |= c == id;
      if (!known) throw Error(ErrorCode::usage, "unknown claim id: " + c);
      grid.only.insert(c);
    }
  auto reports = verify_all(grid, a.workers);
  bool ok = true;
  for (const auto& r : reports) ok &= r.passed();
  Outcome o;
  if (a.format == "csv") {
    o.payload = io::render_csv(reports);
  } else {
    Json rs = Json::array();
    for (const auto& r : reports) rs.push_back(io::to_json(r));
    o.payload = io::envelope("verify-claims", params, Json{{"passed", ok}, {"reports", rs}}).dump(2) + "\n";
  }
  if (!ok) o.exit_code = static_cast<int>(ErrorCode::counterexample);
  return o;
}

struct McArgs {
  Int p = 0;
  Region region{0, true, ""};
  Int samples = 100000;
  std::uint64_t seed = 1;
  int precision = 8;
  std::string format = "json";
  unsigned workers = 1;
};

Json mc_params(const McArgs& a) {
  Json j{{"p", std::to_string(a.p)}};
  j.update(a.region.params());
  j["samples"] = std::to_string(a.samples);
  j["seed"] = std::to_string(a.seed);
  j["precision"] = std::to_string(a.precision);
  j["format"] = a.format;
  return j;
}

Outcome cmd_mc(const McArgs& a, const Json& params) {
  PrimeModulus p(a.p);
  ClassSpec spec = a.region.spec(p);
  McEstimate e = mc_estimate(spec, a.precision, a.samples, a.seed, a.workers);
  auto cf = known_density(spec);
  Outcome o;
  auto inside = [&](const Rational& v) {
    double x = to_double(v);
    return e.ci_low <= x && x <= e.ci_high;
  };
  if (a.format == "csv") {
    o.payload = "samples,decided,irreducible,estimate,ci_low,ci_high,undecided_fraction\n" + std::to_string(e.samples) +
                "," + std::to_string(e.decided) + "," + std::to_string(e.irreducible) + "," + dbl(e.point) + "," +
                dbl(e.ci_low) + "," + dbl(e.ci_high) + "," + dbl(e.undecided_fraction) + "\n";
    return o;
  }
  Json result{{"class", spec.describe()},
              {"samples", std::to_string(e.samples)},
              {"decided", std::to_string(e.decided)},
              {"irreducible", std::to_string(e.irreducible)},
              {"estimate", dbl(e.point)},
              {"ci99", Json::array({dbl(e.ci_low), dbl(e.ci_high)})},
              {"undecided_fraction", dbl(e.undecided_fraction)},
              {"closed_form", closed_form_json(cf, inside)}};
  o.payload = io::envelope("mc", params, result).dump(2) + "\n";
  return o;
}

// ---- driver ----

int run_cached(const std::string& command, const Json& params, bool no_cache,
               const std::function<Outcome(const Json&)>& compute) {
  std::optional<cache::Store> store;
  std::string key;
  if (!no_cache) {
    store.emplace(cache::default_dir());
    key = cache::key(command, params);
    if (auto hit = store->get(key)) {
      std::cout << *hit;
      return 0;
    }
  }
  Outcome o = compute(params);
  std::cout << o.payload;
  if (store && o.exit_code == 0) {
    try {
      store->put(key, command, params, o.payload);
    } catch (const std::exception& e) {
      std::cerr << "warning: cache write failed: " << e.what() << "\n";
    }
  }
  return o.exit_code;
}

void report_error(ErrorCode code, const std::string& msg) {
  Json j{{"error", Json{{"code", error_code_name(code)}, {"exit_code", static_cast<int>(code)}, {"message", msg}}}};
  std::cerr << j.dump() << "\n";
}

void add_format(CLI::App* sub, std::string& fmt) {
  sub->add_option("--format", fmt, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducibility of monic polynomials over the p-adic integers: lifting tables, exact densities,\n"
               "density brackets, claim verification and Monte Carlo estimates."};
  app.require_subcommand(1);
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "Bypass the result cache (location: $PADIC_CACHE_DIR)");
  app.footer(std::string("\nExit codes: 0 ok, 1 usage, 2 hypothesis violation, 3 resource limit, 4 counterexample.\n\n") +
             kClassHelp);

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Per-level counts of irreducible, ambiguous and Hensel classes");
  table->add_option("--p", ta.p, "Odd prime")->required();
  table->add_option("--degree", ta.region.degree, "Degree n");
  table->add_flag("--trace-zero,!--no-trace-zero", ta.region.trace_zero, "Only x^(n-1) coefficient 0 (default off)");
  table->add_option("--class", ta.region.cls, kClassHelp);
  table->add_option("--kmax", ta.kmax, "Deepest level")->required();
  table->add_flag("--quotient-by-s", ta.quotient, "Drop classes in the self-similar set S");
  table->add_flag("--per-parent", ta.per_parent, "Add per-parent columns (implied by --class)");
  table->add_option("--workers", ta.workers, "Threads");
  table->add_option("--max-work", ta.max_work, "Classification budget before the table is truncated");
  add_format(table, ta.format);

  DensityArgs da;
  auto* density = app.add_subcommand("density", "Exact closed-form irreducibility density");
  density->add_option("--p", da.p, "Odd prime")->required();
  density->add_option("--prime-degree", da.prime_degree, "Prime degree r (r != p)");
  density->add_flag("--quartic", da.quartic, "Degree 4");
  density->add_flag("--double-quadratic", da.double_quadratic, "Quartics congruent to (x^2+z)^2, x^2+z irreducible");
  density->add_flag("--slope-half", da.slope_half, "Quartics with Newton polygon (0,2)-(4,0)");
  add_format(density, da.format);

  BracketArgs ba;
  auto* bracket = app.add_subcommand("bracket", "Exact density bracket from the lifting table");
  bracket->add_option("--p", ba.p, "Odd prime")->required();
  bracket->add_option("--degree", ba.region.degree, "Degree n");
  bracket->add_flag("--trace-zero,!--no-trace-zero", ba.region.trace_zero, "Trace-zero monics (default on)");
  bracket->add_option("--class", ba.region.cls, kClassHelp);
  bracket->add_option("--kmax", ba.kmax, "Deepest level")->required();
  bracket->add_flag("--quotient-by-s", ba.quotient, "Normalize by 1 - measure(S) and drop S");
  bracket->add_option("--workers", ba.workers, "Threads");
  bracket->add_option("--max-work", ba.max_work, "Classification budget");
  add_format(bracket, ba.format);

  ClaimsArgs ca;
  auto* claims = app.add_subcommand("verify-claims", "Exhaustive checks of the structural claims");
  claims->add_option("--p", ca.primes, "Primes (3 and/or 5)");
  claims->add_flag("--all", ca.all, "Run every check (default)");
  claims->add_option("--claim", ca.claims,
                     "claim1 claim2 claim3 claim4 claim4_weak claim5 claim6 case_counts table2_pattern");
  claims->add_option("--workers", ca.workers, "Threads");
  add_format(claims, ca.format);

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate with a 99% confidence interval");
  mc->add_option("--p", ma.p, "Odd prime")->required();
  mc->add_option("--degree", ma.region.degree, "Degree n");
  mc->add_flag("--trace-zero,!--no-trace-zero", ma.region.trace_zero, "Trace-zero monics (default on)");
  mc->add_option("--class", ma.region.cls, kClassHelp);
  mc->add_option("--samples", ma.samples, "Sample count");
  mc->add_option("--seed", ma.seed, "Seed");
  mc->add_option("--precision", ma.precision, "Sampling level K (coefficients mod p^K)");
  mc->add_option("--workers", ma.workers, "Threads");
  add_format(mc, ma.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error(ErrorCode::usage, e.what());
    return static_cast<int>(ErrorCode::usage);
  }

  try {
    if (*table) {
      if (!ta.region.cls.empty()) ta.region.trace_zero = true;
      return run_cached("table", table_params(ta), no_cache, [&](const Json& j) { return cmd_table(ta, j); });
    }
    if (*density) return run_cached("density", density_params(da), no_cache, [&](const Json& j) { return cmd_density(da, j); });
    if (*bracket) {
      if (!ba.region.cls.empty()) ba.region.trace_zero = true;
      return run_cached("bracket", bracket_params(ba), no_cache, [&](const Json& j) { return cmd_bracket(ba, j); });
    }
    if (*claims) return run_cached("verify-claims", claims_params(ca), no_cache, [&](const Json& j) { return cmd_verify_claims(ca, j); });
    if (*mc) {
      if (!ma.region.cls.empty()) ma.region.trace_zero = true;
      return run_cached("mc", mc_params(ma), no_cache, [&](const Json& j) { return cmd_mc(ma, j); });
    }
  } catch (const Error& e) {
    report_error(e.code(), e.what());
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    report_error(ErrorCode::usage, e.what());
    return static_cast<int>(ErrorCode::usage);
  }
  return 0;
}
