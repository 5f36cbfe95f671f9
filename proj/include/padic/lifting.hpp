#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "padic/classify.hpp"
#include "padic/rational.hpp"

namespace padic {

enum class Restriction { all, congruent_mod_p, slope_half_set, set_s_complement_quotient };

inline const char* restriction_name(Restriction r) {
  switch (r) {
    case Restriction::all: return "all";
    case Restriction::congruent_mod_p: return "congruent_mod_p";
    case Restriction::slope_half_set: return "slope_half_set";
    case Restriction::set_s_complement_quotient: return "set_s_complement_quotient";
  }
  return "?";
}

/// A region of monic degree-n polynomials over Z_p.
class ClassSpec {
 public:
  static ClassSpec all(int n, PrimeModulus p, bool trace_zero = true) {
    return ClassSpec(n, p, trace_zero, Restriction::all, std::nullopt);
  }
  static ClassSpec congruent(PrimeModulus p, const FFPoly& target, bool trace_zero = true) {
    return ClassSpec(target.degree(), p, trace_zero, Restriction::congruent_mod_p, target);
  }
  static ClassSpec slope_half(PrimeModulus p) {
    return ClassSpec(4, p, true, Restriction::slope_half_set, std::nullopt);
  }
  static ClassSpec s_complement(int n, PrimeModulus p, bool trace_zero = true) {
    return ClassSpec(n, p, trace_zero, Restriction::set_s_complement_quotient, std::nullopt);
  }

  int degree() const { return n_; }
  const PrimeModulus& prime() const { return p_; }
  bool trace_zero() const { return trace_zero_; }
  Restriction restriction() const { return restriction_; }
  const std::optional<FFPoly>& target() const { return target_; }

  int base_level() const { return restriction_ == Restriction::slope_half_set ? 3 : 1; }
  int free_coefficients() const { return trace_zero_ ? n_ - 1 : n_; }
  bool excludes_S() const { return restriction_ == Restriction::set_s_complement_quotient; }

  /// Haar measure of one residue class at the given level.
  Rational class_measure(int level) const {
    return rpow(p_.value(), -static_cast<long long>(free_coefficients()) * level);
  }

  /// Measure of the whole region in coefficient space.
  Rational measure() const {
    const Int p = p_.value();
    switch (restriction_) {
      case Restriction::all:
      case Restriction::set_s_complement_quotient: return 1;
      case Restriction::congruent_mod_p: return class_measure(1);
      case Restriction::slope_half_set: return Rational(p - 1) * rpow(p, -6);
    }
    return 0;
  }

  /// Measure of the part of the region with v(c_i) >= n - i for all i.
  Rational measure_of_S() const {
    const Int p = p_.value();
    long long e = 0;
    for (int i = 0; i < n_; ++i)
      if (!(trace_zero_ && i == n_ - 1)) e += n_ - i;
    switch (restriction_) {
      case Restriction::all:
      case Restriction::set_s_complement_quotient: return rpow(p, -e);
      case Restriction::congruent_mod_p: {
        for (int i = 0; i < n_; ++i)
          if ((*target_)[i] != 0) return 0;
        return rpow(p, -e);
      }
      case Restriction::slope_half_set: return 0;
    }
    return 0;
  }

  /// The classes at base_level() that tile the region.
  std::vector<ResiduePoly> root_classes() const {
    const Int p = p_.value();
    const int n = n_;
    std::vector<ResiduePoly> out;
    if (restriction_ == Restriction::congruent_mod_p) {
      std::vector<Int> c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (*target_)[i];
      out.emplace_back(p_, 1, c, trace_zero_);
      return out;
    }
    if (restriction_ == Restriction::slope_half_set) {
      // c0 = p^2 u (u unit mod p), c1 in p^2 Z, c2 in p Z, all mod p^3
      for (Int u = 1; u < p; ++u)
        for (Int t = 0; t < p; ++t)
          for (Int s = 0; s < p * p; ++s) out.emplace_back(p_, 3, std::vector<Int>{p * p * u, p * p * t, p * s, 0}, true);
      return out;
    }
    const int free = free_coefficients();
    Int total = p_.pow(free);
    for (Int code = 0; code < total; ++code) {
      std::vector<Int> c(static_cast<std::size_t>(n), 0);
      Int x = code;
      for (int i = 0; i < free; ++i) {
        c[static_cast<std::size_t>(i)] = x % p;
        x /= p;
      }
      out.emplace_back(p_, 1, c, trace_zero_);
    }
    return out;
  }

  std::string describe() const {
    std::string s = "degree " + std::to_string(n_) + ", p = " + std::to_string(p_.value()) + ", " +
                    restriction_name(restriction_);
    if (target_) s += " (" + target_->to_string() + ")";
    if (trace_zero_) s += ", trace zero";
    return s;
  }

 private:
  ClassSpec(int n, PrimeModulus p, bool trace_zero, Restriction r, std::optional<FFPoly> target)
      : n_(n), p_(p), trace_zero_(trace_zero), restriction_(r), target_(std::move(target)) {
    if (n_ < 1) throw Error(ErrorCode::usage, "degree must be >= 1");
    if (r == Restriction::slope_half_set && n_ != 4)
      throw Error(ErrorCode::usage, "slope-half set is only defined for quartics");
    if (r == Restriction::congruent_mod_p) {
      if (!target_ || !target_->is_monic() || target_->prime() != p.value())
        throw Error(ErrorCode::usage, "congruence target must be a monic polynomial mod p");
      if (trace_zero_ && (*target_)[n_ - 1] != 0)
        throw Error(ErrorCode::usage, "congruence target has a nonzero x^(n-1) term");
    }
  }

  int n_;
  PrimeModulus p_;
  bool trace_zero_;
  Restriction restriction_;
  std::optional<FFPoly> target_;
};

struct LevelRow {
  int level = 0;
  Int irreducible = 0;
  Int undecided = 0;
  Int hensel = 0;
  Int parents = 0;   // undecided classes one level up (1 at the base level)
  Int excluded = 0;  // classes dropped as members of S
  std::map<Reason, Int> by_reason;

  Rational per_parent(Int count) const { return Rational(BigInt(count), BigInt(parents)); }

  friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

struct LevelTable {
  int base_level = 1;
  Int lifts_per_parent = 0;
  std::vector<LevelRow> rows;
  bool truncated = false;

  friend bool operator==(const LevelTable&, const LevelTable&) = default;
};

struct LiftOptions {
  Int max_work = 50'000'000;  // classifications
  bool quotient_by_S = false;
  unsigned workers = 1;
};

namespace detail {

struct Pending {
  ResiduePoly f;
  std::size_t root;  // index of the shared mod-p factorization
};

struct ChunkResult {
  LevelRow row;
  std::vector<Pending> undecided;
};

inline void classify_chunk(const std::vector<Pending>& items, std::size_t lo, std::size_t hi,
                           const std::vector<FactorMultiset>& modp, bool drop_S, ChunkResult& out) {
  for (std::size_t i = lo; i < hi; ++i) {
    const auto& it = items[i];
    if (drop_S) {
      Tri s = in_set_S(it.f);
      if (s == Tri::yes) {
        ++out.row.excluded;
        continue;
      }
      if (s == Tri::unknown) {
        ++out.row.undecided;
        ++out.row.by_reason[Reason::none];
        out.undecided.push_back(it);
        continue;
      }
    }
    Certificate c = classify_residue(it.f, modp[it.root]);
    ++out.row.by_reason[c.reason];
    switch (c.label) {
      case ClassLabel::cert_irreducible: ++out.row.irreducible; break;
      case ClassLabel::cert_reducible: ++out.row.hensel; break;
      case ClassLabel::undecided:
        ++out.row.undecided;
        out.undecided.push_back(it);
        break;
    }
  }
}

inline std::vector<Pending> lifts_of(const std::vector<Pending>& parents, int level, bool trace_zero) {
  std::vector<Pending> out;
  if (parents.empty()) return out;
  const auto& p = parents.front().f.prime();
  const Int pv = p.value();
  const Int step = p.pow(level - 1);
  const int n = parents.front().f.degree();
  const int free = trace_zero ? n - 1 : n;
  const Int count = p.pow(free);
  out.reserve(parents.size() * static_cast<std::size_t>(count));
  for (const auto& par : parents) {
    std::vector<Int> base = par.f.coeffs();
    for (Int code = 0; code < count; ++code) {
      std::vector<Int> c = base;
      Int x = code;
      for (int i = 0; i < free; ++i) {
        c[static_cast<std::size_t>(i)] += step * (x % pv);
        x /= pv;
      }
      out.push_back({ResiduePoly(p, level, std::move(c), trace_zero), par.root});
    }
  }
  return out;
}

}  // namespace detail

/// Counts per level of certified-irreducible, undecided and Hensel classes,
/// lifting only the undecided ones.
inline LevelTable lift_table(const ClassSpec& spec, int kmax, const LiftOptions& opt = {}) {
  const int base = spec.base_level();
  if (kmax < base) throw Error(ErrorCode::usage, "kmax below the base level of the class");
  const bool drop_S = opt.quotient_by_S || spec.excludes_S();
  const unsigned workers = std::max(1u, opt.workers);

  LevelTable table;
  table.base_level = base;
  table.lifts_per_parent = spec.prime().pow(spec.free_coefficients());

  std::vector<FactorMultiset> modp;
  std::vector<detail::Pending> current;
  for (auto& f : spec.root_classes()) {
    modp.push_back(factor_mod_p(reduce_mod_p(f)));
    current.push_back({f, modp.size() - 1});
  }
  Int work = 0;
  Int parents = 1;
  for (int level = base; level <= kmax; ++level) {
    if (level > base) {
      Int next = static_cast<Int>(current.size()) * table.lifts_per_parent;
      if (work + next > opt.max_work) {
        table.truncated = true;
        break;
      }
      parents = static_cast<Int>(current.size());
      current = detail::lifts_of(current, level, spec.trace_zero());
    }
    work += static_cast<Int>(current.size());

    std::vector<detail::ChunkResult> parts(workers);
    if (workers == 1) {
      detail::classify_chunk(current, 0, current.size(), modp, drop_S, parts[0]);
    } else {
      std::vector<std::thread> pool;
      std::size_t per = (current.size() + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min(current.size(), w * per), hi = std::min(current.size(), lo + per);
        pool.emplace_back(detail::classify_chunk, std::cref(current), lo, hi, std::cref(modp), drop_S,
                          std::ref(parts[w]));
      }
      for (auto& t : pool) t.join();
    }
    LevelRow row;
    row.level = level;
    row.parents = parents;
    std::vector<detail::Pending> undecided;
    for (auto& part : parts) {
      row.irreducible += part.row.irreducible;
      row.undecided += part.row.undecided;
      row.hensel += part.row.hensel;
      row.excluded += part.row.excluded;
      for (auto& [r, c] : part.row.by_reason) row.by_reason[r] += c;
      for (auto& u : part.undecided) undecided.push_back(std::move(u));
    }
    if (level > base && row.irreducible + row.undecided + row.hensel + row.excluded != parents * table.lifts_per_parent)
      throw std::logic_error("lift conservation violated");
    table.rows.push_back(std::move(row));
    current = std::move(undecided);
  }
  return table;
}

struct DensityBracket {
  Rational lower = 0;
  Rational upper = 1;
  int level_reached = 0;
  bool truncated = false;

  Rational width() const { return upper - lower; }
  bool contains(const Rational& x) const { return lower <= x && x <= upper; }

  friend bool operator==(const DensityBracket&, const DensityBracket&) = default;
};

inline DensityBracket bracket_from_table(const ClassSpec& spec, const LevelTable& t, bool quotient_by_S) {
  Rational norm = spec.measure();
  if (quotient_by_S || spec.excludes_S()) norm -= spec.measure_of_S();
  Rational irr = 0, red = 0;
  for (const auto& r : t.rows) {
    irr += Rational(r.irreducible) * spec.class_measure(r.level);
    red += Rational(r.hensel) * spec.class_measure(r.level);
  }
  DensityBracket b;
  b.lower = irr / norm;
  b.upper = 1 - red / norm;
  b.level_reached = t.rows.empty() ? 0 : t.rows.back().level;
  b.truncated = t.truncated;
  return b;
}

/// Exact lower/upper bounds on the irreducible proportion of the region.
inline DensityBracket density_bracket(const ClassSpec& spec, int kmax, bool quotient_by_S,
                                      LiftOptions opt = {}) {
  opt.quotient_by_S = quotient_by_S;
  return bracket_from_table(spec, lift_table(spec, kmax, opt), quotient_by_S);
}

struct McEstimate {
  double point = 0;
  double ci_low = 0;
  double ci_high = 0;
  double undecided_fraction = 0;
  Int samples = 0;
  Int decided = 0;
  Int irreducible = 0;
};

inline constexpr double kZ99 = 2.5758293035489;

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::vector<Int> sample_coeffs(const ClassSpec& spec, int K, std::mt19937_64& rng) {
  const int n = spec.degree();
  const Int p = spec.prime().value();
  const Int m = spec.prime().pow(K);
  auto uniform = [&](Int bound) { return std::uniform_int_distribution<Int>(0, bound - 1)(rng); };
  std::vector<Int> c(static_cast<std::size_t>(n), 0);
  switch (spec.restriction()) {
    case Restriction::congruent_mod_p:
      for (int i = 0; i < spec.free_coefficients(); ++i)
        c[static_cast<std::size_t>(i)] = (*spec.target())[i] + p * uniform(m / p);
      break;
    case Restriction::slope_half_set: {
      Int u;
      do u = uniform(m / (p * p));
      while (u % p == 0);
      c[0] = p * p * u;
      c[1] = p * p * uniform(m / (p * p));
      c[2] = p * uniform(m / p);
      break;
    }
    default:
      for (int i = 0; i < spec.free_coefficients(); ++i) c[static_cast<std::size_t>(i)] = uniform(m);
  }
  return c;
}

}  // namespace detail

/// Monte Carlo irreducibility estimate; deterministic for a given seed.
inline McEstimate mc_estimate(const ClassSpec& spec, int K, Int N, std::uint64_t seed, unsigned workers = 1) {
  if (N <= 0) throw Error(ErrorCode::usage, "mc_estimate needs at least one sample");
  const int base = spec.base_level();
  if (K < base) throw Error(ErrorCode::usage, "sampling precision below the base level of the class");
  workers = std::max(1u, workers);
  struct Tally {
    Int decided = 0, irreducible = 0, undecided = 0, drawn = 0;
  };
  auto run = [&](Int lo, Int hi, Tally& t) {
    for (Int s = lo; s < hi; ++s) {
      std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(s))));
      std::vector<Int> c;
      for (;;) {
        c = detail::sample_coeffs(spec, K, rng);
        if (!spec.excludes_S() || in_set_S(ResiduePoly(spec.prime(), K, c, spec.trace_zero())) != Tri::yes) break;
      }
      ++t.drawn;
      ResiduePoly top(spec.prime(), K, c, spec.trace_zero());
      auto modp = factor_mod_p(reduce_mod_p(top));
      ClassLabel label = ClassLabel::undecided;
      for (int L = base; L <= K && label == ClassLabel::undecided; ++L)
        label = classify_residue(top.reduced_to(L), modp).label;
      if (label == ClassLabel::undecided) {
        ++t.undecided;
        continue;
      }
      ++t.decided;
      if (label == ClassLabel::cert_irreducible) ++t.irreducible;
    }
  };
  std::vector<Tally> tallies(workers);
  if (workers == 1) {
    run(0, N, tallies[0]);
  } else {
    std::vector<std::thread> pool;
    Int per = (N + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run, std::min(N, w * per), std::min(N, (w + 1) * per), std::ref(tallies[w]));
    for (auto& t : pool) t.join();
  }
  McEstimate e;
  e.samples = N;
  Int undecided = 0;
  for (auto& t : tallies) {
    e.decided += t.decided;
    e.irreducible += t.irreducible;
    undecided += t.undecided;
  }
  e.undecided_fraction = static_cast<double>(undecided) / static_cast<double>(N);
  if (e.decided > 0) {
    double ph = static_cast<double>(e.irreducible) / static_cast<double>(e.decided);
    double half = kZ99 * std::sqrt(ph * (1 - ph) / static_cast<double>(e.decided));
    e.point = ph;
    e.ci_low = std::max(0.0, ph - half);
    e.ci_high = std::min(1.0, ph + half);
  }
  return e;
}

}  // namespace padic
