#pragma once

#include <span>
#include <stdexcept>

#include "padic/residue_poly.hpp"
#include "padic/ring.hpp"

namespace padic {

enum class Ramification { unramified, ramified, split };

inline const char* ramification_name(Ramification r) {
  switch (r) {
    case Ramification::unramified: return "unramified";
    case Ramification::ramified: return "ramified";
    case Ramification::split: return "split";
  }
  return "?";
}

/// x^2 + t x + s over Z/p^k.
struct MonicQuadratic {
  Int t = 0;
  Int s = 0;

  Int discriminant(Int m) const { return reduce(mulmod(t, t, m) - mulmod(4 % m, s, m), m); }
};

inline Ramification ramification_of(const MonicQuadratic& g, Int p) {
  Int d = g.discriminant(p);
  if (d == 0) return Ramification::ramified;
  return detail::is_qr_mod_p(d, p) ? Ramification::split : Ramification::unramified;
}

/// a1*y + a0 in (Z/p^k)[y]/(g).
class QuadExtElem {
 public:
  QuadExtElem(Int a1, Int a0, MonicQuadratic g, PrimeModulus p, int level)
      : p_(p), level_(level), m_(p.pow(level)), g_{reduce(g.t, m_), reduce(g.s, m_)} {
    a1_ = reduce(a1, m_);
    a0_ = reduce(a0, m_);
    ram_ = ramification_of(g_, p_.value());
  }

  Int a1() const { return a1_; }
  Int a0() const { return a0_; }
  const MonicQuadratic& defining() const { return g_; }
  Ramification ramification() const { return ram_; }
  int level() const { return level_; }

  /// Valuation normalized so that v(p) = 1 (half-units: v(p) = 2).
  /// Returns at_least(0) where the rule does not determine it.
  TruncatedValuation valuation() const {
    if (ram_ == Ramification::unramified) {
      auto v1 = padic::valuation(a1_, p_, level_);
      auto v0 = padic::valuation(a0_, p_, level_);
      // 1, y stay independent mod p, so no cancellation
      if (v1.is_exact() && v0.is_exact())
        return TruncatedValuation::exact(std::min(v1.half_units(), v0.half_units()));
      if (v1.is_exact()) return v1;
      if (v0.is_exact()) return v0;
      return TruncatedValuation::at_least_level(level_);
    }
    if (ram_ == Ramification::ramified) {
      // centre: z = y + t/2, z^2 = disc/4
      Int disc = g_.discriminant(m_);
      auto vd = padic::valuation(disc, p_, level_);
      if (!(vd.is_exact() && vd.half_units() == 2)) return TruncatedValuation::at_least(0);
      Int half_t = mulmod(g_.t, inverse<Int>(2, m_), m_);
      Int c0 = reduce(a0_ - mulmod(a1_, half_t, m_), m_);
      auto vz = shift(padic::valuation(a1_, p_, level_), 1);
      auto vc = padic::valuation(c0, p_, level_);
      return truncate_at(min_distinct(vz, vc), level_);
    }
    return TruncatedValuation::at_least(0);
  }

  friend bool operator==(const QuadExtElem& x, const QuadExtElem& y) {
    return x.a1_ == y.a1_ && x.a0_ == y.a0_ && x.g_.t == y.g_.t && x.g_.s == y.g_.s &&
           x.level_ == y.level_;
  }

 private:
  PrimeModulus p_;
  int level_;
  Int m_;
  MonicQuadratic g_;
  Int a1_ = 0, a0_ = 0;
  Ramification ram_;
};

/// f(y) for arbitrary ascending coefficients f, y a root of g.
inline QuadExtElem ext_eval(std::span<const Int> f, const MonicQuadratic& g, PrimeModulus p, int level) {
  Int m = p.pow(level);
  Int t = reduce(g.t, m), s = reduce(g.s, m);
  Int a1 = 0, a0 = 0;
  for (std::size_t i = f.size(); i-- > 0;) {
    // (a1 y + a0) y = (a0 - t a1) y - s a1
    Int n1 = reduce(a0 - mulmod(t, a1, m), m);
    Int n0 = reduce(-mulmod(s, a1, m), m);
    a1 = n1;
    a0 = reduce(n0 + reduce(f[i], m), m);
  }
  return QuadExtElem(a1, a0, MonicQuadratic{t, s}, p, level);
}

inline QuadExtElem ext_eval(const ResiduePoly& f, const MonicQuadratic& g) {
  auto c = f.full();
  return ext_eval(std::span<const Int>(c), g, f.prime(), f.level());
}

}  // namespace padic
