#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torus/errors.hpp"

namespace torus {

// Exact arithmetic layer. mpq_class keeps the canonical form we require
// (denominator > 0, gcd(|num|, den) = 1) through all arithmetic.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline Rational rat(const Int& n, const Int& d = Int(1)) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// 2^e for any sign of e.
inline Rational pow2(long e) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e >= 0 ? e : -e));
  return e >= 0 ? Rational(p) : rat(Int(1), p);
}

inline Rational pow_int(const Rational& x, long e) {
  if (e == 0) return Rational(1);
  unsigned long a = static_cast<unsigned long>(e >= 0 ? e : -e);
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), x.get_num().get_mpz_t(), a);
  mpz_pow_ui(d.get_mpz_t(), x.get_den().get_mpz_t(), a);
  if (e < 0) {
    if (n == 0) fail(Errc::InvalidArgument, "0 to a negative power");
    std::swap(n, d);
  }
  return rat(n, d);
}

inline Int floor_rat(const Rational& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline Int ceil_rat(const Rational& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline Int floor_div(const Rational& x, const Rational& y) { return floor_rat(Rational(x / y)); }

inline double to_double(const Rational& x) { return mpq_get_d(x.get_mpq_t()); }

// Shared CSV/JSON renderer: 12 significant digits.
inline std::string decimal12(const Rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", to_double(x));
  return std::string(buf);
}

inline Int binom(unsigned long n, unsigned long k) {
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

// x^q as an exact rational, when it is one (x >= 0). q = u/v: requires num,den
// of x^u to be perfect v-th powers.
inline std::optional<Rational> exact_pow(const Rational& x, const Rational& q) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) {
    if (sgn(q) <= 0) fail(Errc::InvalidArgument, "0^q with q <= 0");
    return Rational(0);
  }
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return pow_int(x, q.get_num().get_si());
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) return std::nullopt;
  long u = q.get_num().get_si();
  unsigned long v = q.get_den().get_ui();
  Rational t = pow_int(x, u >= 0 ? u : -u);
  Int rn, rd;
  int en = mpz_root(rn.get_mpz_t(), t.get_num().get_mpz_t(), v);
  int ed = mpz_root(rd.get_mpz_t(), t.get_den().get_mpz_t(), v);
  if (!en || !ed) return std::nullopt;
  Rational r = rat(rn, rd);
  return u >= 0 ? r : Rational(1 / r);
}

namespace detail {
// Directed v-th root of t > 0: returns (lo, hi) with lo <= t^(1/v) <= hi and
// hi - lo <= 2^-prec * hi.
inline std::pair<Rational, Rational> root_bounds(const Rational& t, unsigned long v,
                                                 unsigned prec) {
  Int S;
  mpz_ui_pow_ui(S.get_mpz_t(), 2, prec);
  Int R;  // t^(1/v) = (num * den^(v-1))^(1/v) / den
  mpz_pow_ui(R.get_mpz_t(), t.get_den().get_mpz_t(), v - 1);
  R *= t.get_num();
  Int Sv;
  mpz_pow_ui(Sv.get_mpz_t(), S.get_mpz_t(), v);
  R *= Sv;
  Int fl;
  mpz_root(fl.get_mpz_t(), R.get_mpz_t(), v);  // truncated root
  Int denom = t.get_den() * S;
  return {rat(fl, denom), rat(fl + 1, denom)};
}
}  // namespace detail

// Certified rational bounds of x^e for x > 0 and rational e.
inline std::pair<Rational, Rational> pow_bounds(const Rational& x, const Rational& e,
                                                unsigned prec = 96) {
  if (sgn(x) <= 0) fail(Errc::InvalidArgument, "pow_bounds needs x > 0");
  if (sgn(e) == 0) return {Rational(1), Rational(1)};
  if (!e.get_num().fits_slong_p() || !e.get_den().fits_slong_p())
    fail(Errc::InvalidArgument, "exponent too large");
  long u = e.get_num().get_si();
  unsigned long v = e.get_den().get_ui();
  Rational t = pow_int(x, u >= 0 ? u : -u);
  if (v == 1) return u >= 0 ? std::make_pair(t, t) : std::make_pair(Rational(1 / t), Rational(1 / t));
  auto [lo, hi] = detail::root_bounds(t, v, prec);
  // lo > 0 always: the scaled radicand is a positive integer, so its
  // truncated root is at least 1
  if (sgn(lo) <= 0) fail(Errc::InvalidArgument, "root bound degenerated");
  if (u >= 0) return {lo, hi};
  return {Rational(1 / hi), Rational(1 / lo)};
}

inline Rational pow_lower(const Rational& x, const Rational& e, unsigned prec = 96) {
  return pow_bounds(x, e, prec).first;
}
inline Rational pow_upper(const Rational& x, const Rational& e, unsigned prec = 96) {
  return pow_bounds(x, e, prec).second;
}

inline bool is_pow2(const Int& n) {
  if (sgn(n) <= 0) return false;
  return mpz_popcount(n.get_mpz_t()) == 1;
}

// Exponent e with den(x) = 2^e; error if the denominator is not a power of 2.
inline long log2_den(const Rational& x) {
  const Int& d = x.get_den();
  if (!is_pow2(d)) fail(Errc::NonDyadicBreakpoints, "denominator is not a power of two");
  return static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 1;
}

inline bool is_dyadic(const Rational& x) { return is_pow2(x.get_den()) ; }

// Product of rational bases raised to rational exponents, compared exactly by
// clearing exponent denominators. Bases must be positive (a zero base makes
// the whole product zero).
class PowProduct {
 public:
  PowProduct() = default;
  static PowProduct of(const Rational& base, const Rational& exp) {
    PowProduct p;
    p.mul(base, exp);
    return p;
  }
  PowProduct& mul(const Rational& base, const Rational& exp) {
    if (sgn(base) < 0) fail(Errc::InvalidArgument, "PowProduct base must be >= 0");
    if (sgn(base) == 0) {
      if (sgn(exp) <= 0) fail(Errc::InvalidArgument, "0 base needs positive exponent");
      zero_ = true;
      return *this;
    }
    if (sgn(exp) != 0 && base != 1) terms_.emplace_back(base, exp);
    return *this;
  }
  PowProduct& mul(const PowProduct& o) {
    if (o.zero_) zero_ = true;
    for (auto& t : o.terms_) terms_.push_back(t);
    return *this;
  }
  bool is_zero() const { return zero_; }

  double value() const {
    if (zero_) return 0.0;
    double v = 1.0;
    for (auto& [b, e] : terms_) v *= std::pow(to_double(b), to_double(e));
    return v;
  }

  // Exact rational value when every exponent is integral.
  std::optional<Rational> exact() const {
    if (zero_) return Rational(0);
    Rational v(1);
    for (auto& [b, e] : terms_) {
      if (e.get_den() != 1 || !e.get_num().fits_slong_p()) return std::nullopt;
      v *= pow_int(b, e.get_num().get_si());
    }
    return v;
  }

  // Certified rational enclosure of the value.
  std::pair<Rational, Rational> bounds(unsigned prec = 96) const {
    if (zero_) return {Rational(0), Rational(0)};
    Rational lo(1), hi(1);
    for (auto& [b, e] : terms_) {
      auto [tl, th] = pow_bounds(b, e, prec);
      lo *= tl;
      hi *= th;
    }
    return {lo, hi};
  }

  // Exact three-way comparison: -1, 0, +1 for this <, ==, > other.
  int cmp(const PowProduct& other) const {
    if (zero_ && other.zero_) return 0;
    if (zero_) return -1;
    if (other.zero_) return 1;
    Int D(1);
    for (auto& [b, e] : terms_) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.get_den().get_mpz_t());
    for (auto& [b, e] : other.terms_)
      mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), e.get_den().get_mpz_t());
    Rational lhs(1), rhs(1);
    auto push = [&](Rational& acc, const Rational& b, const Rational& e) {
      Int k = e.get_num() * (D / e.get_den());
      if (!k.fits_slong_p()) fail(Errc::CapExceeded, "PowProduct exponent too large");
      acc *= pow_int(b, k.get_si());
    };
    for (auto& [b, e] : terms_) push(lhs, b, e);
    for (auto& [b, e] : other.terms_) push(rhs, b, e);
    return cmp_rat(lhs, rhs);
  }
  int cmp(const Rational& r) const { return cmp(PowProduct::of(r, Rational(1))); }
  bool operator>=(const PowProduct& o) const { return cmp(o) >= 0; }
  bool operator>=(const Rational& r) const { return cmp(r) >= 0; }
  bool operator<=(const PowProduct& o) const { return cmp(o) <= 0; }

 private:
  static int cmp_rat(const Rational& a, const Rational& b) {
    int c = ::cmp(a, b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  bool zero_ = false;
  std::vector<std::pair<Rational, Rational>> terms_;
};

// Deterministic pseudo-random helpers (the std:: distributions are not pinned
// across platforms; these are).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool flip() { return next() & 1; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  Rational unit_rational(long den_log2 = 20) {
    Int d = Int(1) << den_log2;
    Int n = Int(static_cast<unsigned long>(below(1ull << den_log2)));
    return rat(n, d);
  }

 private:
  std::uint64_t s_;
};

}  // namespace torus
