#include "torus/configurations.hpp"

#include <algorithm>
#include <cmath>

namespace torus::config {

namespace {

Rational wrap_unit(Rational x) {
  x -= rat(floor_rat(x));
  return x;
}

// Arc of cube side 2^-e at translation t (possibly wrapping).
Arc side_arc(const Rational& t, long e) { return Arc(t, pow2(-e)); }

}  // namespace

Configuration make_config_around(const CubeSpec& q, const Rational& eps, long l) {
  if (sgn(eps) <= 0 || eps > rat(1, 2)) fail(Errc::EpsilonOutOfRange, "need 0 < eps <= 1/2");
  long ell = q.level().ell();
  if (l < 1 || l > ell)
    fail(Errc::TooManyCubes, "need 1 <= l <= ell(m) = " + std::to_string(ell));
  auto e = side_exponents(q.m);
  Configuration c;
  c.epsilon = eps;
  c.l = l;
  c.around = q;
  c.anchor = cube_region(q);
  for (long k = 0; k < l; ++k) {
    CubeSpec shifted = q;
    shifted.dyadic = false;
    shifted.translation[k] = wrap_unit(q.translation[k] + (1 - eps) * pow2(-e[k]));
    c.cubes.push_back(std::move(shifted));
  }
  return c;
}

ValidationReport validate_config(const Configuration& c) {
  ValidationReport rep;
  auto add = [&](std::string what, bool ok, std::string detail) {
    rep.valid = rep.valid && ok;
    rep.items.push_back({std::move(what), ok, std::move(detail)});
  };
  Rational am = c.anchor.measure();
  std::vector<Region> diffs;
  for (std::size_t k = 0; k < c.cubes.size(); ++k) {
    Region qk = cube_region(c.cubes[k]);
    Rational qm = qk.measure();
    add("measure[" + std::to_string(k + 1) + "]", qm == am,
        "|Q| = " + qm.get_str() + ", |A| = " + am.get_str());
    Rational ov = region_intersect(qk, c.anchor).measure();
    bool lo = ov >= c.epsilon * am;
    bool hi = ov <= (1 - c.epsilon) * am;
    add("overlap[" + std::to_string(k + 1) + "]", lo && hi,
        "|Q^k n A| = " + ov.get_str() + ", eps|A| = " + Rational(c.epsilon * am).get_str() +
            ", (1-eps)|A| = " + Rational((1 - c.epsilon) * am).get_str());
    diffs.push_back(region_subtract(qk, c.anchor));
  }
  for (std::size_t a = 0; a < diffs.size(); ++a)
    for (std::size_t b = a + 1; b < diffs.size(); ++b) {
      Rational ov = region_intersect(diffs[a], diffs[b]).measure();
      add("disjoint[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]", sgn(ov) == 0,
          "|difference overlap| = " + ov.get_str());
    }
  if (c.l != static_cast<long>(c.cubes.size())) add("count", false, "l != number of cubes");
  return rep;
}

std::vector<std::pair<long, Rational>> inclusion_partition(const Configuration& c, long m) {
  if (!c.around) fail(Errc::InvalidArgument, "inclusion_partition needs an around-configuration");
  if (m < 0) m = c.l;
  if (m > c.l) fail(Errc::InvalidArgument, "m exceeds the number of cubes");
  if (m > 12) fail(Errc::CapExceeded, "2^m cells above the m = 12 cap");
  std::vector<Rational> by_count(m + 1, Rational(0));
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    Region cell = c.anchor;
    long count = 0;
    for (long k = 0; k < m; ++k) {
      Region qk = cube_region(c.cubes[k]);
      if (mask & (1ul << k)) {
        cell = region_intersect(cell, qk);
        ++count;
      } else {
        cell = region_subtract(cell, qk);
      }
      if (cell.is_empty()) break;
    }
    by_count[count] += cell.measure();
  }
  std::vector<std::pair<long, Rational>> out;
  for (long l = 0; l <= m; ++l) out.emplace_back(l, by_count[l]);
  return out;
}

ClosedQuotient blowup_quotient_closed(const Configuration& c, TestFn fn, const Rational& q,
                                      const WeightFn* w) {
  if (!c.around) fail(Errc::InvalidArgument, "closed forms need an around-configuration");
  const CubeSpec& qc = *c.around;
  long ell = qc.level().ell();
  if (w && static_cast<long>(w->fn().depth()) > ell)
    fail(Errc::WeightDepthMismatch, "weight depends on coordinates beyond ell(m_Q)");
  std::size_t dw = w ? w->fn().depth() : 0;

  // Everything is expressed in w-means over |Q|, so the (possibly gigantic)
  // cube measure 2^-m never has to be materialized. The mean of w over a
  // cylinder box is w(proj) / |proj| on its first depth(w) coordinates.
  auto head_mean = [&](const std::vector<Arc>& head) -> Rational {
    if (!w) return Rational(1);
    Rational vol(1);
    for (auto& a : head) vol *= a.length;
    Region proj = Region::of_boxes(dw, {Box(head)}, false);
    return w->measure(proj) / vol;
  };

  std::vector<long> e;
  std::vector<Arc> q_head, u_head;
  if (dw > 0) {
    e = side_exponents(qc.m);
    for (std::size_t i = 0; i < dw; ++i) {
      q_head.push_back(side_arc(qc.translation[i], e[i]));
      if (static_cast<long>(i) < c.l) {
        Rational lo = wrap_unit(qc.translation[i] + (1 - c.epsilon) * pow2(-e[i]));
        u_head.push_back(Arc(lo, c.epsilon * pow2(-e[i])));
      } else {
        u_head.push_back(side_arc(qc.translation[i], e[i]));
      }
    }
  }
  Rational q_mean = head_mean(q_head);

  // w(E \ Q) / |Q|: the excesses Q^(k) \ Q are disjoint single boxes of
  // measure (1 - eps)|Q| each, differing from Q in one coordinate.
  Rational excess_mean(0);
  if (dw == 0) {
    excess_mean = rat(c.l) * (1 - c.epsilon);
  } else {
    for (long k = 0; k < c.l; ++k) {
      std::vector<Arc> head = q_head;
      if (k < static_cast<long>(dw)) {
        Rational lo = wrap_unit(qc.translation[k] + pow2(-e[k]));
        head[k] = Arc(lo, (1 - c.epsilon) * pow2(-e[k]));
      }
      excess_mean += head_mean(head) * (1 - c.epsilon);
    }
  }
  Rational level_mean = q_mean + excess_mean;  // w(Q u (E \ Q)) / |Q|

  ClosedQuotient out;
  auto push = [&](PowProduct p) { out.candidates.push_back(std::move(p)); };
  switch (fn) {
    case TestFn::ChiAnchor:
    case TestFn::ChiQ: {
      // strong power = w(Q); level 1 on Q, level eps on Q u (E \ Q)
      push(PowProduct::of(rat(1), rat(1)));
      push(PowProduct::of(c.epsilon, q).mul(Rational(level_mean / q_mean), rat(1)));
      break;
    }
    case TestFn::ChiIntersection: {
      // strong power = w(U) = u_mean * eps^l |Q|; level eps^l on Q u (E \ Q)
      Rational u_mean = head_mean(u_head);
      push(PowProduct::of(rat(1), rat(1)));
      push(PowProduct::of(c.epsilon, Rational((q - 1) * c.l))
               .mul(Rational(level_mean / u_mean), rat(1)));
      break;
    }
  }
  out.pow_q = out.candidates[0];
  for (auto& cand : out.candidates)
    if (cand.cmp(out.pow_q) > 0) out.pow_q = cand;
  out.exact = out.pow_q.exact();
  out.approx = out.pow_q.value();
  return out;
}

PowProduct eps2_bound_pow(const Rational& eps, long l, const Rational& q) {
  return PowProduct::of(rat(1, 2), q).mul(eps, Rational(q + 1)).mul(rat(l), rat(1));
}

PowProduct chi_q_bound_pow(const Rational& eps, long l, const Rational& q) {
  return PowProduct::of(eps, q).mul(rat(l), rat(1)).mul(rat(1, 2), Rational(q + 1));
}

PowProduct chi_intersection_bound_q1(long l) { return PowProduct::of(rat(l, 4), rat(1)); }

long smallest_blowup_n(const Rational& C, const Rational& delta) {
  if (sgn(C) <= 0 || sgn(delta) <= 0) fail(Errc::InvalidArgument, "need C > 0, delta > 0");
  Rational cs = pow_int(C, delta.get_den().get_si());
  for (long n = 1; n <= (1L << 30); ++n) {
    // C * n^-delta < 1  <=>  C^s < n^r with delta = r/s
    Rational nr = pow_int(rat(n), delta.get_num().get_si());
    if (cs < nr) return n;
  }
  fail(Errc::InvalidArgument, "no admissible N below 2^30");
}

namespace {

long ceil_log2(long x) {
  long l = 0;
  while ((1L << l) < x) ++l;
  return l;
}

// Least m with e_1(m) >= E (first reached at n = E-1, j = n+1).
long level_with_first_exponent(long E) {
  if (E <= 0) return 0;
  return (E - 1) * (E - 1) + E;
}

// floor(j^q0) exactly for rational q0 = u/v via an integer root
long floor_pow(long j, const Rational& q0) {
  long u = q0.get_num().get_si();
  unsigned long v = q0.get_den().get_ui();
  Int ju;
  mpz_ui_pow_ui(ju.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(u));
  Int r;
  mpz_root(r.get_mpz_t(), ju.get_mpz_t(), v);
  return r.get_si();
}

}  // namespace

SequencePlan build_sequence(PlanKind kind, const PlanParams& params, long jmax) {
  if (jmax < 1) fail(Errc::InvalidArgument, "empty plan");
  SequencePlan plan;
  plan.kind = kind;
  plan.params = params;
  long L = ceil_log2(jmax);
  long bigN = 0;
  if (kind == PlanKind::Thm16) bigN = smallest_blowup_n(params.C, params.delta);
  for (long j = 1; j <= jmax; ++j) {
    PlanRow row;
    row.j = j;
    switch (kind) {
      case PlanKind::Thm12:
      case PlanKind::Cor13:
        row.epsilon = rat(1, 2);
        row.l = j;
        break;
      case PlanKind::Cor15Closed:
        row.epsilon = rat(1, j + 1);
        row.l = floor_pow(j, params.q0);
        break;
      case PlanKind::Cor15Open:
        row.epsilon = rat(1, j + 1);
        row.l = static_cast<long>(std::floor(
            std::log(static_cast<double>(j + 2)) *
            std::pow(static_cast<double>(j), to_double(params.q0))));
        break;
      case PlanKind::Thm16:
        row.big_n = bigN;
        row.epsilon = rat(1, bigN);
        row.l = j;
        break;
    }
    if (row.l < 1) row.l = 1;
    long m_for_l = (row.l - 1) * (row.l - 1) + 1;
    long m_for_layout = level_with_first_exponent(L + 1);
    row.sizelevel = std::max(m_for_l, m_for_layout);
    if (row.sizelevel > params.sizelevel_cap)
      fail(Errc::InfeasibleAnchor, "required sizelevel exceeds the cap");
    row.offset1 = rat(j - 1) * pow2(-L);
    plan.rows.push_back(std::move(row));
  }
  return plan;
}

Configuration realize(const PlanRow& row, long ell_cap) {
  SizeLevel s = SizeLevel::of(row.sizelevel);
  if (s.ell() > ell_cap)
    fail(Errc::CapExceeded, "realizing a configuration with " + std::to_string(s.ell()) +
                                " nonfree coordinates");
  std::vector<Rational> tr(static_cast<std::size_t>(s.ell()), Rational(0));
  tr[0] = row.offset1;
  CubeSpec q = make_cube(row.sizelevel, std::move(tr), true);
  return make_config_around(q, row.epsilon, row.l);
}

const char* plan_kind_name(PlanKind k) {
  switch (k) {
    case PlanKind::Thm12: return "thm1.2";
    case PlanKind::Cor13: return "cor1.3";
    case PlanKind::Cor15Closed: return "cor1.5-closed";
    case PlanKind::Cor15Open: return "cor1.5-open";
    case PlanKind::Thm16: return "thm1.6";
  }
  return "?";
}

std::optional<PlanKind> plan_kind_from(const std::string& name) {
  for (PlanKind k : {PlanKind::Thm12, PlanKind::Cor13, PlanKind::Cor15Closed,
                     PlanKind::Cor15Open, PlanKind::Thm16})
    if (name == plan_kind_name(k)) return k;
  return std::nullopt;
}

}  // namespace torus::config
