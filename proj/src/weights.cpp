#include "torus/weights.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace torus::weights {

namespace {

Rational wrap_unit(Rational x) {
  x -= rat(floor_rat(x));
  return x;
}

}  // namespace

CubeFamily CubeFamily::dyadic_up_to(long max_m) {
  CubeFamily f;
  for (long m = 0; m <= max_m; ++m)
    for (auto& t : subgroup_elements(m)) f.cubes.push_back(make_cube(m, t.coords, true));
  return f;
}

CubeFamily CubeFamily::with_shifts(long max_m, long shift_den) {
  CubeFamily base = dyadic_up_to(max_m);
  std::map<std::pair<long, std::vector<Rational>>, bool> seen;
  CubeFamily out;
  auto push = [&](const CubeSpec& c) {
    auto key = std::make_pair(c.m, c.translation);
    if (seen.emplace(std::move(key), true).second) out.cubes.push_back(c);
  };
  for (auto& c : base.cubes) {
    push(c);
    for (std::size_t i = 0; i < c.translation.size(); ++i) {
      for (long k = 1; k < shift_den; ++k) {
        CubeSpec s = c;
        s.translation[i] = wrap_unit(c.translation[i] + rat(k, shift_den));
        s.dyadic = cube_is_dyadic(s);
        push(s);
      }
    }
  }
  return out;
}

Rational ap2_constant(const WeightFn& w, const CubeFamily& f) {
  if (f.cubes.empty()) fail(Errc::InvalidArgument, "empty cube family");
  WeightFn inv = w.reciprocal();
  Rational best(0);
  for (auto& q : f.cubes) {
    Region r = cube_region(q);
    Rational qm = q.measure();
    Rational prod = (w.measure(r) / qm) * (inv.measure(r) / qm);
    if (prod > best) best = prod;
  }
  return best;
}

double ap_constant(const WeightFn& w, const Rational& p, const CubeFamily& f) {
  if (p <= 1) fail(Errc::InvalidArgument, "need p > 1");
  if (f.cubes.empty()) fail(Errc::InvalidArgument, "empty cube family");
  double pd = to_double(p);
  double dual_exp = 1.0 - pd / (pd - 1.0);  // 1 - p'
  double best = 0.0;
  for (auto& q : f.cubes) {
    Region r = cube_region(q);
    double qm = to_double(q.measure());
    double avg1 = to_double(w.measure(r)) / qm;
    double avg2 = 0.0;
    Rational covered(0);
    for (auto& pc : w.fn().pieces()) {
      if (sgn(pc.value) <= 0) fail(Errc::NonIntegrableDual, "weight value must be positive");
      Rational cut = region_intersect(pc.region, r).measure();
      covered += cut;
      avg2 += std::pow(to_double(pc.value), dual_exp) * to_double(cut);
    }
    avg2 += std::pow(to_double(w.fn().default_value()), dual_exp) *
            to_double(Rational(q.measure() - covered));
    avg2 /= qm;
    best = std::max(best, avg1 * std::pow(avg2, pd - 1.0));
  }
  return best;
}

double rh_constant(const WeightFn& w, const Rational& r, const CubeFamily& f) {
  if (r <= 1) fail(Errc::InvalidArgument, "need r > 1");
  if (f.cubes.empty()) fail(Errc::InvalidArgument, "empty cube family");
  double rd = to_double(r);
  double best = 0.0;
  for (auto& q : f.cubes) {
    Region reg = cube_region(q);
    double qm = to_double(q.measure());
    double mean = to_double(w.measure(reg)) / qm;
    double mean_r = 0.0;
    Rational covered(0);
    for (auto& pc : w.fn().pieces()) {
      Rational cut = region_intersect(pc.region, reg).measure();
      covered += cut;
      mean_r += std::pow(to_double(pc.value), rd) * to_double(cut);
    }
    mean_r += std::pow(to_double(w.fn().default_value()), rd) *
              to_double(Rational(q.measure() - covered));
    mean_r /= qm;
    best = std::max(best, std::pow(mean_r, 1.0 / rd) / mean);
  }
  return best;
}

Rational a1_constant(const WeightFn& w, const BasisSpec& basis, const EvalCaps& caps) {
  MaximalEval ev = evaluate_maximal(w.fn(), basis, caps);
  Rational best(0);
  for (std::size_t idx = 0; idx < ev.ncells; ++idx) {
    Rational ratio = ev.full[idx] / ev.fvals[idx];
    if (ratio > best) best = ratio;
  }
  return best;
}

Rational a1_family_lower(const WeightFn& w, const CubeFamily& f) {
  if (f.cubes.empty()) fail(Errc::InvalidArgument, "empty cube family");
  Rational best(0);
  for (auto& q : f.cubes) {
    Region r = cube_region(q);
    Rational mean = w.measure(r) / q.measure();
    Rational inf(0);
    Rational covered(0);
    for (auto& pc : w.fn().pieces()) {
      Rational cut = region_intersect(pc.region, r).measure();
      covered += cut;
      if (sgn(cut) > 0 && (sgn(inf) == 0 || pc.value < inf)) inf = pc.value;
    }
    if (covered < q.measure()) {
      const Rational& dv = w.fn().default_value();
      if (sgn(inf) == 0 || dv < inf) inf = dv;
    }
    Rational ratio = mean / inf;
    if (ratio > best) best = ratio;
  }
  return best;
}

Rational fw_ainfty_estimate(const WeightFn& w, const CubeFamily& f, const BasisSpec& basis,
                            const EvalCaps& caps) {
  if (f.cubes.empty()) fail(Errc::InvalidArgument, "empty cube family");
  Rational best(0);
  for (auto& q : f.cubes) {
    Region r = cube_region(q);
    SimpleFunction wchi = w.fn().restricted(r);
    MaximalEval ev = evaluate_maximal(wchi, basis, caps);
    Rational integral(0);
    for (std::size_t idx = 0; idx < ev.ncells; ++idx) {
      if (sgn(ev.full[idx]) == 0) continue;
      Box cell = ev.cell_box(idx);
      Rational inside = region_intersect(Region::of_box(cell), r).measure();
      if (sgn(inside) > 0) integral += ev.full[idx] * inside;
    }
    Rational val = integral / w.measure(r);
    if (val > best) best = val;
  }
  return best;
}

ComparabilityFit comparability_fit(const WeightFn& w, const CubeFamily& f, long samples_per_cube,
                                   std::uint64_t seed, FitDirection dir) {
  if (f.cubes.empty()) fail(Errc::InvalidArgument, "empty cube family");
  ComparabilityFit fit;
  fit.direction = dir;
  Rng rng(seed ? seed : 0xc0de);

  for (auto& q : f.cubes) {
    Region r = cube_region(q);
    Rational qm = q.measure();
    Rational wq = w.measure(r);
    // split in four along every nonfree coordinate of Q, and along enough
    // free coordinates for the weight's variation to show up
    auto e = side_exponents(q.m);
    std::size_t d = std::max<std::size_t>({e.size(), w.fn().depth(), 1});
    std::vector<Region> cells;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<Arc> arcs;
      for (std::size_t i = 0; i < d; ++i) {
        Rational side = (i < e.size() ? pow2(-e[i]) : Rational(1)) / 4;
        Rational base = i < e.size() ? q.translation[i] : Rational(0);
        arcs.emplace_back(wrap_unit(base + rat(idx[i]) * side), side);
      }
      cells.push_back(Region::of_boxes(d, {Box(std::move(arcs))}, false));
      std::size_t i = 0;
      for (; i < d; ++i) {
        if (++idx[i] < 4) break;
        idx[i] = 0;
      }
      if (i == d) break;
    }
    auto add_sample = [&](const std::vector<std::size_t>& chosen) {
      if (chosen.empty()) return;
      Rational em(0), wm(0);
      for (auto ci : chosen) {
        em += cells[ci].measure();
        wm += w.measure(cells[ci]);
      }
      ComparabilitySample s;
      s.size_frac = em / qm;
      s.mass_frac = wm / wq;
      fit.samples.push_back(std::move(s));
    };
    // deterministic extremal candidates: every single cell and the full cube
    for (std::size_t c = 0; c < cells.size(); ++c) add_sample({c});
    std::vector<std::size_t> all(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) all[c] = c;
    add_sample(all);
    for (long s = 0; s < samples_per_cube; ++s) {
      std::vector<std::size_t> chosen;
      for (std::size_t c = 0; c < cells.size(); ++c)
        if (rng.flip()) chosen.push_back(c);
      add_sample(chosen);
    }
  }

  // fit C per delta on the grid k/16; keep the pair minimizing the resulting
  // blow-up N (tie: larger delta, then smaller C)
  bool have = false;
  for (long k = 16; k >= 1; --k) {
    Rational delta = rat(k, 16);
    Rational c_need(1);
    for (auto& s : fit.samples) {
      const Rational& x = dir == FitDirection::RHSide ? s.size_frac : s.mass_frac;
      const Rational& y = dir == FitDirection::RHSide ? s.mass_frac : s.size_frac;
      if (sgn(y) == 0) continue;
      if (sgn(x) == 0) fail(Errc::InvalidArgument, "zero-size sample with positive mass");
      Rational cand = y * pow_upper(x, Rational(-delta));  // upper bound of y / x^delta
      if (cand > c_need) c_need = cand;
    }
    long n = config::smallest_blowup_n(c_need, delta);
    if (!have || n < fit.blowup_n ||
        (n == fit.blowup_n && (delta > fit.delta || (delta == fit.delta && c_need < fit.C)))) {
      have = true;
      fit.delta = delta;
      fit.C = c_need;
      fit.blowup_n = n;
    }
  }

  // exact re-verification: y^s <= C^s x^r for delta = r/s
  fit.verified = true;
  long rr = fit.delta.get_num().get_si();
  long ss = fit.delta.get_den().get_si();
  Rational cs = pow_int(fit.C, ss);
  for (auto& s : fit.samples) {
    const Rational& x = fit.direction == FitDirection::RHSide ? s.size_frac : s.mass_frac;
    const Rational& y = fit.direction == FitDirection::RHSide ? s.mass_frac : s.size_frac;
    if (sgn(y) == 0) continue;
    if (pow_int(y, ss) > cs * pow_int(x, rr)) fit.verified = false;
  }
  return fit;
}

SharpRHReport sharp_rh_check(const WeightFn& w, const CubeFamily& f, const BasisSpec& basis,
                             const std::vector<Rational>& r_grid, const EvalCaps& caps) {
  SharpRHReport rep;
  rep.ainfty_estimate = fw_ainfty_estimate(w, f, basis, caps);
  const Rational& A = rep.ainfty_estimate;
  rep.all_r_admissible = (A == 1);
  bool any_admissible = false;
  for (auto& r : r_grid) {
    SharpRHEntry entry;
    entry.r = r;
    if (r <= 1) fail(Errc::InvalidArgument, "need r > 1 in the grid");
    Rational rp1 = Rational(1) / (r - 1);  // r' - 1
    entry.admissible = rep.all_r_admissible || Rational((r - 1) * (A - 1)) < 1;
    entry.in_domain = rep.all_r_admissible || rp1 > 2 * (A - 1);
    if (entry.admissible) any_admissible = true;
    if (entry.admissible && entry.in_domain) {
      Rational cc = rep.all_r_admissible ? A : Rational(A * rp1 / (rp1 - 2 * (A - 1)));
      for (auto& q : f.cubes) {
        ++entry.cubes_checked;
        Region reg = cube_region(q);
        Rational qm = q.measure();
        Rational mean = w.measure(reg) / qm;
        std::vector<std::pair<Rational, Rational>> parts;  // (mass, value) inside Q
        Rational covered(0);
        for (auto& pc : w.fn().pieces()) {
          Rational cut = region_intersect(pc.region, reg).measure();
          covered += cut;
          if (sgn(cut) > 0) parts.emplace_back(cut, pc.value);
        }
        if (covered < qm) parts.emplace_back(Rational(qm - covered), w.fn().default_value());
        bool constant = true;
        for (auto& [mass, v] : parts) constant = constant && v == parts[0].second;
        if (constant) {
          // avg(w^r) = v^r and rhs = cc v^r: exact, holds iff cc >= 1
          if (cc < 1) ++entry.violations;
          continue;
        }
        bool decided = false;
        for (unsigned prec = 96; prec <= 384 && !decided; prec *= 2) {
          Rational lhs_lo(0), lhs_hi(0);
          for (auto& [mass, v] : parts) {
            auto [plo, phi] = pow_bounds(v, r, prec);
            lhs_lo += mass * plo;
            lhs_hi += mass * phi;
          }
          lhs_lo /= qm;
          lhs_hi /= qm;
          auto [mlo, mhi] = pow_bounds(mean, r, prec);
          Rational rhs_lo = cc * mlo, rhs_hi = cc * mhi;
          if (lhs_hi <= rhs_lo) {
            decided = true;  // satisfied with certainty
          } else if (lhs_lo > rhs_hi) {
            decided = true;
            ++entry.violations;
          }
        }
        if (!decided) ++entry.undecided;
      }
    }
    rep.total_violations += entry.violations;
    rep.entries.push_back(std::move(entry));
  }
  if (!rep.all_r_admissible && !any_admissible && !r_grid.empty())
    fail(Errc::RangeEmpty, "no grid point inside the admissible range");
  return rep;
}

std::vector<WeightedBlowupRow> weighted_blowup(const config::SequencePlan& plan,
                                               const WeightFn& w, const Rational& q,
                                               const Rational& C, const Rational& delta) {
  if (plan.kind != config::PlanKind::Thm16)
    fail(Errc::InvalidArgument, "weighted blow-up expects a thm1.6 plan");
  long n_min = config::smallest_blowup_n(C, delta);
  long dr = delta.get_num().get_si();
  long ds = delta.get_den().get_si();

  std::vector<WeightedBlowupRow> rows;
  for (auto& pr : plan.rows) {
    if (pr.big_n < n_min) fail(Errc::InvalidN, "plan has N_j below the smallest admissible N");
    WeightedBlowupRow row;
    row.j = pr.j;
    row.epsilon = pr.epsilon;
    row.l = pr.l;
    row.big_n = pr.big_n;
    row.sizelevel = pr.sizelevel;
    long N = pr.big_n;

    auto e = side_exponents(pr.sizelevel);
    std::size_t dw = w.fn().depth();
    Rational qm = pow2(-pr.sizelevel);

    std::vector<Arc> q_head;
    for (std::size_t i = 0; i < dw; ++i) {
      Rational t0 = (i == 0) ? pr.offset1 : Rational(0);
      q_head.emplace_back(t0, pow2(-e[i]));
    }

    // chain ratios: the intermediate cubes shift coordinate k by (n/N) side_k
    bool chain_ok = true;
    Rational min_ratio(1);
    bool min_set = false;
    for (long k = 0; k < pr.l; ++k) {
      Rational prev_mass;
      for (long n = 0; n < N; ++n) {
        Rational mass;
        if (static_cast<std::size_t>(k) < dw) {
          std::vector<Arc> head = q_head;
          Rational t0 = (k == 0) ? pr.offset1 : Rational(0);
          head[k] = Arc(wrap_unit(t0 + rat(n, N) * pow2(-e[k])), pow2(-e[k]));
          mass = cylinder_weighted_measure(&w, head, qm);
        } else {
          mass = cylinder_weighted_measure(&w, q_head, qm);
        }
        if (n > 0) {
          Rational ratio = mass / prev_mass;
          if (!min_set || ratio < min_ratio) {
            min_ratio = ratio;
            min_set = true;
          }
          if (ratio < 1) {
            // ratio >= 1 - C N^-delta  <=>  C^s >= (1-ratio)^s N^r
            Rational lhs = pow_int(C, ds);
            Rational rhs = pow_int(Rational(1 - ratio), ds) * pow_int(rat(N), dr);
            if (lhs < rhs) chain_ok = false;
          }
        }
        prev_mass = mass;
      }
    }
    row.chain_min_ratio = min_set ? min_ratio : Rational(1);
    row.chain_ok = chain_ok;

    config::Configuration conf = config::realize(pr, /*ell_cap=*/4096);
    config::ClosedQuotient cq =
        config::blowup_quotient_closed(conf, config::TestFn::ChiQ, q, &w);
    row.realized_pow = cq.pow_q;
    row.realized_approx = cq.approx;

    // bound = (1 - C N^-delta)^N * l * (2N)^-q via certified enclosures
    auto certify = [&](unsigned prec) {
      auto [ndl, ndh] = pow_bounds(rat(N), Rational(-delta), prec);
      Rational b_lo = 1 - C * ndh, b_hi = 1 - C * ndl;
      if (sgn(b_lo) < 0) b_lo = Rational(0);
      if (sgn(b_hi) < 0) b_hi = Rational(0);
      auto [tq_lo, tq_hi] = pow_bounds(rat(2 * N), Rational(-q), prec);
      Rational bound_lo = pow_int(b_lo, N) * rat(pr.l) * tq_lo;
      Rational bound_hi = pow_int(b_hi, N) * rat(pr.l) * tq_hi;
      auto [r_lo, r_hi] = row.realized_pow.bounds(prec);
      int verdict = 0;  // 1 ok, -1 violated, 0 undecided
      if (r_lo >= bound_hi) verdict = 1;
      else if (r_hi < bound_lo) verdict = -1;
      row.bound_approx = to_double(bound_hi);
      return verdict;
    };
    int verdict = certify(192);
    if (verdict == 0) verdict = certify(512);
    row.bound_ok = verdict == 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace torus::weights
