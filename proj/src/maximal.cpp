#include "torus/maximal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace torus {

namespace {

// Per-coordinate spacing exponents c_i of f's breakpoint grid; errors on any
// endpoint whose denominator is not a power of two.
std::vector<long> spacing_exponents(const SimpleFunction& f) {
  std::vector<long> c(f.depth(), 0);
  for (auto& pc : f.pieces()) {
    for (auto& b : pc.region.boxes()) {
      for (std::size_t i = 0; i < b.depth(); ++i) {
        for (const Rational& r : {b.arcs[i].start, Rational(b.arcs[i].start + b.arcs[i].length)}) {
          if (!is_dyadic(r))
            fail(Errc::NonDyadicBreakpoints, "breakpoint " + r.get_str() + " is not dyadic");
          c[i] = std::max(c[i], log2_den(r));
        }
      }
    }
  }
  return c;
}

std::size_t checked_cells(const std::vector<std::size_t>& dims, std::size_t cap) {
  std::size_t n = 1;
  for (auto d : dims) {
    if (d == 0 || n > cap / d) fail(Errc::DepthCapExceeded, "refinement grid too large");
    n *= d;
  }
  return n;
}

}  // namespace

long stabilization_level(const SimpleFunction& f) {
  auto c = spacing_exponents(f);
  long m = 0;
  auto satisfied = [&](long level) {
    auto e = side_exponents(level);
    for (std::size_t i = 0; i < c.size(); ++i) {
      long ei = i < e.size() ? e[i] : 0;
      if (ei < c[i]) return false;
    }
    return true;
  };
  while (!satisfied(m)) ++m;
  return m;
}

Point MaximalEval::cell_corner(std::size_t idx) const {
  std::vector<Rational> coords(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    coords[i] = cuts[i][idx % dims[i]];
    idx /= dims[i];
  }
  return Point(std::move(coords));
}

Box MaximalEval::cell_box(std::size_t idx) const {
  std::vector<Arc> arcs;
  arcs.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    std::size_t k = idx % dims[i];
    idx /= dims[i];
    arcs.emplace_back(cuts[i][k], cuts[i][k + 1] - cuts[i][k]);
  }
  return Box(std::move(arcs));
}

SimpleFunction MaximalEval::as_simple(const std::vector<Rational>& vals) const {
  std::map<Rational, std::vector<Box>> by_value;
  for (std::size_t idx = 0; idx < ncells; ++idx) by_value[vals[idx]].push_back(cell_box(idx));
  std::vector<SimpleFunction::Piece> pieces;
  for (auto& [v, boxes] : by_value) {
    if (sgn(v) == 0) continue;
    pieces.push_back({Region::of_boxes(depth, boxes, false), v});
  }
  return SimpleFunction::make(depth, std::move(pieces), Rational(0), false);
}

MaximalEval evaluate_maximal(const SimpleFunction& f, const BasisSpec& basis,
                             const EvalCaps& caps) {
  MaximalEval ev;
  SimpleFunction fabs = f.abs();

  std::size_t d = f.depth();
  for (auto& cube : basis.extra) {
    if (sgn(cube.measure()) <= 0) fail(Errc::InvalidArgument, "extra cube must have positive measure");
    d = std::max(d, static_cast<std::size_t>(cube.level().ell()));
  }
  if (d > caps.max_depth) fail(Errc::DepthCapExceeded, "depth above evaluator cap");
  ev.depth = d;

  long mstar = 0;
  std::vector<long> estar;
  if (basis.include_dyadic) {
    auto c = spacing_exponents(fabs);
    for (long ci : c)
      if (ci > caps.max_spacing_log2) fail(Errc::DepthCapExceeded, "spacing below evaluator cap");
    mstar = stabilization_level(fabs);
    estar = side_exponents(mstar);
  }

  // Refinement grid: dyadic cuts at level m* in f's coordinates, plus every
  // face of every extra cube.
  std::vector<std::set<Rational>> cutset(d);
  for (std::size_t i = 0; i < d; ++i) {
    cutset[i].insert(Rational(0));
    cutset[i].insert(Rational(1));
  }
  if (basis.include_dyadic) {
    for (std::size_t i = 0; i < f.depth(); ++i) {
      long ei = i < estar.size() ? estar[i] : 0;
      for (long k = 1; k < (1L << ei); ++k) cutset[i].insert(rat(k) * pow2(-ei));
    }
  }
  std::vector<std::pair<Region, Rational>> extra_avg;  // realized cube, average of |f|
  for (auto& cube : basis.extra) {
    Region r = cube_region(cube);
    for (auto& b : r.boxes())
      for (std::size_t i = 0; i < b.depth(); ++i) {
        cutset[i].insert(b.arcs[i].start);
        cutset[i].insert(b.arcs[i].start + b.arcs[i].length);
      }
    extra_avg.emplace_back(r, Rational(fabs.integral_over(r) / cube.measure()));
  }
  ev.cuts.resize(d);
  ev.dims.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    ev.cuts[i].assign(cutset[i].begin(), cutset[i].end());
    ev.dims[i] = ev.cuts[i].size() - 1;
  }
  ev.ncells = checked_cells(ev.dims, caps.max_cells);

  ev.fvals.resize(ev.ncells);
  ev.dyadic.assign(ev.ncells, Rational(0));
  ev.full.resize(ev.ncells);

  // Distinct projected dyadic partitions along 0..m*, deduplicated by their
  // side-exponent vector restricted to f's coordinates.
  struct Level {
    std::vector<long> exps;  // size min(ell, depth_f)
    std::map<std::vector<Int>, Rational> memo;
  };
  std::vector<Level> levels;
  if (basis.include_dyadic) {
    std::vector<long> last;
    bool have_last = false;
    for (long m = 0; m <= mstar; ++m) {
      auto e = side_exponents(m);
      std::vector<long> proj;
      for (std::size_t i = 0; i < std::min<std::size_t>(e.size(), f.depth()); ++i)
        proj.push_back(e[i]);
      if (have_last && proj == last) continue;
      levels.push_back({proj, {}});
      last = proj;
      have_last = true;
    }
  }

  for (std::size_t idx = 0; idx < ev.ncells; ++idx) {
    Point corner = ev.cell_corner(idx);
    ev.fvals[idx] = fabs.value_at(corner);

    Rational best(0);
    if (basis.include_dyadic) {
      best = ev.fvals[idx];  // stabilized tail: averages at levels > m* equal |f|
      for (auto& lvl : levels) {
        std::vector<Int> key;
        key.reserve(lvl.exps.size());
        for (std::size_t i = 0; i < lvl.exps.size(); ++i)
          key.push_back(floor_rat(corner.coord(i) * pow2(lvl.exps[i])));
        auto it = lvl.memo.find(key);
        if (it == lvl.memo.end()) {
          std::vector<Arc> arcs;
          Rational meas(1);
          for (std::size_t i = 0; i < lvl.exps.size(); ++i) {
            Rational side = pow2(-lvl.exps[i]);
            arcs.emplace_back(rat(key[i]) * side, side);
            meas *= side;
          }
          Region cell = Region::of_box(Box(std::move(arcs)));
          it = lvl.memo.emplace(std::move(key), Rational(fabs.integral_over(cell) / meas)).first;
        }
        best = std::max(best, it->second);
      }
      ev.dyadic[idx] = best;
    }
    for (auto& [r, avg] : extra_avg)
      if (r.contains(corner)) best = std::max(best, avg);
    ev.full[idx] = best;
  }
  return ev;
}

SimpleFunction maximal_function(const SimpleFunction& f, const BasisSpec& basis,
                                const EvalCaps& caps) {
  MaximalEval ev = evaluate_maximal(f, basis, caps);
  return ev.as_simple(ev.full);
}

Rational weak_type_quotient_pow(const SimpleFunction& f, const Rational& q,
                                const BasisSpec& basis, const WeightFn* w,
                                const EvalCaps& caps) {
  if (f.is_zero()) fail(Errc::ZeroFunction, "weak-type quotient of the zero function");
  SimpleFunction mf = maximal_function(f, basis, caps);
  Rational weak = weak_lq_norm_pow(mf, q, w);
  Rational strong = lq_norm_pow(f, q, w);
  return weak / strong;
}

SimpleFunction overlap_function(const std::vector<CubeSpec>& s, const EvalCaps& caps) {
  std::size_t d = 0;
  std::vector<Region> regions;
  for (auto& cube : s) {
    if (sgn(cube.measure()) <= 0) fail(Errc::InvalidArgument, "cube must have positive measure");
    d = std::max(d, static_cast<std::size_t>(cube.level().ell()));
    regions.push_back(cube_region(cube));
  }
  if (d > caps.max_depth) fail(Errc::DepthCapExceeded, "depth above evaluator cap");
  std::vector<std::set<Rational>> cutset(d);
  for (std::size_t i = 0; i < d; ++i) {
    cutset[i].insert(Rational(0));
    cutset[i].insert(Rational(1));
  }
  for (auto& r : regions)
    for (auto& b : r.boxes())
      for (std::size_t i = 0; i < b.depth(); ++i) {
        cutset[i].insert(b.arcs[i].start);
        cutset[i].insert(b.arcs[i].start + b.arcs[i].length);
      }
  MaximalEval ev;
  ev.depth = d;
  ev.cuts.resize(d);
  ev.dims.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    ev.cuts[i].assign(cutset[i].begin(), cutset[i].end());
    ev.dims[i] = ev.cuts[i].size() - 1;
  }
  ev.ncells = checked_cells(ev.dims, caps.max_cells);
  std::vector<Rational> counts(ev.ncells);
  for (std::size_t idx = 0; idx < ev.ncells; ++idx) {
    Point corner = ev.cell_corner(idx);
    long c = 0;
    for (auto& r : regions)
      if (r.contains(corner)) ++c;
    counts[idx] = rat(c);
  }
  return ev.as_simple(counts);
}

long overlap_max(const std::vector<CubeSpec>& s, const EvalCaps& caps) {
  SimpleFunction f = overlap_function(s, caps);
  long best = 0;
  for (auto& pc : f.pieces()) best = std::max(best, static_cast<long>(pc.value.get_num().get_si()));
  return best;
}

MaximalEval bruteforce_maximal(const SimpleFunction& f, const BasisSpec& basis, long m_cap,
                               long grid_log2) {
  SimpleFunction fabs = f.abs();
  std::size_t d = f.depth();
  for (auto& cube : basis.extra) d = std::max(d, static_cast<std::size_t>(cube.level().ell()));

  // The uniform grid must refine f's breakpoints and every dyadic face up to
  // m_cap, so cube faces land exactly on grid points.
  for (long c : spacing_exponents(fabs))
    if (c > grid_log2) fail(Errc::InvalidArgument, "grid coarser than f's breakpoints");
  for (long e : side_exponents(m_cap))
    if (e > grid_log2) fail(Errc::InvalidArgument, "grid coarser than level m_cap cells");

  MaximalEval ev;
  ev.depth = d;
  ev.cuts.resize(d);
  ev.dims.resize(d);
  long grid = 1L << grid_log2;
  std::vector<std::set<Rational>> cutset(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (long k = 0; k <= grid; ++k) cutset[i].insert(rat(k, grid));
  }
  for (auto& cube : basis.extra) {
    Region r = cube_region(cube);
    for (auto& b : r.boxes())
      for (std::size_t i = 0; i < b.depth(); ++i) {
        cutset[i].insert(b.arcs[i].start);
        cutset[i].insert(b.arcs[i].start + b.arcs[i].length);
      }
  }
  for (std::size_t i = 0; i < d; ++i) {
    ev.cuts[i].assign(cutset[i].begin(), cutset[i].end());
    ev.dims[i] = ev.cuts[i].size() - 1;
  }
  ev.ncells = checked_cells(ev.dims, std::size_t(1) << 24);

  ev.fvals.resize(ev.ncells);
  for (std::size_t idx = 0; idx < ev.ncells; ++idx)
    ev.fvals[idx] = fabs.value_at(ev.cell_corner(idx));
  ev.dyadic = ev.fvals;  // averages beyond m_cap equal |f| on the grid
  if (!basis.include_dyadic) ev.dyadic.assign(ev.ncells, Rational(0));

  // Paint every grid cell covered by a cube with that cube's average. The
  // grid must refine every painted face; callers guarantee that.
  auto paint = [&](const Region& r, const Rational& avg, std::vector<Rational>& into) {
    for (auto& b : r.boxes()) {
      std::vector<std::pair<std::size_t, std::size_t>> ranges(d, {0, 0});
      bool empty = false;
      for (std::size_t i = 0; i < d && !empty; ++i) {
        if (i < b.depth()) {
          Rational end = b.arcs[i].start + b.arcs[i].length;
          auto lo = std::lower_bound(ev.cuts[i].begin(), ev.cuts[i].end(), b.arcs[i].start);
          auto hi = std::lower_bound(ev.cuts[i].begin(), ev.cuts[i].end(), end);
          if (lo == ev.cuts[i].end() || *lo != b.arcs[i].start || hi == ev.cuts[i].end() ||
              *hi != end)
            fail(Errc::InvalidArgument, "cube face off the reference grid");
          ranges[i] = {static_cast<std::size_t>(lo - ev.cuts[i].begin()),
                       static_cast<std::size_t>(hi - ev.cuts[i].begin())};
        } else {
          ranges[i] = {0, ev.dims[i]};
        }
        empty = ranges[i].first >= ranges[i].second;
      }
      if (empty) continue;
      std::vector<std::size_t> at(d);
      for (std::size_t i = 0; i < d; ++i) at[i] = ranges[i].first;
      while (true) {
        std::size_t idx = 0;
        for (std::size_t i = d; i-- > 0;) idx = idx * ev.dims[i] + at[i];
        if (avg > into[idx]) into[idx] = avg;
        std::size_t i = 0;
        for (; i < d; ++i) {
          if (++at[i] < ranges[i].second) break;
          at[i] = ranges[i].first;
        }
        if (i == d) break;
      }
    }
  };

  if (basis.include_dyadic) {
    for (long m = 0; m <= m_cap; ++m) {
      Rational meas = pow2(-m);
      for (auto& t : subgroup_elements(m)) {
        std::vector<Rational> tr = t.coords;
        CubeSpec cube;
        cube.m = m;
        cube.translation = std::move(tr);
        cube.dyadic = true;
        Region r = cube_region(cube);
        paint(r, Rational(fabs.integral_over(r) / meas), ev.dyadic);
      }
    }
  }
  ev.full = ev.dyadic;
  for (auto& cube : basis.extra) {
    Region r = cube_region(cube);
    paint(r, Rational(fabs.integral_over(r) / cube.measure()), ev.full);
  }
  return ev;
}

}  // namespace torus
