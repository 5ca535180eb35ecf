#include "torus/simple_fn.hpp"

#include <algorithm>

namespace torus {

SimpleFunction SimpleFunction::constant(const Rational& c, std::size_t depth) {
  SimpleFunction f;
  f.depth_ = depth;
  f.default_ = c;
  return f;
}

SimpleFunction SimpleFunction::indicator(const Region& r) {
  SimpleFunction f;
  f.depth_ = r.depth();
  if (!r.is_empty()) f.pieces_.push_back({r, Rational(1)});
  return f;
}

SimpleFunction SimpleFunction::make(std::size_t depth, std::vector<Piece> pieces,
                                    Rational default_value, bool check_disjoint) {
  SimpleFunction f;
  f.depth_ = depth;
  f.default_ = std::move(default_value);
  Rational support(0);
  for (auto& p : pieces) {
    if (p.region.depth() > depth) fail(Errc::InvalidArgument, "piece deeper than function");
    if (p.region.is_empty() || p.value == f.default_) continue;  // folded into default
    support += p.region.measure();
    f.pieces_.push_back({p.region.promoted(depth), p.value});
  }
  if (support > 1) fail(Errc::InvalidArgument, "total support measure exceeds 1");
  if (check_disjoint) {
    for (std::size_t i = 0; i < f.pieces_.size(); ++i)
      for (std::size_t j = i + 1; j < f.pieces_.size(); ++j)
        if (sgn(region_intersect(f.pieces_[i].region, f.pieces_[j].region).measure()) != 0)
          fail(Errc::InvalidArgument, "pieces overlap");
  }
  return f;
}

Rational SimpleFunction::value_at(const Point& p) const {
  for (auto& pc : pieces_)
    if (pc.region.contains(p)) return pc.value;
  return default_;
}

Rational SimpleFunction::support_measure() const {
  Rational s(0);
  for (auto& pc : pieces_) s += pc.region.measure();
  return s;
}

Rational SimpleFunction::integral() const {
  Rational v(0), support(0);
  for (auto& pc : pieces_) {
    Rational m = pc.region.measure();
    v += pc.value * m;
    support += m;
  }
  return v + default_ * (1 - support);
}

Rational SimpleFunction::integral_over(const Region& r) const {
  Rational v(0), covered(0);
  for (auto& pc : pieces_) {
    Rational m = region_intersect(pc.region, r).measure();
    v += pc.value * m;
    covered += m;
  }
  return v + default_ * (r.measure() - covered);
}

bool SimpleFunction::is_zero() const {
  if (sgn(default_) != 0) return false;
  for (auto& pc : pieces_)
    if (sgn(pc.value) != 0 && sgn(pc.region.measure()) != 0) return false;
  return true;
}

SimpleFunction SimpleFunction::abs() const {
  SimpleFunction f = *this;
  f.default_ = ::abs(f.default_);
  for (auto& pc : f.pieces_) pc.value = ::abs(pc.value);
  return f;
}

SimpleFunction SimpleFunction::restricted(const Region& r) const {
  std::size_t d = std::max(depth_, r.depth());
  std::vector<Piece> out;
  Region rest = r;
  for (auto& pc : pieces_) {
    Region cut = region_intersect(pc.region, r);
    if (!cut.is_empty()) out.push_back({cut, pc.value});
    rest = region_subtract(rest, pc.region);
  }
  if (sgn(default_) != 0 && !rest.is_empty()) out.push_back({rest, default_});
  return make(d, std::move(out), Rational(0), false);
}

SimpleFunction SimpleFunction::promoted(std::size_t depth) const {
  if (depth < depth_) fail(Errc::InvalidArgument, "cannot demote function depth");
  SimpleFunction f = *this;
  f.depth_ = depth;
  for (auto& pc : f.pieces_) pc.region = pc.region.promoted(depth);
  return f;
}

std::vector<Rational> SimpleFunction::levels_desc() const {
  std::vector<Rational> vals;
  for (auto& pc : pieces_) {
    Rational a = ::abs(pc.value);
    if (sgn(a) != 0) vals.push_back(a);
  }
  if (sgn(default_) != 0) vals.push_back(::abs(default_));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::reverse(vals.begin(), vals.end());
  return vals;
}

WeightFn WeightFn::make(SimpleFunction f) {
  if (sgn(f.default_value()) <= 0) fail(Errc::NonPositive, "weight default value must be > 0");
  for (auto& pc : f.pieces())
    if (sgn(pc.value) <= 0) fail(Errc::NonPositive, "weight piece value must be > 0");
  WeightFn w;
  w.fn_ = std::move(f);
  return w;
}

WeightFn WeightFn::uniform(const Rational& c) { return make(SimpleFunction::constant(c)); }

WeightFn WeightFn::reciprocal() const {
  std::vector<SimpleFunction::Piece> pieces;
  for (auto& pc : fn_.pieces()) pieces.push_back({pc.region, Rational(1 / pc.value)});
  return make(SimpleFunction::make(fn_.depth(), std::move(pieces),
                                   Rational(1 / fn_.default_value()), false));
}

WeightFn WeightFn::power_int(long e) const {
  std::vector<SimpleFunction::Piece> pieces;
  for (auto& pc : fn_.pieces()) pieces.push_back({pc.region, pow_int(pc.value, e)});
  return make(SimpleFunction::make(fn_.depth(), std::move(pieces),
                                   pow_int(fn_.default_value(), e), false));
}

Rational average(const SimpleFunction& f, const CubeSpec& q) {
  return f.integral_over(cube_region(q)) / q.measure();
}

namespace {
Rational piece_weight(const Region& r, const WeightFn* w) {
  return w ? w->measure(r) : r.measure();
}
}  // namespace

Rational lq_norm_pow(const SimpleFunction& f, const Rational& q, const WeightFn* w) {
  if (q < 1) fail(Errc::InvalidArgument, "q must be >= 1");
  Rational total(0), covered(0);
  for (auto& pc : f.pieces()) {
    auto vq = exact_pow(abs(pc.value), q);
    if (!vq) fail(Errc::IrrationalPower, "a piece value has irrational q-th power");
    Rational wm = piece_weight(pc.region, w);
    total += *vq * wm;
    covered += wm;
  }
  if (sgn(f.default_value()) != 0) {
    auto vq = exact_pow(abs(f.default_value()), q);
    if (!vq) fail(Errc::IrrationalPower, "default value has irrational q-th power");
    Rational whole = w ? w->total() : Rational(1);
    total += *vq * (whole - covered);
  }
  return total;
}

Rational weak_lq_norm_pow(const SimpleFunction& f, const Rational& q, const WeightFn* w,
                          const Region* within) {
  if (q < 1) fail(Errc::InvalidArgument, "q must be >= 1");
  auto levels = f.levels_desc();
  Rational best(0);
  for (auto& v : levels) {
    Rational lvl(0);
    for (auto& pc : f.pieces()) {
      if (abs(pc.value) >= v)
        lvl += piece_weight(within ? region_intersect(pc.region, *within) : pc.region, w);
    }
    if (sgn(f.default_value()) != 0 && abs(f.default_value()) >= v) {
      // remainder of the torus (or of `within`) carrying the default value
      Rational whole;
      Rational covered(0);
      if (within) {
        whole = piece_weight(*within, w);
        for (auto& pc : f.pieces())
          covered += piece_weight(region_intersect(pc.region, *within), w);
      } else {
        whole = w ? w->total() : Rational(1);
        for (auto& pc : f.pieces()) covered += piece_weight(pc.region, w);
      }
      lvl += whole - covered;
    }
    auto vq = exact_pow(v, q);
    if (!vq) fail(Errc::IrrationalPower, "a level has irrational q-th power");
    Rational cand = *vq * lvl;
    if (cand > best) best = cand;
  }
  return best;
}

WeightFn tensor_weight(const std::vector<WeightFactor>& factors) {
  for (auto& f : factors) {
    if (f.cuts.size() < 2 || sgn(f.cuts.front()) != 0 || f.cuts.back() != 1)
      fail(Errc::InvalidArgument, "factor cuts must partition [0,1)");
    if (f.values.size() + 1 != f.cuts.size())
      fail(Errc::InvalidArgument, "factor values/cuts size mismatch");
    for (std::size_t i = 0; i + 1 < f.cuts.size(); ++i)
      if (f.cuts[i] >= f.cuts[i + 1]) fail(Errc::InvalidArgument, "factor cuts not increasing");
    for (auto& v : f.values)
      if (sgn(v) <= 0) fail(Errc::NonPositive, "factor value must be > 0");
  }
  std::size_t d = factors.size();
  std::vector<SimpleFunction::Piece> pieces;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<Arc> arcs;
    Rational value(1);
    for (std::size_t i = 0; i < d; ++i) {
      const auto& f = factors[i];
      arcs.emplace_back(f.cuts[idx[i]], f.cuts[idx[i] + 1] - f.cuts[idx[i]]);
      value *= f.values[idx[i]];
    }
    pieces.push_back({Region::of_box(Box(std::move(arcs))), value});
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < factors[i].values.size()) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
  // The last grid cell's value becomes the default so constant tails fold away;
  // an all-constant product collapses to the uniform weight.
  Rational def = pieces.empty() ? Rational(1) : pieces.back().value;
  std::vector<SimpleFunction::Piece> kept;
  for (auto& p : pieces)
    if (p.value != def) kept.push_back(std::move(p));
  return WeightFn::make(SimpleFunction::make(d, std::move(kept), def, false));
}

Rational cylinder_weighted_measure(const WeightFn* w, const std::vector<Arc>& head_arcs,
                                   const Rational& total_measure) {
  if (!w) return total_measure;
  std::size_t dw = w->fn().depth();
  std::vector<Arc> head(head_arcs.begin(),
                        head_arcs.begin() + std::min<std::size_t>(dw, head_arcs.size()));
  Rational head_measure(1);
  for (auto& a : head) head_measure *= a.length;
  Region proj = Region::of_boxes(dw, {Box(std::move(head))}, false);
  return w->measure(proj) * (total_measure / head_measure);
}

}  // namespace torus
