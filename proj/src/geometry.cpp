#include "torus/geometry.hpp"

#include <algorithm>

namespace torus {

namespace {

// Non-wrapping half-open interval [lo, hi) inside [0,1].
struct Iv {
  Rational lo, hi;
  Rational len() const { return hi - lo; }
};

std::vector<Iv> arc_pieces(const Arc& a) {
  if (!a.wraps()) return {{a.start, a.start + a.length}};
  return {{Rational(0), a.start + a.length - 1}, {a.start, Rational(1)}};
}

std::optional<Iv> iv_intersect(const Iv& a, const Iv& b) {
  Rational lo = std::max(a.lo, b.lo);
  Rational hi = std::min(a.hi, b.hi);
  if (lo >= hi) return std::nullopt;
  return Iv{lo, hi};
}

Arc iv_arc(const Iv& v) { return Arc(v.lo, v.hi - v.lo); }

// Every box handled below is non-wrapping in every coordinate.
std::optional<Box> box_intersect(const Box& a, const Box& b) {
  std::size_t d = std::max(a.depth(), b.depth());
  std::vector<Arc> out;
  out.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Iv ai = i < a.depth() ? Iv{a.arcs[i].start, a.arcs[i].start + a.arcs[i].length}
                          : Iv{Rational(0), Rational(1)};
    Iv bi = i < b.depth() ? Iv{b.arcs[i].start, b.arcs[i].start + b.arcs[i].length}
                          : Iv{Rational(0), Rational(1)};
    auto v = iv_intersect(ai, bi);
    if (!v) return std::nullopt;
    out.push_back(iv_arc(*v));
  }
  return Box(std::move(out));
}

Iv box_iv(const Box& b, std::size_t i) {
  if (i < b.depth()) return Iv{b.arcs[i].start, b.arcs[i].start + b.arcs[i].length};
  return Iv{Rational(0), Rational(1)};
}

// a \ b as disjoint slabs; both non-wrapping, same depth.
std::vector<Box> box_subtract(const Box& a, const Box& b, std::size_t depth) {
  auto ov = box_intersect(a, b);
  if (!ov) return {a};
  std::vector<Box> out;
  for (std::size_t i = 0; i < depth; ++i) {
    Iv ai = box_iv(a, i);
    Iv oi = box_iv(*ov, i);
    auto slab = [&](const Iv& piece) {
      if (piece.lo >= piece.hi) return;
      std::vector<Arc> arcs;
      arcs.reserve(depth);
      for (std::size_t j = 0; j < i; ++j) arcs.push_back(iv_arc(box_iv(*ov, j)));
      arcs.push_back(iv_arc(piece));
      for (std::size_t j = i + 1; j < depth; ++j) arcs.push_back(iv_arc(box_iv(a, j)));
      out.push_back(Box(std::move(arcs)));
    };
    slab(Iv{ai.lo, oi.lo});
    slab(Iv{oi.hi, ai.hi});
  }
  return out;
}

// Split wrapping arcs so every stored box is non-wrapping.
void append_normalized(std::vector<Box>& out, const Box& b, std::size_t depth) {
  std::vector<std::vector<Iv>> per_coord;
  per_coord.reserve(depth);
  for (std::size_t i = 0; i < depth; ++i) {
    if (i < b.depth())
      per_coord.push_back(arc_pieces(b.arcs[i]));
    else
      per_coord.push_back({Iv{Rational(0), Rational(1)}});
  }
  std::vector<std::size_t> idx(depth, 0);
  while (true) {
    std::vector<Arc> arcs;
    arcs.reserve(depth);
    for (std::size_t i = 0; i < depth; ++i) arcs.push_back(iv_arc(per_coord[i][idx[i]]));
    out.push_back(Box(std::move(arcs)));
    std::size_t i = 0;
    for (; i < depth; ++i) {
      if (++idx[i] < per_coord[i].size()) break;
      idx[i] = 0;
    }
    if (i == depth) break;
  }
}

}  // namespace

Point::Point(std::vector<Rational> c) : coords(std::move(c)) {
  for (auto& x : coords)
    if (sgn(x) < 0 || x >= 1) fail(Errc::InvalidArgument, "point coordinate outside [0,1)");
}

const Rational& Point::zero() {
  static const Rational z(0);
  return z;
}

const Rational& Point::coord(std::size_t i) const {
  return i < coords.size() ? coords[i] : zero();
}

Arc::Arc(Rational s, Rational l) : start(std::move(s)), length(std::move(l)) {
  if (sgn(start) < 0 || start >= 1) fail(Errc::InvalidArgument, "arc start outside [0,1)");
  if (sgn(length) <= 0 || length > 1) fail(Errc::InvalidArgument, "arc length outside (0,1]");
}

Rational Box::measure() const {
  Rational m(1);
  for (auto& a : arcs) m *= a.length;
  return m;
}

Region Region::full(std::size_t depth) {
  Region r;
  r.depth_ = depth;
  r.boxes_.push_back(Box{});
  return r;
}

Region Region::empty(std::size_t depth) {
  Region r;
  r.depth_ = depth;
  return r;
}

Region Region::of_box(const Box& b) { return of_boxes(b.depth(), {b}, false); }

Region Region::of_boxes(std::size_t depth, const std::vector<Box>& boxes, bool check_disjoint) {
  Region r;
  r.depth_ = depth;
  for (auto& b : boxes) {
    if (b.depth() > depth) fail(Errc::InvalidArgument, "box deeper than region");
    append_normalized(r.boxes_, b, depth);
  }
  if (check_disjoint) {
    for (std::size_t i = 0; i < r.boxes_.size(); ++i)
      for (std::size_t j = i + 1; j < r.boxes_.size(); ++j)
        if (box_intersect(r.boxes_[i], r.boxes_[j]))
          fail(Errc::InvalidArgument, "region boxes overlap");
  }
  return r;
}

Rational Region::measure() const {
  Rational m(0);
  for (auto& b : boxes_) m += b.measure();
  return m;
}

bool Region::contains(const Point& p) const {
  for (auto& b : boxes_) {
    bool in = true;
    for (std::size_t i = 0; i < b.depth() && in; ++i) {
      const Rational& x = p.coord(i);
      in = x >= b.arcs[i].start && x < b.arcs[i].start + b.arcs[i].length;
    }
    if (in) return true;
  }
  return false;
}

Region Region::promoted(std::size_t depth) const {
  if (depth < depth_) fail(Errc::InvalidArgument, "cannot demote region depth");
  Region r = *this;
  r.depth_ = depth;  // boxes keep implicit full arcs beyond their own depth
  return r;
}

Region region_intersect(const Region& a, const Region& b) {
  std::size_t d = std::max(a.depth(), b.depth());
  Region r;
  r.depth_ = d;
  for (auto& ba : a.boxes())
    for (auto& bb : b.boxes())
      if (auto x = box_intersect(ba, bb)) r.boxes_.push_back(std::move(*x));
  return r;
}

Region region_subtract(const Region& a, const Region& b) {
  std::size_t d = std::max(a.depth(), b.depth());
  Region r;
  r.depth_ = d;
  for (auto& ba : a.boxes()) {
    std::vector<Box> pieces{ba};
    for (auto& bb : b.boxes()) {
      std::vector<Box> next;
      for (auto& p : pieces) {
        auto sub = box_subtract(p, bb, d);
        next.insert(next.end(), sub.begin(), sub.end());
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    r.boxes_.insert(r.boxes_.end(), pieces.begin(), pieces.end());
  }
  return r;
}

Region region_union(const Region& a, const Region& b) {
  Region extra = region_subtract(b, a);
  std::size_t d = std::max(a.depth(), b.depth());
  std::vector<Box> boxes = a.boxes();
  boxes.insert(boxes.end(), extra.boxes().begin(), extra.boxes().end());
  return Region::of_boxes(d, boxes, false);
}

bool regions_equal(const Region& a, const Region& b) {
  return sgn(region_subtract(a, b).measure()) == 0 && sgn(region_subtract(b, a).measure()) == 0;
}

Rational region_measure(const Region& a) { return a.measure(); }

std::pair<Rational, Rational> torus_metric(const Point& x, const Point& y, long tail_depth) {
  long need = static_cast<long>(std::max(x.coords.size(), y.coords.size()));
  if (tail_depth < need) fail(Errc::InvalidArgument, "tail_depth below coordinate count");
  Rational lower(0);
  for (long n = 1; n <= tail_depth; ++n) {
    Rational t = abs(x.coord(n - 1) - y.coord(n - 1));
    Rational circ = std::min(t, Rational(1 - t));
    lower += circ * pow2(-n);
  }
  return {lower, lower + pow2(-tail_depth)};
}

}  // namespace torus
