#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torus/rational.hpp"

namespace torus {

// A point of T^omega with finitely many explicit coordinates; all later
// coordinates are 0. Coordinates live in [0,1).
struct Point {
  std::vector<Rational> coords;
  Point() = default;
  explicit Point(std::vector<Rational> c);
  const Rational& coord(std::size_t i) const;  // 0-based, implicit zeros
  static const Rational& zero();
};

// Circular arc [start, start+length) with start in [0,1), length in (0,1].
// start+length > 1 wraps around 0.
struct Arc {
  Rational start;
  Rational length;
  Arc(Rational s, Rational l);
  bool wraps() const { return start + length > 1; }
};

// Axis-aligned product of arcs at a finite cylinder depth.
struct Box {
  std::vector<Arc> arcs;
  Box() = default;
  explicit Box(std::vector<Arc> a) : arcs(std::move(a)) {}
  std::size_t depth() const { return arcs.size(); }
  Rational measure() const;
};

// Finite disjoint union of boxes, constant in all coordinates beyond `depth`.
// Normalized form: every stored box is non-wrapping in every coordinate.
class Region {
 public:
  Region() = default;  // empty at depth 0
  static Region full(std::size_t depth = 0);
  static Region empty(std::size_t depth = 0);
  static Region of_box(const Box& b);
  static Region of_boxes(std::size_t depth, const std::vector<Box>& boxes,
                         bool check_disjoint = true);

  std::size_t depth() const { return depth_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool is_empty() const { return boxes_.empty(); }
  Rational measure() const;
  bool contains(const Point& p) const;
  Region promoted(std::size_t depth) const;

 private:
  friend Region region_intersect(const Region&, const Region&);
  friend Region region_subtract(const Region&, const Region&);
  std::size_t depth_ = 0;
  std::vector<Box> boxes_;  // pairwise disjoint, non-wrapping
};

Region region_intersect(const Region& a, const Region& b);
Region region_subtract(const Region& a, const Region& b);
Region region_union(const Region& a, const Region& b);
bool regions_equal(const Region& a, const Region& b);
Rational region_measure(const Region& a);

// Exact partial sum of the product metric over the first tail_depth
// coordinates (per-coordinate circle distance), plus the 2^-tail_depth bound
// on whatever an infinite tail could still contribute.
std::pair<Rational, Rational> torus_metric(const Point& x, const Point& y, long tail_depth);

}  // namespace torus
