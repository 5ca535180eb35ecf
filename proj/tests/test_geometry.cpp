#include "doctest.h"
#include "torus/geometry.hpp"

using namespace torus;

namespace {

Region box1(const Rational& s, const Rational& len) { return Region::of_box(Box({Arc(s, len)})); }

// Random region at the given depth from a coarse grid; used by the property
// checks below.
Region random_region(Rng& rng, std::size_t depth, long grid = 8) {
  std::vector<Box> boxes;
  long tries = rng.range(1, 3);
  for (long t = 0; t < tries; ++t) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < depth; ++i) {
      long a = rng.range(0, grid - 1);
      long b = rng.range(1, grid - a);
      arcs.emplace_back(rat(a, grid), rat(b, grid));
    }
    boxes.push_back(Box(std::move(arcs)));
  }
  // Make them disjoint by subtracting earlier boxes.
  Region r = Region::empty(depth);
  for (auto& b : boxes) r = region_union(r, Region::of_box(b).promoted(depth));
  return r;
}

}  // namespace

TEST_CASE("arc validation") {
  CHECK_THROWS_AS(Arc(rat(1), rat(1, 2)), Error);
  CHECK_THROWS_AS(Arc(rat(1, 2), rat(0)), Error);
  CHECK(Arc(rat(3, 4), rat(1, 2)).wraps());
  CHECK(!Arc(rat(1, 4), rat(1, 2)).wraps());
}

TEST_CASE("intersection identity and hand cases") {
  Region full = Region::full();
  CHECK(region_intersect(full, full).measure() == 1);

  Region a = box1(rat(0), rat(1, 2));
  Region b = box1(rat(1, 4), rat(1, 2));
  Region i = region_intersect(a, b);
  CHECK(i.measure() == rat(1, 4));
  CHECK(i.contains(Point({rat(1, 4)})));
  CHECK(!i.contains(Point({rat(1, 8)})));

  // wrapping arc [3/4, 1/4) vs [0, 1/2) -> [0, 1/4)
  Region w = box1(rat(3, 4), rat(1, 2));
  Region c = box1(rat(0), rat(1, 2));
  Region iw = region_intersect(w, c);
  CHECK(iw.measure() == rat(1, 4));
  CHECK(iw.contains(Point({rat(1, 8)})));
  CHECK(!iw.contains(Point({rat(3, 8)})));
}

TEST_CASE("subtraction hand cases") {
  Region a = box1(rat(0), rat(1, 2));
  CHECK(region_subtract(a, a).measure() == 0);
  Region b = box1(rat(1, 4), rat(1, 2));
  Region d = region_subtract(a, b);
  CHECK(d.measure() == rat(1, 4));
  CHECK(d.contains(Point({rat(1, 8)})));
  CHECK(!d.contains(Point({rat(3, 8)})));
  CHECK(region_subtract(Region::full(), Region::empty()).measure() == 1);
}

TEST_CASE("measures multiply over coordinates") {
  Region v7 = Region::of_box(
      Box({Arc(rat(0), rat(1, 8)), Arc(rat(0), rat(1, 4)), Arc(rat(0), rat(1, 4))}));
  CHECK(v7.measure() == rat(1, 128));
  Region two = Region::of_boxes(
      1, {Box({Arc(rat(0), rat(1, 4))}), Box({Arc(rat(1, 2), rat(1, 4))})});
  CHECK(two.measure() == rat(1, 2));
}

TEST_CASE("disjointness is checked on construction") {
  CHECK_THROWS_AS(Region::of_boxes(1, {Box({Arc(rat(0), rat(1, 2))}),
                                       Box({Arc(rat(1, 4), rat(1, 2))})}),
                  Error);
}

TEST_CASE("measure additivity and inclusion-exclusion properties") {
  Rng rng(42);
  for (int it = 0; it < 60; ++it) {
    std::size_t depth = 1 + rng.below(3);
    Region a = random_region(rng, depth);
    Region b = random_region(rng, depth);
    Region i = region_intersect(a, b);
    Region u = region_union(a, b);
    CHECK(a.measure() + b.measure() == i.measure() + u.measure());
    Region bmina = region_subtract(b, a);
    CHECK(u.measure() == a.measure() + bmina.measure());
    CHECK(a.measure() == region_subtract(a, b).measure() + i.measure());
    CHECK(i.measure() <= std::min(a.measure(), b.measure()));
  }
}

TEST_CASE("depth promotion changes nothing") {
  Rng rng(7);
  for (int it = 0; it < 20; ++it) {
    Region a = random_region(rng, 2);
    Region b = random_region(rng, 2);
    Region ap = a.promoted(4);
    CHECK(ap.measure() == a.measure());
    CHECK(region_intersect(ap, b).measure() == region_intersect(a, b).measure());
    CHECK(regions_equal(region_intersect(ap, b.promoted(3)), region_intersect(a, b)));
  }
}

TEST_CASE("monte carlo membership matches exact measure") {
  Rng rng(2026);
  for (int it = 0; it < 4; ++it) {
    Region r = random_region(rng, 3);
    const int n = 100000;
    int hits = 0;
    for (int s = 0; s < n; ++s) {
      Point p({rng.unit_rational(), rng.unit_rational(), rng.unit_rational()});
      if (r.contains(p)) ++hits;
    }
    double mu = to_double(r.measure());
    double sigma = std::sqrt(std::max(mu * (1 - mu), 1e-12) / n);
    CHECK(std::abs(hits / double(n) - mu) <= 5 * sigma + 1e-9);
  }
}

TEST_CASE("metric partial sums") {
  auto [l0, u0] = torus_metric(Point{}, Point{}, 10);
  CHECK(l0 == 0);
  CHECK(u0 == pow2(-10));
  auto [l1, u1] = torus_metric(Point{}, Point({rat(1, 2)}), 4);
  CHECK(l1 == rat(1, 4));  // min(1/2, 1/2) / 2
  auto [l2, u2] = torus_metric(Point{}, Point({rat(1, 4), rat(1, 4)}), 8);
  CHECK(l2 == rat(3, 16));  // 1/8 + 1/16
  CHECK(u2 == l2 + pow2(-8));
  // circle distance: |0 - 7/8| = 7/8 but the circle distance is 1/8
  auto [l3, u3] = torus_metric(Point{}, Point({rat(7, 8)}), 2);
  CHECK(l3 == rat(1, 16));
  CHECK_THROWS_AS(torus_metric(Point({rat(1, 2), rat(1, 2)}), Point{}, 1), Error);
}
