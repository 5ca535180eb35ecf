#include <map>

#include "doctest.h"
#include "torus/basis.hpp"

using namespace torus;

TEST_CASE("sizelevel decomposition m = n^2 + j") {
  for (long m = 1; m <= 500; ++m) {
    SizeLevel s = SizeLevel::of(m);
    CHECK(s.n * s.n + s.j == m);
    CHECK(s.j >= 1);
    CHECK(s.j <= 2 * s.n + 1);
    CHECK(s.ell() == s.n + 1);
  }
  CHECK(SizeLevel::of(0).ell() == 0);
  CHECK(SizeLevel::of(7).n == 2);
  CHECK(SizeLevel::of(7).j == 3);
}

TEST_CASE("fundamental domains") {
  CHECK(fundamental_domain(0).depth() == 0);
  CHECK(fundamental_domain(0).measure() == 1);

  Box v7 = fundamental_domain(7);
  REQUIRE(v7.depth() == 3);
  CHECK(v7.arcs[0].length == rat(1, 8));
  CHECK(v7.arcs[1].length == rat(1, 4));
  CHECK(v7.arcs[2].length == rat(1, 4));

  Box v5 = fundamental_domain(5);
  REQUIRE(v5.depth() == 3);
  CHECK(v5.arcs[0].length == rat(1, 4));
  CHECK(v5.arcs[1].length == rat(1, 4));
  CHECK(v5.arcs[2].length == rat(1, 2));

  for (long m = 0; m <= 60; ++m) CHECK(fundamental_domain(m).measure() == pow2(-m));
  // big-denominator levels
  for (long m : {200L, 1000L, 4000L}) CHECK(fundamental_domain(m).measure() == pow2(-m));
}

TEST_CASE("halved coordinate") {
  CHECK(halved_coordinate(1) == 1);
  CHECK(halved_coordinate(3) == 1);
  CHECK(halved_coordinate(7) == 1);
  // consistency: it is the unique coordinate whose exponent increments
  for (long m = 1; m <= 400; ++m) {
    auto prev = side_exponents(m - 1);
    auto cur = side_exponents(m);
    long hc = halved_coordinate(m);
    for (long i = 0; i < static_cast<long>(cur.size()); ++i) {
      long pe = i < static_cast<long>(prev.size()) ? prev[i] : 0;
      if (i == hc - 1)
        CHECK(cur[i] == pe + 1);
      else
        CHECK(cur[i] == pe);
    }
  }
}

TEST_CASE("subgroup enumeration") {
  auto h0 = subgroup_elements(0);
  REQUIRE(h0.size() == 1);
  CHECK(h0[0].coords.empty());

  auto h1 = subgroup_elements(1);
  REQUIRE(h1.size() == 2);
  CHECK(h1[0].coord(0) == 0);
  CHECK(h1[1].coord(0) == rat(1, 2));

  auto h2 = subgroup_elements(2);
  REQUIRE(h2.size() == 4);
  std::map<std::pair<Rational, Rational>, int> seen;
  for (auto& p : h2) seen[{p.coord(0), p.coord(1)}]++;
  CHECK(seen.size() == 4);
  CHECK(seen.count({rat(1, 2), rat(1, 2)}) == 1);

  for (long m = 3; m <= 10; ++m) CHECK(subgroup_elements(m).size() == (1u << m));
  CHECK_THROWS_AS(subgroup_elements(23), Error);
}

TEST_CASE("locate is coordinate-wise flooring") {
  for (long m : {0L, 1L, 5L, 13L, 50L}) {
    CubeSpec c = locate(Point{}, m);
    for (auto& t : c.translation) CHECK(t == 0);
    CHECK(c.dyadic);
  }
  CubeSpec c2 = locate(Point({rat(3, 10), rat(3, 5)}), 2);
  CHECK(c2.translation == std::vector<Rational>{rat(0), rat(1, 2)});
  CubeSpec c5 = locate(Point({rat(3, 10), rat(3, 5), rat(1, 5)}), 5);
  CHECK(c5.translation == std::vector<Rational>{rat(1, 4), rat(1, 2), rat(0)});

  CHECK_THROWS_AS(locate(Point({rat(1, 2)}), 1, /*strict_open=*/true), Error);
  CHECK_NOTHROW(locate(Point({rat(1, 2)}), 1));
}

TEST_CASE("cube regions") {
  CubeSpec v2 = locate(Point{}, 2);
  Region r = cube_region(v2);
  CHECK(r.measure() == rat(1, 4));
  CHECK(r.contains(Point({rat(1, 4), rat(1, 4)})));

  CubeSpec shifted = make_cube(2, {rat(3, 4), rat(0)});
  Region rs = cube_region(shifted);
  CHECK(rs.measure() == rat(1, 4));
  CHECK(rs.contains(Point({rat(7, 8), rat(1, 4)})));
  CHECK(rs.contains(Point({rat(1, 8), rat(1, 4)})));  // wraps through 0
  CHECK(!rs.contains(Point({rat(1, 2), rat(1, 4)})));

  CHECK(cube_region(locate(Point{}, 0)).measure() == 1);
}

TEST_CASE("ancestor chains") {
  CubeSpec child = make_cube(2, {rat(0), rat(1, 2)}, /*dyadic_hint=*/true);
  auto chain = ancestor_chain(child);
  REQUIRE(chain.size() == 3);
  CHECK(chain[1].m == 1);
  CHECK(chain[1].translation == std::vector<Rational>{rat(0)});
  CHECK(chain[2].m == 0);
  CHECK(chain[2].translation.empty());

  CubeSpec deep = locate(Point({rat(3, 10), rat(3, 5), rat(1, 5)}), 7);
  auto chain7 = ancestor_chain(deep);
  CHECK(chain7.size() == 8);
  for (std::size_t k = 0; k + 1 < chain7.size(); ++k) {
    Region fine = cube_region(chain7[k]);
    Region coarse = cube_region(chain7[k + 1]);
    CHECK(regions_equal(region_intersect(fine, coarse), fine));  // nesting
    CHECK(chain7[k + 1].measure() == chain7[k].measure() * 2);
  }

  auto root = ancestor_chain(locate(Point{}, 0));
  CHECK(root.size() == 1);

  CubeSpec nondyadic = make_cube(2, {rat(1, 3), rat(0)});
  CHECK_THROWS_AS(ancestor_chain(nondyadic), Error);
}

TEST_CASE("dyadic partition at small levels") {
  for (long m = 0; m <= 8; ++m) {
    auto pts = subgroup_elements(m);
    Rational total(0);
    Region seen = Region::empty(SizeLevel::of(m).ell());
    for (auto& t : pts) {
      std::vector<Rational> tr(t.coords.begin(), t.coords.end());
      tr.resize(SizeLevel::of(m).ell(), Rational(0));
      Region cell = cube_region(make_cube(m, tr, true));
      CHECK(cell.measure() == pow2(-m));
      CHECK(region_intersect(seen, cell).measure() == 0);
      seen = region_union(seen, cell);
      total += cell.measure();
    }
    CHECK(total == 1);
  }
}

TEST_CASE("locate nesting across levels") {
  Rng rng(5);
  for (int it = 0; it < 40; ++it) {
    Point p({rng.unit_rational(10), rng.unit_rational(10), rng.unit_rational(10),
             rng.unit_rational(10)});
    for (long m = 0; m < 30; ++m) {
      CubeSpec a = locate(p, m);
      CubeSpec b = locate(p, m + 1);
      Region ra = cube_region(a), rb = cube_region(b);
      CHECK(regions_equal(region_intersect(ra, rb), rb));
      CHECK(rb.contains(p));
      CHECK(ra.contains(p));
    }
  }
}

TEST_CASE("locate agrees with membership on ten thousand points") {
  Rng rng(77);
  long checks = 0;
  while (checks < 10000) {
    Point p({rng.unit_rational(12), rng.unit_rational(12), rng.unit_rational(12)});
    long m = rng.range(0, 26);
    CubeSpec c = locate(p, m);
    CHECK(cube_region(c).contains(p));
    ++checks;
  }
}

TEST_CASE("measures stay exact at sizelevel 60") {
  Rng rng(11);
  for (int it = 0; it < 10; ++it) {
    Point p({rng.unit_rational(), rng.unit_rational(), rng.unit_rational(),
             rng.unit_rational(), rng.unit_rational(), rng.unit_rational(),
             rng.unit_rational(), rng.unit_rational()});
    CubeSpec c = locate(p, 60);
    CHECK(cube_region(c).measure() == pow2(-60));
  }
}
