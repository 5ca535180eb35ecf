#include <cmath>

#include "doctest.h"
#include "torus/binomial.hpp"

using namespace torus;
using namespace torus::binomial;

TEST_CASE("pmf sums to one exactly") {
  Rng rng(3);
  for (int it = 0; it < 30; ++it) {
    long m = rng.range(0, 25);
    Rational p = rat(rng.range(0, 7), 7);
    auto f = pmf(m, p);
    Rational s(0);
    for (auto& v : f) s += v;
    CHECK(s == 1);
  }
}

TEST_CASE("tails") {
  CHECK(alpha(5, rat(1, 3), 0) == 1);
  CHECK(alpha(2, rat(1, 2), 1) == rat(3, 4));
  CHECK(alpha(2, rat(1, 2), 2) == rat(1, 4));
  CHECK(alpha(2, rat(1, 2), 3) == 0);
}

TEST_CASE("feller identity equals the tail, exactly") {
  CHECK(feller_tail(2, rat(1, 2), 0) == rat(3, 4));
  CHECK(feller_tail(2, rat(1), 1) == 1);  // certain event
  CHECK(feller_tail(3, rat(1, 4), 1) == rat(10, 64));
  Rng rng(12);
  for (int it = 0; it < 60; ++it) {
    long m = rng.range(1, 40);
    Rational p = rat(rng.range(0, 11), 11);
    long k = rng.range(0, m - 1);
    CHECK(feller_tail(m, p, k) == alpha(m, p, k + 1));
  }
}

TEST_CASE("dominance of tails in p") {
  CHECK(dominance_check(3, rat(1, 2), rat(1, 2)));
  CHECK(dominance_check(3, rat(1, 4), rat(1, 2)));
  CHECK(dominance_check(7, rat(0), rat(1, 3)));
  CHECK_THROWS_AS(dominance_check(3, rat(2, 3), rat(1, 3)), Error);
  Rng rng(21);
  for (int it = 0; it < 100; ++it) {
    long m = rng.range(1, 30);
    long db = rng.range(1, 9);
    long a = rng.range(0, db), b = rng.range(0, db);
    Rational eps = rat(std::min(a, b), db), p = rat(std::max(a, b), db);
    CHECK(dominance_check(m, eps, p));
  }
}

TEST_CASE("step profile and H function") {
  StepProfile prof = step_profile(2, rat(1, 2));
  CHECK(prof.alpha == std::vector<Rational>{rat(1), rat(3, 4), rat(1, 4), rat(0)});
  CHECK(prof.integral() == 1);  // m p
  CHECK(prof.value_at(rat(1, 8)) == 2);
  CHECK(prof.value_at(rat(1, 2)) == 1);
  CHECK(prof.value_at(rat(7, 8)) == 0);

  HFunction h = h_function(2, rat(1, 2));
  CHECK(h(rat(1, 4)) == rat(1, 2));
  CHECK(h(rat(3, 4)) == 1);
  CHECK(h(rat(1)) == 1);
  CHECK(h(rat(0)) == 0);

  Rng rng(9);
  for (int it = 0; it < 25; ++it) {
    long m = rng.range(1, 20);
    Rational p = rat(rng.range(0, 5), 5);
    HFunction hh = h_function(m, p);
    CHECK(hh(rat(1)) == rat(m) * p);
    // concavity at midpoints of consecutive breakpoints, plus slope ordering
    const auto& prof2 = hh.profile();
    for (long l = 1; l <= m; ++l) {
      Rational a = prof2.alpha[l + 1], b = prof2.alpha[l];
      if (a == b) continue;
      Rational mid = (a + b) / 2;
      CHECK(hh(mid) * 2 >= hh(a) + hh(b));  // concave
    }
  }
}

TEST_CASE("H dominance under eps <= p") {
  Rng rng(14);
  for (int it = 0; it < 25; ++it) {
    long m = rng.range(1, 15);
    long db = rng.range(1, 9);
    long a = rng.range(0, db), b = rng.range(0, db);
    Rational eps = rat(std::min(a, b), db), p = rat(std::max(a, b), db);
    HFunction he = h_function(m, eps), hp = h_function(m, p);
    for (auto& t : he.profile().alpha) CHECK(he(t) <= hp(t));
    for (auto& t : hp.profile().alpha) CHECK(he(t) <= hp(t));
  }
}

TEST_CASE("rearrangement extremality") {
  auto rep = rearrangement_sup_check(2, rat(1, 2), rat(1, 4), 200, 77);
  CHECK(rep.h_at_t == rat(1, 2));
  CHECK(rep.greedy_attains);
  CHECK(rep.all_below);

  auto rep1 = rearrangement_sup_check(5, rat(1, 3), rat(1), 50, 1);
  CHECK(rep1.greedy_value == rep1.h_at_t);  // t = 1: everything is taken

  Rng rng(31);
  for (int it = 0; it < 10; ++it) {
    long m = rng.range(1, 10);
    Rational p = rat(rng.range(1, 4), 5);
    Rational t = rat(rng.range(1, 8), 8);
    auto r = rearrangement_sup_check(m, p, t, 100, rng.next());
    CHECK(r.all_below);
    CHECK(r.greedy_attains);
  }
}

TEST_CASE("float tails agree with exact tails where both apply") {
  for (long m : {5L, 20L, 60L}) {
    Rational p = rat(1, 4);
    auto exact = step_profile(m, p).alpha;
    auto d = tails_d(m, to_double(p));
    for (long l = 0; l <= m + 1; ++l) {
      double e = to_double(exact[l]);
      CHECK(std::abs(d[l] - e) <= 1e-12 * std::max(1.0, e) + 1e-300);
    }
  }
}

TEST_CASE("f_sup basics") {
  CHECK(f_sup(1, 2.0, 1.0) == doctest::Approx(1.0));
  // hand case: m = 4, q = 2 gives p = 1/2; the sup sits at the breakpoint
  // alpha_2 = 11/16 where H = 7/4
  CHECK(f_sup(4, 2.0, 1.0) == doctest::Approx(1.75 / (2.0 * std::sqrt(11.0 / 16.0))));
  for (long m : {2L, 7L, 64L, 1000L}) {
    double p = model_p(m, 2.0, 1.0);
    // H <= mt and H <= mp make F peak at t = p with value m^(1/q) p^(1-1/q)
    double trivial = std::pow(static_cast<double>(m), 0.5) * std::pow(p, 0.5);
    CHECK(f_sup(m, 2.0, 1.0) <= trivial + 1e-9);
    CHECK(f_sup(m, 2.0, 1.0) > 0.0);
  }
}

TEST_CASE("eqfm identity to 1e-9") {
  for (long m : {4L, 64L, 1024L}) {
    for (double q : {1.3, golden_ratio(), 2.0, 3.0}) {
      auto [a, b] = eqfm_sides(m, q, 1.0);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("f_sup below the integral route") {
  for (long m : {8L, 128L, 512L}) {
    for (double q : {golden_ratio(), 2.0, 3.0}) {
      auto [integral, sum] = eqfm_sides(m, q, 1.0);
      CHECK(f_sup(m, q, 1.0) <= integral + 1e-9);
      (void)sum;
    }
  }
}

TEST_CASE("chebyshev band bound") {
  CHECK(m0_for(2.0, 1.0) == 1);
  auto [lhs, rhs] = chebyshev_sum_bound(16, 2.0, 1.0);
  CHECK(lhs <= rhs);
  // band count for q = 2, cq = 1, m = 16: floor(sqrt(16^1.5)) = 8
  CHECK(static_cast<long>(std::floor(std::sqrt(std::pow(16.0, 1.5)))) == 8);
  for (long m : {1L, 5L, 37L, 256L, 1333L}) {
    for (double q : {golden_ratio(), 2.0, 3.0}) {
      auto [l2, r2] = chebyshev_sum_bound(m, q, 1.0);
      CHECK(l2 <= r2);
    }
  }
  CHECK_THROWS_AS(chebyshev_sum_bound(16, 1.3, 1.0), Error);  // below the golden ratio
  // m0 is computed, not assumed: cq = 3 at q = 2 needs m >= 9
  CHECK(m0_for(2.0, 3.0) == 9);
  CHECK_THROWS_AS(chebyshev_sum_bound(4, 2.0, 3.0), Error);
  CHECK_NOTHROW(chebyshev_sum_bound(9, 2.0, 3.0));
}

TEST_CASE("moment route") {
  // R = 1 collapses to the first-moment identity: ratio = cq when p < 1
  auto r1 = moment_route_bound(1024, 1.5, 1, 1.0);
  CHECK(r1.ratio == doctest::Approx(1.0));
  CHECK(!r1.exponent_ok);

  auto r4 = moment_route_bound(1024, 1.5, 4, 1.0);
  CHECK(r4.exponent_ok);  // 4 - 4/1.5 = 4/3 > 1
  CHECK(r4.ratio > 0.0);
  CHECK(r4.ratio < 100.0);

  auto r0 = moment_route_bound(16, 1.5, 2, 0.0);
  CHECK(r0.ratio == 0.0);

  CHECK_THROWS_AS(moment_route_bound(1024, 2.5, 4, 1.0), Error);  // q above phi
  CHECK_THROWS_AS(moment_route_bound(2, 1.5, 4, 1.0), Error);     // m < R
  CHECK_THROWS_AS(moment_route_bound(16, 1.5, 4, 0.001), Error);  // R/(cq m^(1-1/q)) >= e
}
