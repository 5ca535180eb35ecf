#include "doctest.h"
#include "torus/simple_fn.hpp"

using namespace torus;

namespace {

Region box1(const Rational& s, const Rational& len) { return Region::of_box(Box({Arc(s, len)})); }

SimpleFunction random_dyadic_fn(Rng& rng, std::size_t depth, long spacing_log2,
                                bool nonnegative = true) {
  long grid = 1L << spacing_log2;
  std::vector<std::size_t> dims(depth, static_cast<std::size_t>(grid));
  std::size_t ncells = 1;
  for (auto d : dims) ncells *= d;
  std::vector<SimpleFunction::Piece> pieces;
  for (std::size_t idx = 0; idx < ncells; ++idx) {
    if (rng.below(3) == 0) continue;  // leave some cells at 0
    std::size_t t = idx;
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < depth; ++i) {
      long k = static_cast<long>(t % grid);
      t /= grid;
      arcs.emplace_back(rat(k, grid), rat(1, grid));
    }
    long num = rng.range(nonnegative ? 0 : -4, 6);
    if (num == 0) continue;
    pieces.push_back({Region::of_box(Box(std::move(arcs))), rat(num, rng.range(1, 3))});
  }
  return SimpleFunction::make(depth, std::move(pieces), Rational(0), false);
}

}  // namespace

TEST_CASE("integrals and averages") {
  SimpleFunction one = SimpleFunction::constant(rat(1));
  CHECK(one.integral() == 1);
  CHECK(average(one, locate(Point{}, 9)) == 1);

  // f = chi_{V_2}, Q = V_2 shifted by 1/4 in coordinate 1 -> average 1/2
  SimpleFunction f = SimpleFunction::indicator(cube_region(locate(Point{}, 2)));
  CubeSpec q = make_cube(2, {rat(1, 4), rat(0)});
  CHECK(average(f, q) == rat(1, 2));

  // Q = the V_1 cell containing V_2 -> |V_2| / |V_1| = 1/2
  CHECK(average(f, locate(Point{}, 1)) == rat(1, 2));
}

TEST_CASE("strong norm powers") {
  Region a = box1(rat(0), rat(3, 8));
  SimpleFunction chi = SimpleFunction::indicator(a);
  for (long q : {1, 2, 3}) CHECK(lq_norm_pow(chi, rat(q)) == rat(3, 8));

  SimpleFunction two = SimpleFunction::make(1, {{box1(rat(0), rat(1, 2)), rat(2)}});
  CHECK(lq_norm_pow(two, rat(2)) == 2);
  CHECK(lq_norm_pow(SimpleFunction{}, rat(2)) == 0);
  CHECK_THROWS_AS(lq_norm_pow(two, rat(3, 2)), Error);  // 2^(3/2) irrational
  // but value 4 at q = 3/2 is fine: 4^(3/2) = 8
  SimpleFunction four = SimpleFunction::make(1, {{box1(rat(0), rat(1, 2)), rat(4)}});
  CHECK(lq_norm_pow(four, rat(3, 2)) == 4);
}

TEST_CASE("weak norm powers") {
  Region a = box1(rat(0), rat(3, 8));
  CHECK(weak_lq_norm_pow(SimpleFunction::indicator(a), rat(2)) == rat(3, 8));

  SimpleFunction f = SimpleFunction::make(
      1, {{box1(rat(0), rat(1, 4)), rat(2)}, {box1(rat(1, 4), rat(1, 2)), rat(1)}});
  CHECK(weak_lq_norm_pow(f, rat(1)) == rat(3, 4));  // max(2*(1/4), 1*(3/4))
  CHECK(lq_norm_pow(f, rat(1)) == 1);
  CHECK(weak_lq_norm_pow(f, rat(1)) <= lq_norm_pow(f, rat(1)));
}

TEST_CASE("weak norm restricted to a region") {
  SimpleFunction f = SimpleFunction::make(
      1, {{box1(rat(0), rat(1, 4)), rat(2)}, {box1(rat(1, 4), rat(1, 2)), rat(1)}});
  Region left = box1(rat(0), rat(1, 4));
  CHECK(weak_lq_norm_pow(f, rat(1), nullptr, &left) == rat(1, 2));  // only the 2-level survives
}

TEST_CASE("chebyshev: weak <= strong on random functions") {
  Rng rng(99);
  for (int it = 0; it < 50; ++it) {
    SimpleFunction f = random_dyadic_fn(rng, 1 + rng.below(2), 2, false);
    for (long q : {1, 2}) {
      CHECK(weak_lq_norm_pow(f, rat(q)) <= lq_norm_pow(f, rat(q)));
    }
  }
}

TEST_CASE("norm monotonicity under |f| <= |g|") {
  Rng rng(123);
  for (int it = 0; it < 30; ++it) {
    SimpleFunction f = random_dyadic_fn(rng, 2, 2);
    // g = f + chi_{[0,1/2) x T}: pointwise |g| >= |f| on a piece
    std::vector<SimpleFunction::Piece> gp;
    for (auto& pc : f.pieces()) gp.push_back({pc.region, pc.value * 2});
    SimpleFunction g = SimpleFunction::make(2, std::move(gp));
    for (long q : {1, 2}) {
      CHECK(lq_norm_pow(f.abs(), rat(q)) <= lq_norm_pow(g.abs(), rat(q)));
      CHECK(weak_lq_norm_pow(f.abs(), rat(q)) <= weak_lq_norm_pow(g.abs(), rat(q)));
    }
  }
}

TEST_CASE("weighted norms with the uniform weight coincide with unweighted") {
  Rng rng(5);
  WeightFn one = WeightFn::uniform();
  for (int it = 0; it < 20; ++it) {
    SimpleFunction f = random_dyadic_fn(rng, 2, 2);
    CHECK(lq_norm_pow(f, rat(2), &one) == lq_norm_pow(f, rat(2)));
    CHECK(weak_lq_norm_pow(f, rat(2), &one) == weak_lq_norm_pow(f, rat(2)));
  }
}

TEST_CASE("jensen bound: |f|_Q^q <= norm_pow / |Q|") {
  Rng rng(17);
  for (int it = 0; it < 30; ++it) {
    SimpleFunction f = random_dyadic_fn(rng, 2, 2);
    Point p({rng.unit_rational(3), rng.unit_rational(3)});
    for (long m : {0L, 1L, 2L, 4L}) {
      CubeSpec q = locate(p, m);
      Rational avg = average(f.abs(), q);
      for (long qq : {1, 2}) {
        CHECK(pow_int(avg, qq) * q.measure() <= lq_norm_pow(f, rat(qq)));
      }
    }
  }
}

TEST_CASE("tensor weights") {
  WeightFactor wf{{rat(0), rat(1, 2), rat(1)}, {rat(3), rat(1)}};
  WeightFn v1 = tensor_weight({wf});
  CHECK(v1.total() == 2);
  CHECK(v1.fn().value_at(Point({rat(1, 4)})) == 3);
  CHECK(v1.fn().value_at(Point({rat(3, 4)})) == 1);

  WeightFn v2 = tensor_weight({wf, wf});
  CHECK(v2.total() == 4);  // Fubini: 2 * 2
  CHECK(v2.fn().value_at(Point({rat(1, 4), rat(1, 4)})) == 9);

  WeightFn flat = tensor_weight({});
  CHECK(flat.total() == 1);

  WeightFactor bad{{rat(0), rat(1, 2), rat(1)}, {rat(0), rat(1)}};
  CHECK_THROWS_AS(tensor_weight({bad}), Error);
}

TEST_CASE("weight validation and helpers") {
  CHECK_THROWS_AS(WeightFn::make(SimpleFunction::constant(rat(0))), Error);
  WeightFactor wf{{rat(0), rat(1, 2), rat(1)}, {rat(3), rat(1)}};
  WeightFn w = tensor_weight({wf});
  WeightFn inv = w.reciprocal();
  CHECK(inv.fn().value_at(Point({rat(1, 4)})) == rat(1, 3));
  CHECK(w.power_int(2).fn().value_at(Point({rat(1, 4)})) == 9);
  CHECK(w.measure(box1(rat(1, 4), rat(1, 2))) == rat(3, 4) + rat(1, 4));
}

TEST_CASE("restriction") {
  SimpleFunction f = SimpleFunction::constant(rat(5));
  Region a = box1(rat(0), rat(1, 4));
  SimpleFunction g = f.restricted(a);
  CHECK(g.integral() == rat(5, 4));
  CHECK(g.value_at(Point({rat(1, 2)})) == 0);
  CHECK(g.value_at(Point({rat(1, 8)})) == 5);
}
