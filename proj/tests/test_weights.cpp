#include <cmath>

#include "doctest.h"
#include "torus/weights.hpp"

using namespace torus;
using namespace torus::weights;

namespace {

WeightFn two_valued() {
  WeightFactor wf{{rat(0), rat(1, 2), rat(1)}, {rat(3), rat(1)}};
  return tensor_weight({wf});
}

CubeFamily single(const CubeSpec& q) {
  CubeFamily f;
  f.cubes.push_back(q);
  return f;
}

}  // namespace

TEST_CASE("cube families") {
  CubeFamily d3 = CubeFamily::dyadic_up_to(3);
  CHECK(d3.cubes.size() == 1 + 2 + 4 + 8);
  CubeFamily s = CubeFamily::with_shifts(1, 4);
  // root (no nonfree coordinate) + the two level-1 cells + their shifts,
  // deduplicated: translations {0, 1/4, 1/2, 3/4} at m = 1
  CHECK(s.cubes.size() == 1 + 4);
}

TEST_CASE("flat weight gives 1 for every constant") {
  WeightFn one = WeightFn::uniform();
  CubeFamily f = CubeFamily::with_shifts(3, 8);
  CHECK(ap2_constant(one, f) == 1);
  CHECK(ap_constant(one, rat(3, 2), f) == doctest::Approx(1.0));
  CHECK(rh_constant(one, rat(2), f) == doctest::Approx(1.0));
  CHECK(a1_constant(one, BasisSpec{}) == 1);
  CHECK(a1_family_lower(one, f) == 1);
  CHECK(fw_ainfty_estimate(one, f, BasisSpec{}) == 1);
}

TEST_CASE("two-valued weight reaches the analytic A_2 extremum") {
  WeightFn w = two_valued();
  CubeFamily f = CubeFamily::with_shifts(2, 16);
  Rational a2 = ap2_constant(w, f);
  CHECK(a2 == rat(4, 3));  // attained at the half-and-half interval [1/4, 3/4)

  // Fubini: the A_2 product over a product cube is the product of the
  // per-coordinate products
  WeightFactor wf{{rat(0), rat(1, 2), rat(1)}, {rat(3), rat(1)}};
  WeightFn w2 = tensor_weight({wf, wf});
  CubeSpec half1 = make_cube(1, {rat(1, 4)});
  CubeSpec prod = make_cube(2, {rat(1, 4), rat(1, 4)});
  Rational one_d = ap2_constant(w, single(half1));
  Rational two_d = ap2_constant(w2, single(prod));
  CHECK(one_d == rat(4, 3));
  CHECK(two_d == one_d * one_d);  // 16/9
}

TEST_CASE("rh constant: hand value and monotonicity in r") {
  WeightFn w = two_valued();
  CubeFamily root = single(make_cube(0, {}));
  double rh2 = rh_constant(w, rat(2), root);
  CHECK(rh2 == doctest::Approx(std::sqrt(5.0) / 2.0));  // sqrt((9+1)/2) / 2
  CubeFamily f = CubeFamily::with_shifts(2, 8);
  CHECK(rh_constant(w, rat(3), f) >= rh_constant(w, rat(2), f) - 1e-12);
}

TEST_CASE("constants never decrease when the family grows") {
  WeightFn w = two_valued();
  CubeFamily small = CubeFamily::dyadic_up_to(2);
  CubeFamily big = CubeFamily::with_shifts(3, 8);
  CHECK(ap2_constant(w, small) <= ap2_constant(w, big));
  CHECK(rh_constant(w, rat(2), small) <= rh_constant(w, rat(2), big) + 1e-12);
  CHECK(a1_family_lower(w, small) <= a1_family_lower(w, big));
  CHECK(fw_ainfty_estimate(w, small, BasisSpec{}) <= fw_ainfty_estimate(w, big, BasisSpec{}));
}

TEST_CASE("a1 constant of the two-valued weight") {
  WeightFn w = two_valued();
  CHECK(a1_constant(w, BasisSpec{}) == 2);  // root average 2 over the value 1
  // cylindrical weights inherit the one-dimensional constant
  WeightFactor wf{{rat(0), rat(1, 2), rat(1)}, {rat(3), rat(1)}};
  WeightFn w2 = tensor_weight({wf});
  CHECK(a1_constant(w2, BasisSpec{}) == a1_constant(w, BasisSpec{}));
}

TEST_CASE("fujii-wilson estimate sits below the a1 constant") {
  for (auto w : {WeightFn::uniform(), two_valued()}) {
    CubeFamily f = CubeFamily::with_shifts(3, 8);
    Rational fw = fw_ainfty_estimate(w, f, BasisSpec{});
    Rational a1 = a1_constant(w, BasisSpec{});
    CHECK(fw <= a1);
  }
  // hand value on the root alone
  CHECK(fw_ainfty_estimate(two_valued(), single(make_cube(0, {})), BasisSpec{}) == rat(5, 4));
}

TEST_CASE("comparability fit") {
  CubeFamily f = CubeFamily::dyadic_up_to(2);
  ComparabilityFit flat = comparability_fit(WeightFn::uniform(), f, 8, 1);
  CHECK(flat.delta == 1);
  CHECK(flat.C == 1);
  CHECK(flat.verified);
  CHECK(flat.blowup_n == 2);

  ComparabilityFit tv = comparability_fit(two_valued(), f, 8, 1);
  CHECK(tv.verified);
  // at delta = 1 the extremal sample inside the heavy half forces C >= 3/2
  ComparabilityFit tv_rh = tv;
  bool has_extremal = false;
  for (auto& s : tv.samples)
    if (sgn(s.size_frac) != 0 && s.mass_frac == rat(3, 2) * s.size_frac) has_extremal = true;
  CHECK(has_extremal);
}

TEST_CASE("sharp reverse Holder verification") {
  CubeFamily f = CubeFamily::dyadic_up_to(3);
  BasisSpec basis;
  SharpRHReport flat = sharp_rh_check(WeightFn::uniform(), f, basis, {rat(11, 10), rat(2)});
  CHECK(flat.ainfty_estimate == 1);
  CHECK(flat.all_r_admissible);
  CHECK(flat.total_violations == 0);

  SharpRHReport tv = sharp_rh_check(two_valued(), f, basis, {rat(11, 10), rat(2), rat(4)});
  CHECK(tv.total_violations == 0);
  for (auto& e : tv.entries) {
    CHECK(e.undecided == 0);
    if (e.r == rat(4)) CHECK(!e.in_domain);  // constant becomes negative there
  }
  // admissible range from the estimate: r < 1 + 1/(A-1)
  Rational A = tv.ainfty_estimate;
  CHECK(A >= rat(5, 4));  // at least the root value
  for (auto& e : tv.entries)
    CHECK(e.admissible == (Rational((e.r - 1) * (A - 1)) < 1));
}

TEST_CASE("weighted blow-up: uniform weight") {
  config::PlanParams params;
  params.C = rat(1);
  params.delta = rat(1);
  config::SequencePlan plan = config::build_sequence(config::PlanKind::Thm16, params, 4);
  WeightFn one = WeightFn::uniform();
  auto rows = weighted_blowup(plan, one, rat(1), rat(1), rat(1));
  REQUIRE(rows.size() == 4);
  for (auto& row : rows) {
    CHECK(row.big_n == 2);
    CHECK(row.chain_min_ratio == 1);  // the uniform weight never drops
    CHECK(row.chain_ok);
    CHECK(row.bound_ok);
    // unweighted reduction: realized quotient = max(1, (1/2)(1 + l/2))
    auto exact = row.realized_pow.exact();
    REQUIRE(exact.has_value());
    Rational expect = std::max(Rational(1), Rational(rat(1, 2) * (1 + rat(row.l, 2))));
    CHECK(*exact == expect);
  }
  // j = 2: bound is (1/2)^2 * 2 * (1/4) = 1/8
  CHECK(rows[1].bound_approx == doctest::Approx(0.125).epsilon(1e-9));

  CHECK_THROWS_AS(weighted_blowup(plan, one, rat(1), rat(3), rat(1)), Error);  // N too small
}

TEST_CASE("weighted blow-up: tensor weight constant on the anchors") {
  // anchors of the j <= 2 plan live inside [0,1/2) where the weight is flat,
  // so every chain ratio is exactly 1 and quotients match the unweighted run
  config::PlanParams params;
  params.C = rat(1);
  params.delta = rat(1);
  config::SequencePlan plan = config::build_sequence(config::PlanKind::Thm16, params, 2);
  WeightFn w = two_valued();
  WeightFn one = WeightFn::uniform();
  auto rows_w = weighted_blowup(plan, w, rat(1), rat(1), rat(1));
  auto rows_1 = weighted_blowup(plan, one, rat(1), rat(1), rat(1));
  for (std::size_t i = 0; i < rows_w.size(); ++i) {
    CHECK(rows_w[i].chain_min_ratio == 1);
    CHECK(rows_w[i].realized_pow.cmp(rows_1[i].realized_pow) == 0);
  }
}

TEST_CASE("weighted blow-up with a fitted fractional delta") {
  config::PlanParams params;
  params.C = rat(2);
  params.delta = rat(3, 4);
  config::SequencePlan plan = config::build_sequence(config::PlanKind::Thm16, params, 3);
  CHECK(plan.rows[0].big_n == config::smallest_blowup_n(rat(2), rat(3, 4)));
  auto rows = weighted_blowup(plan, two_valued(), rat(1), rat(2), rat(3, 4));
  for (auto& row : rows) {
    CHECK(row.chain_ok);
    CHECK(row.bound_ok);
  }
}

TEST_CASE("weighted blow-up chain with genuine weight variation") {
  // coarse anchor (sizelevel 5, sides 1/4) sliding across the breakpoint 1/3
  WeightFactor wf{{rat(0), rat(1, 3), rat(1)}, {rat(3), rat(1)}};
  WeightFn w = tensor_weight({wf});
  config::SequencePlan plan;
  plan.kind = config::PlanKind::Thm16;
  config::PlanRow row;
  row.j = 1;
  row.epsilon = rat(1, 2);
  row.l = 3;
  row.sizelevel = 5;
  row.offset1 = rat(0);
  row.big_n = 2;
  plan.rows.push_back(row);
  auto rows = weighted_blowup(plan, w, rat(1), rat(3, 2), rat(1));
  REQUIRE(rows.size() == 1);
  // N = 2 gives positions [0,1/4) and [1/8,3/8): masses 3/4 and 2/3
  CHECK(rows[0].chain_min_ratio == rat(8, 9));
  CHECK(rows[0].chain_ok);  // 8/9 >= 1 - (3/2)/2 = 1/4
  CHECK(rows[0].bound_ok);
}
