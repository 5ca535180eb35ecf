#include <sstream>

#include "doctest.h"
#include "torus/experiments.hpp"

using namespace torus;

namespace {

Region random_region(Rng& rng, std::size_t depth, long grid = 8) {
  Region r = Region::empty(depth);
  long boxes = rng.range(1, 3);
  for (long t = 0; t < boxes; ++t) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < depth; ++i) {
      long a = rng.range(0, grid - 1);
      long b = rng.range(1, grid);  // may wrap
      arcs.emplace_back(rat(a, grid), rat(b, grid));
    }
    r = region_union(r, Region::of_box(Box(std::move(arcs))).promoted(depth));
  }
  return r;
}

}  // namespace

TEST_CASE("region json round trip") {
  Rng rng(101);
  for (int it = 0; it < 25; ++it) {
    Region r = random_region(rng, 1 + rng.below(3));
    Region back = io::region_from_json(io::region_to_json(r));
    CHECK(back.depth() == r.depth());
    CHECK(regions_equal(back, r));
  }
}

TEST_CASE("cube json round trip") {
  Rng rng(202);
  for (int it = 0; it < 25; ++it) {
    long m = rng.range(0, 12);
    auto e = side_exponents(m);
    std::vector<Rational> tr;
    for (std::size_t i = 0; i < e.size(); ++i) tr.push_back(rat(rng.range(0, 15), 16));
    CubeSpec c = make_cube(m, std::move(tr));
    CubeSpec back = io::cube_from_json(io::cube_to_json(c));
    CHECK(back.m == c.m);
    CHECK(back.translation == c.translation);
    CHECK(back.dyadic == c.dyadic);
  }
  // huge sizelevels serialize through the string path
  CubeSpec deep = locate(Point{}, 200);
  CubeSpec back = io::cube_from_json(io::cube_to_json(deep));
  CHECK(back.m == 200);
  CHECK(regions_equal(cube_region(back), cube_region(deep)));
}

TEST_CASE("simple function json round trip") {
  Rng rng(303);
  for (int it = 0; it < 15; ++it) {
    std::size_t depth = 1 + rng.below(2);
    std::vector<SimpleFunction::Piece> pieces;
    Region a = random_region(rng, depth, 4);
    Region b = region_subtract(random_region(rng, depth, 4), a);
    if (!a.is_empty()) pieces.push_back({a, rat(rng.range(1, 9), 7)});
    if (!b.is_empty()) pieces.push_back({b, rat(rng.range(10, 19), 7)});
    SimpleFunction f = SimpleFunction::make(depth, std::move(pieces), rat(rng.range(0, 2)));
    SimpleFunction back = io::simplefn_from_json(io::simplefn_to_json(f));
    CHECK(back.depth() == f.depth());
    CHECK(back.default_value() == f.default_value());
    for (int s = 0; s < 40; ++s) {
      Point p({rng.unit_rational(6), rng.unit_rational(6)});
      CHECK(back.value_at(p) == f.value_at(p));
    }
  }
}

TEST_CASE("plan json round trip") {
  config::PlanParams params;
  params.q0 = rat(2);
  config::SequencePlan plan = config::build_sequence(config::PlanKind::Cor15Closed, params, 12);
  config::SequencePlan back = io::plan_from_json(io::plan_to_json(plan));
  CHECK(back.kind == plan.kind);
  REQUIRE(back.rows.size() == plan.rows.size());
  for (std::size_t i = 0; i < plan.rows.size(); ++i) {
    CHECK(back.rows[i].epsilon == plan.rows[i].epsilon);
    CHECK(back.rows[i].l == plan.rows[i].l);
    CHECK(back.rows[i].sizelevel == plan.rows[i].sizelevel);
    CHECK(back.rows[i].offset1 == plan.rows[i].offset1);
  }
}

TEST_CASE("csv cells match the sidecar after 12-digit rendering") {
  auto out = exper::run_basis(20);
  // walk the sidecar; re-render every exact cell and find it in the CSV
  std::istringstream csv(out.csv);
  std::string line;
  std::getline(csv, line);  // comment
  std::getline(csv, line);  // header
  for (auto& row : out.sidecar.at("rows")) {
    REQUIRE(std::getline(csv, line));
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    cells.push_back(cur);
    REQUIRE(cells.size() == row.size());
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].is_object() && row[i].contains("exact")) {
        Rational v = io::rational_from_json(row[i].at("exact"));
        CHECK(cells[i] == decimal12(v));
      }
    }
  }
}

TEST_CASE("experiment reruns are byte-identical") {
  auto a = exper::run_blowup(config::PlanKind::Cor13, {}, 16, rat(1),
                             config::TestFn::ChiIntersection);
  auto b = exper::run_blowup(config::PlanKind::Cor13, {}, 16, rat(1),
                             config::TestFn::ChiIntersection);
  CHECK(a.csv == b.csv);
  CHECK(a.sidecar == b.sidecar);

  WeightFactor wf{{rat(0), rat(1, 2), rat(1)}, {rat(3), rat(1)}};
  WeightFn w = tensor_weight({wf});
  weights::CubeFamily fam = weights::CubeFamily::with_shifts(2, 8);
  auto c = exper::run_weights(w, fam, rat(2), rat(2), 5);
  auto d = exper::run_weights(w, fam, rat(2), rat(2), 5);
  CHECK(c.csv == d.csv);
  auto e = exper::run_binomial(1, 64, 2.0, 1.0);
  auto f = exper::run_binomial(1, 64, 2.0, 1.0);
  CHECK(e.csv == f.csv);
}

TEST_CASE("quotient table rows dominate their paper bounds") {
  auto out = exper::run_blowup(config::PlanKind::Cor13, {}, 16, rat(1),
                               config::TestFn::ChiIntersection);
  auto& rows = out.sidecar.at("rows");
  REQUIRE(rows.size() == 16);
  for (auto& row : rows) {
    Rational quot = io::rational_from_json(row[4].at("exact"));
    Rational bound = io::rational_from_json(row[5].at("exact"));
    CHECK(quot >= bound);
  }
}

TEST_CASE("periodize table is deterministic and flags no violations") {
  perio::PeriodizedWeight pw{perio::LineWeight::logcap(), rat(2), 32};
  auto a = exper::run_periodize(pw, true, 2, 8);
  auto b = exper::run_periodize(pw, true, 2, 8);
  CHECK(a.csv == b.csv);
  CHECK(a.csv.find("check-a1") != std::string::npos);
  CHECK(a.csv.find("check-rh2") != std::string::npos);
  // violation column of both check rows is 0
  for (auto& row : a.sidecar.at("rows")) {
    std::string item = row[0].get<std::string>();
    if (item.rfind("check", 0) == 0) CHECK(row[5].get<double>() == 0.0);
  }
}

TEST_CASE("eval-maximal table") {
  SimpleFunction f = SimpleFunction::indicator(cube_region(locate(Point{}, 2)));
  BasisSpec basis;
  io::json mf;
  auto out = exper::run_eval_maximal(f, basis, rat(1), nullptr, &mf);
  CHECK(out.csv.find("weak_power") != std::string::npos);
  SimpleFunction back = io::simplefn_from_json(mf);
  CHECK(back.value_at(Point({rat(1, 8), rat(1, 8)})) == 1);
}
