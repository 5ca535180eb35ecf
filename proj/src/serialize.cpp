#include "torus/serialize.hpp"

#include <fstream>

namespace torus::io {

namespace {

json int_to_json(const Int& n) {
  if (n.fits_slong_p()) return json(n.get_si());
  return json(n.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  fail(Errc::InvalidArgument, "expected an integer or decimal string");
}

}  // namespace

json rational_to_json(const Rational& r) {
  return json::array({int_to_json(r.get_num()), int_to_json(r.get_den())});
}

Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail(Errc::InvalidArgument, "expected [num, den]");
  return rat(int_from_json(j[0]), int_from_json(j[1]));
}

json region_to_json(const Region& r) {
  json boxes = json::array();
  for (auto& b : r.boxes()) {
    json arcs = json::array();
    for (auto& a : b.arcs) {
      arcs.push_back(json::array({int_to_json(a.start.get_num()), int_to_json(a.start.get_den()),
                                  int_to_json(a.length.get_num()),
                                  int_to_json(a.length.get_den())}));
    }
    boxes.push_back(std::move(arcs));
  }
  return json{{"depth", r.depth()}, {"boxes", std::move(boxes)}};
}

Region region_from_json(const json& j) {
  std::size_t depth = j.at("depth").get<std::size_t>();
  std::vector<Box> boxes;
  for (auto& jb : j.at("boxes")) {
    std::vector<Arc> arcs;
    for (auto& ja : jb) {
      if (!ja.is_array() || ja.size() != 4)
        fail(Errc::InvalidArgument, "arc must be [start_num, start_den, len_num, len_den]");
      arcs.emplace_back(rat(int_from_json(ja[0]), int_from_json(ja[1])),
                        rat(int_from_json(ja[2]), int_from_json(ja[3])));
    }
    boxes.push_back(Box(std::move(arcs)));
  }
  return Region::of_boxes(depth, boxes);
}

json cube_to_json(const CubeSpec& c) {
  json tr = json::array();
  for (auto& t : c.translation) tr.push_back(rational_to_json(t));
  return json{{"m", c.m}, {"translation", std::move(tr)}, {"dyadic", c.dyadic}};
}

CubeSpec cube_from_json(const json& j) {
  long m = j.at("m").get<long>();
  std::vector<Rational> tr;
  for (auto& jt : j.at("translation")) tr.push_back(rational_from_json(jt));
  bool dyadic = j.value("dyadic", false);
  return make_cube(m, std::move(tr), dyadic);
}

json simplefn_to_json(const SimpleFunction& f) {
  json pieces = json::array();
  for (auto& pc : f.pieces())
    pieces.push_back(
        json{{"region", region_to_json(pc.region)}, {"value", rational_to_json(pc.value)}});
  return json{{"depth", f.depth()},
              {"pieces", std::move(pieces)},
              {"default", rational_to_json(f.default_value())}};
}

SimpleFunction simplefn_from_json(const json& j) {
  std::size_t depth = j.at("depth").get<std::size_t>();
  std::vector<SimpleFunction::Piece> pieces;
  for (auto& jp : j.at("pieces"))
    pieces.push_back({region_from_json(jp.at("region")), rational_from_json(jp.at("value"))});
  Rational def(0);
  if (j.contains("default")) def = rational_from_json(j.at("default"));
  return SimpleFunction::make(depth, std::move(pieces), def);
}

json weight_to_json(const WeightFn& w) { return simplefn_to_json(w.fn()); }

WeightFn weight_from_json(const json& j) { return WeightFn::make(simplefn_from_json(j)); }

json basis_to_json(const BasisSpec& b) {
  json extra = json::array();
  for (auto& c : b.extra) extra.push_back(cube_to_json(c));
  return json{{"include_dyadic", b.include_dyadic}, {"extra", std::move(extra)}};
}

BasisSpec basis_from_json(const json& j) {
  BasisSpec b;
  b.include_dyadic = j.value("include_dyadic", true);
  if (j.contains("extra"))
    for (auto& jc : j.at("extra")) b.extra.push_back(cube_from_json(jc));
  return b;
}

json plan_to_json(const config::SequencePlan& p) {
  json rows = json::array();
  for (auto& r : p.rows)
    rows.push_back(json{{"j", r.j},
                        {"epsilon", rational_to_json(r.epsilon)},
                        {"l", r.l},
                        {"sizelevel", r.sizelevel},
                        {"offset1", rational_to_json(r.offset1)},
                        {"N", r.big_n}});
  return json{{"kind", config::plan_kind_name(p.kind)},
              {"params",
               json{{"q0", rational_to_json(p.params.q0)},
                    {"C", rational_to_json(p.params.C)},
                    {"delta", rational_to_json(p.params.delta)}}},
              {"rows", std::move(rows)}};
}

config::SequencePlan plan_from_json(const json& j) {
  config::SequencePlan p;
  auto kind = config::plan_kind_from(j.at("kind").get<std::string>());
  if (!kind) fail(Errc::InvalidArgument, "unknown plan kind");
  p.kind = *kind;
  if (j.contains("params")) {
    const json& jp = j.at("params");
    if (jp.contains("q0")) p.params.q0 = rational_from_json(jp.at("q0"));
    if (jp.contains("C")) p.params.C = rational_from_json(jp.at("C"));
    if (jp.contains("delta")) p.params.delta = rational_from_json(jp.at("delta"));
  }
  for (auto& jr : j.at("rows")) {
    config::PlanRow r;
    r.j = jr.at("j").get<long>();
    r.epsilon = rational_from_json(jr.at("epsilon"));
    r.l = jr.at("l").get<long>();
    r.sizelevel = jr.at("sizelevel").get<long>();
    r.offset1 = rational_from_json(jr.at("offset1"));
    r.big_n = jr.value("N", 0L);
    p.rows.push_back(std::move(r));
  }
  return p;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidArgument, "cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::InvalidArgument, "cannot write " + path);
  out << j.dump(1, ' ') << "\n";
}

}  // namespace torus::io
