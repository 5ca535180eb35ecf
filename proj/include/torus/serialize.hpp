#pragma once

#include <string>

#include "json.hpp"
#include "torus/configurations.hpp"
#include "torus/simple_fn.hpp"

namespace torus::io {

using nlohmann::json;

// Rationals serialize as [num, den]; entries are JSON integers when they fit
// in 64 bits and decimal strings otherwise.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

// {depth, boxes: [[[start_num, start_den, len_num, len_den], ...], ...]}
json region_to_json(const Region& r);
Region region_from_json(const json& j);

// {m, translation: [[num, den], ...], dyadic}
json cube_to_json(const CubeSpec& c);
CubeSpec cube_from_json(const json& j);

// {depth, pieces: [{region, value: [num, den]}], default: [num, den]}
json simplefn_to_json(const SimpleFunction& f);
SimpleFunction simplefn_from_json(const json& j);

json weight_to_json(const WeightFn& w);
WeightFn weight_from_json(const json& j);

// {include_dyadic, extra: [cube, ...]}
json basis_to_json(const BasisSpec& b);
BasisSpec basis_from_json(const json& j);

// {kind, params: {q0, C, delta}, rows: [{j, epsilon, l, sizelevel, offset1, N}]}
json plan_to_json(const config::SequencePlan& p);
config::SequencePlan plan_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace torus::io
