#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "torus/acceptance.hpp"
#include "torus/experiments.hpp"

namespace {

using namespace torus;

// accepts "3/2", "2", and decimals like "1.5"
Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return rat(Int(s), Int(1));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  Int den(1);
  for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  return rat(Int(digits), den);
}

void write_output(const exper::TableOutput& out, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << out.csv;
    return;
  }
  std::ofstream csv(path);
  if (!csv) fail(Errc::InvalidArgument, "cannot write " + path);
  csv << out.csv;
  io::save_json_file(path + ".json", out.sidecar);
}

config::TestFn parse_testfn(const std::string& s) {
  if (s == "chi_A") return config::TestFn::ChiAnchor;
  if (s == "chi_Q") return config::TestFn::ChiQ;
  if (s == "chi_intersection") return config::TestFn::ChiIntersection;
  fail(Errc::InvalidArgument, "unknown test function " + s);
}

weights::CubeFamily parse_family(const std::string& s) {
  // "default:MAXM:SHIFTDEN" or a JSON file with a list of cubes
  if (s.rfind("default", 0) == 0) {
    long max_m = 8, den = 16;
    if (auto p1 = s.find(':'); p1 != std::string::npos) {
      auto rest = s.substr(p1 + 1);
      if (auto p2 = rest.find(':'); p2 != std::string::npos) {
        max_m = std::stol(rest.substr(0, p2));
        den = std::stol(rest.substr(p2 + 1));
      } else {
        max_m = std::stol(rest);
      }
    }
    return weights::CubeFamily::with_shifts(max_m, den);
  }
  weights::CubeFamily fam;
  for (auto& jc : io::load_json_file(s)) fam.cubes.push_back(io::cube_from_json(jc));
  return fam;
}

perio::LineWeight parse_base(const std::string& s) {
  if (s == "logcap") return perio::LineWeight::logcap();
  if (s.rfind("power:", 0) == 0)
    return perio::LineWeight::power(parse_rational(s.substr(6)));
  if (s == "flat")
    return perio::LineWeight::piecewise({rat(0), rat(1)}, {rat(1)}, rat(1));
  // otherwise a JSON file {cuts: [...], values: [...], outside: [num,den]}
  auto j = io::load_json_file(s);
  std::vector<Rational> cuts, values;
  for (auto& jc : j.at("cuts")) cuts.push_back(io::rational_from_json(jc));
  for (auto& jv : j.at("values")) values.push_back(io::rational_from_json(jv));
  return perio::LineWeight::piecewise(std::move(cuts), std::move(values),
                                      io::rational_from_json(j.at("outside")));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact dyadic-analysis experiments on the infinite-dimensional torus"};
  app.require_subcommand(1);

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "sizelevel table of the dyadic skeleton");
  long basis_mmax = 16;
  std::string basis_out;
  basis_cmd->add_option("--m-max", basis_mmax, "largest sizelevel");
  basis_cmd->add_option("--out", basis_out, "output CSV path (sidecar at <out>.json)");

  // eval-maximal
  auto* eval_cmd = app.add_subcommand("eval-maximal", "exact maximal function of a simple function");
  std::string eval_fn, eval_basis, eval_weight, eval_out, eval_mf_out, eval_q = "1";
  eval_cmd->add_option("--function", eval_fn, "SimpleFunction JSON")->required();
  eval_cmd->add_option("--basis", eval_basis, "BasisSpec JSON (default: dyadic only)");
  eval_cmd->add_option("--q", eval_q, "exponent q (rational)");
  eval_cmd->add_option("--weight", eval_weight, "weight JSON");
  eval_cmd->add_option("--out", eval_out, "output CSV path");
  eval_cmd->add_option("--mf-out", eval_mf_out, "write the maximal function JSON here");

  // blowup
  auto* blow_cmd = app.add_subcommand("blowup", "closed-form blow-up scans");
  std::string blow_kind = "cor1.3", blow_q = "1", blow_q0 = "2", blow_testfn, blow_out;
  std::string blow_c = "1", blow_delta = "1", blow_emit_plan;
  long blow_jmax = 32;
  blow_cmd->add_option("--kind", blow_kind, "thm1.2|cor1.3|cor1.5-closed|cor1.5-open|thm1.6");
  blow_cmd->add_option("--q0", blow_q0, "threshold exponent for cor1.5 plans");
  blow_cmd->add_option("--q", blow_q, "exponent q (rational)");
  blow_cmd->add_option("--jmax", blow_jmax, "number of configurations");
  blow_cmd->add_option("--testfn", blow_testfn, "chi_A|chi_Q|chi_intersection");
  blow_cmd->add_option("--C", blow_c, "comparability C (thm1.6)");
  blow_cmd->add_option("--delta", blow_delta, "comparability delta (thm1.6)");
  blow_cmd->add_option("--emit-plan", blow_emit_plan, "also write the plan JSON here");
  blow_cmd->add_option("--out", blow_out, "output CSV path");

  // binomial
  auto* bin_cmd = app.add_subcommand("binomial", "F_sup / tail-power scans of binomial models");
  std::string bin_scan = "1:1024", bin_out;
  double bin_q = 2.0, bin_cq = 1.0;
  bin_cmd->add_option("--scan-m", bin_scan, "m range lo:hi");
  bin_cmd->add_option("--q", bin_q, "exponent q");
  bin_cmd->add_option("--cq", bin_cq, "constant C_q");
  bin_cmd->add_option("--out", bin_out, "output CSV path");

  // weights
  auto* w_cmd = app.add_subcommand("weights", "weight-class constants over a cube family");
  std::string w_weight, w_family = "default:8:16", w_p = "2", w_r = "3/2", w_out;
  std::uint64_t w_seed = 0;
  w_cmd->add_option("--weight", w_weight, "weight JSON")->required();
  w_cmd->add_option("--family", w_family, "cube family JSON or default[:MAXM[:SHIFTDEN]]");
  w_cmd->add_option("--p", w_p, "Muckenhoupt exponent (rational)");
  w_cmd->add_option("--r", w_r, "reverse Holder exponent (rational)");
  w_cmd->add_option("--seed", w_seed, "sampling seed");
  w_cmd->add_option("--out", w_out, "output CSV path");

  // weighted-blowup
  auto* wb_cmd = app.add_subcommand("weighted-blowup", "weighted blow-up along a thm1.6 plan");
  std::string wb_plan, wb_weight, wb_q = "1", wb_c = "1", wb_delta = "1", wb_out;
  long wb_jmax = 32;
  wb_cmd->add_option("--plan", wb_plan, "SequencePlan JSON (built inline when omitted)");
  wb_cmd->add_option("--weight", wb_weight, "weight JSON")->required();
  wb_cmd->add_option("--q", wb_q, "exponent q (rational)");
  wb_cmd->add_option("--C", wb_c, "comparability C");
  wb_cmd->add_option("--delta", wb_delta, "comparability delta");
  wb_cmd->add_option("--jmax", wb_jmax, "plan length when building inline");
  wb_cmd->add_option("--out", wb_out, "output CSV path");

  // periodize
  auto* per_cmd = app.add_subcommand("periodize", "periodized real-line weights and transfer checks");
  std::string per_base = "logcap", per_lambda = "2", per_check = "a1,rh:2", per_out;
  long per_k = 64, per_family_n = 64;
  per_cmd->add_option("--base", per_base, "logcap | power:ALPHA | flat | pwc JSON");
  per_cmd->add_option("--lambda", per_lambda, "coefficient base lambda > 1 (rational)");
  per_cmd->add_option("--K", per_k, "truncation (auto-raised when needed)");
  per_cmd->add_option("--check", per_check, "comma list: a1, rh:R");
  per_cmd->add_option("--family-n", per_family_n, "interval family size");
  per_cmd->add_option("--out", per_out, "output CSV path");

  // selftest
  auto* self_cmd = app.add_subcommand("selftest", "acceptance criteria, run twice and diffed");

  try {
    app.parse(argc, argv);

    if (basis_cmd->parsed()) {
      write_output(exper::run_basis(basis_mmax), basis_out);
    } else if (eval_cmd->parsed()) {
      SimpleFunction f = io::simplefn_from_json(io::load_json_file(eval_fn));
      BasisSpec basis;
      if (!eval_basis.empty()) basis = io::basis_from_json(io::load_json_file(eval_basis));
      std::optional<WeightFn> w;
      if (!eval_weight.empty())
        w = io::weight_from_json(io::load_json_file(eval_weight));
      io::json mf;
      auto out = exper::run_eval_maximal(f, basis, parse_rational(eval_q),
                                         w ? &*w : nullptr, &mf);
      if (!eval_mf_out.empty()) io::save_json_file(eval_mf_out, mf);
      write_output(out, eval_out);
    } else if (blow_cmd->parsed()) {
      auto kind = config::plan_kind_from(blow_kind);
      if (!kind) fail(Errc::InvalidArgument, "unknown plan kind " + blow_kind);
      config::PlanParams params;
      params.q0 = parse_rational(blow_q0);
      params.C = parse_rational(blow_c);
      params.delta = parse_rational(blow_delta);
      config::TestFn fn = blow_testfn.empty()
                              ? (*kind == config::PlanKind::Cor13 ||
                                         *kind == config::PlanKind::Thm12
                                     ? config::TestFn::ChiIntersection
                                     : config::TestFn::ChiQ)
                              : parse_testfn(blow_testfn);
      if (!blow_emit_plan.empty())
        io::save_json_file(blow_emit_plan,
                           io::plan_to_json(config::build_sequence(*kind, params, blow_jmax)));
      write_output(exper::run_blowup(*kind, params, blow_jmax, parse_rational(blow_q), fn),
                   blow_out);
    } else if (bin_cmd->parsed()) {
      auto colon = bin_scan.find(':');
      if (colon == std::string::npos) fail(Errc::InvalidArgument, "--scan-m expects lo:hi");
      long lo = std::stol(bin_scan.substr(0, colon));
      long hi = std::stol(bin_scan.substr(colon + 1));
      write_output(exper::run_binomial(lo, hi, bin_q, bin_cq), bin_out);
    } else if (w_cmd->parsed()) {
      WeightFn w = io::weight_from_json(io::load_json_file(w_weight));
      write_output(exper::run_weights(w, parse_family(w_family), parse_rational(w_p),
                                      parse_rational(w_r), w_seed),
                   w_out);
    } else if (wb_cmd->parsed()) {
      WeightFn w = io::weight_from_json(io::load_json_file(wb_weight));
      Rational C = parse_rational(wb_c), delta = parse_rational(wb_delta);
      config::SequencePlan plan;
      if (!wb_plan.empty()) {
        plan = io::plan_from_json(io::load_json_file(wb_plan));
      } else {
        config::PlanParams params;
        params.C = C;
        params.delta = delta;
        plan = config::build_sequence(config::PlanKind::Thm16, params, wb_jmax);
      }
      write_output(exper::run_weighted_blowup(plan, w, parse_rational(wb_q), C, delta), wb_out);
    } else if (per_cmd->parsed()) {
      perio::PeriodizedWeight pw{parse_base(per_base), parse_rational(per_lambda), per_k};
      bool check_a1 = per_check.find("a1") != std::string::npos;
      long rh_r = 0;
      if (auto pos = per_check.find("rh:"); pos != std::string::npos)
        rh_r = std::stol(per_check.substr(pos + 3));
      write_output(exper::run_periodize(pw, check_a1, rh_r, per_family_n), per_out);
    } else if (self_cmd->parsed()) {
      bool ok = accept::run_all(std::cout);
      std::cout << (ok ? "SELFTEST: PASS" : "SELFTEST: FAIL") << std::endl;
      return ok ? 0 : 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const torus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.is_cap()) {
      std::cerr << "hint: the request exceeds the evaluator caps; use the closed-form "
                   "blow-up path (blowup / weighted-blowup) instead\n";
      return 3;
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
