#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "torus/binomial.hpp"
#include "torus/periodize.hpp"
#include "torus/serialize.hpp"
#include "torus/weights.hpp"

namespace torus::exper {

// Worker budget: TORUSLAB_THREADS when set, hardware concurrency otherwise.
long thread_budget();

// Index-deterministic parallel loop: results must be written by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// CSV table with a JSON sidecar: every exactly-computed cell carries its
// [num, den] pair in the sidecar; the CSV renders rationals as decimals at
// 12 significant digits.
class Table {
 public:
  Table(std::string command, std::uint64_t seed, std::vector<std::string> columns);
  Table& exact(const Rational& v);
  Table& number(double v);
  Table& text(const std::string& v);
  Table& flag(bool v);
  void end_row();

  std::string csv() const;
  io::json sidecar() const;

 private:
  using Cell = std::variant<Rational, double, std::string>;
  std::string command_;
  std::uint64_t seed_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<Cell> current_;
};

struct TableOutput {
  std::string csv;
  io::json sidecar;
};

TableOutput run_basis(long m_max);

// Emits the (q, weak_power, strong_power, quotient_power) row; *mf_out, when
// given, receives the maximal function as JSON.
TableOutput run_eval_maximal(const SimpleFunction& f, const BasisSpec& basis, const Rational& q,
                             const WeightFn* w, io::json* mf_out);

TableOutput run_blowup(config::PlanKind kind, const config::PlanParams& params, long jmax,
                       const Rational& q, config::TestFn fn);

TableOutput run_binomial(long m_lo, long m_hi, double q, double cq);

TableOutput run_weights(const WeightFn& w, const weights::CubeFamily& fam, const Rational& p,
                        const Rational& r, std::uint64_t seed);

TableOutput run_weighted_blowup(const config::SequencePlan& plan, const WeightFn& w,
                                const Rational& q, const Rational& C, const Rational& delta);

TableOutput run_periodize(const perio::PeriodizedWeight& pw, bool check_a1, long check_rh_r,
                          long family_n);

}  // namespace torus::exper
