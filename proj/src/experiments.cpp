#include "torus/experiments.hpp"

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace torus::exper {

long thread_budget() {
  if (const char* env = std::getenv("TORUSLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return v;
  }
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  return hw >= 1 ? hw : 1;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  long budget = thread_budget();
  if (budget <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      body(i);
    }
  };
  std::vector<std::thread> threads;
  std::size_t nt = std::min<std::size_t>(budget, n);
  threads.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

Table::Table(std::string command, std::uint64_t seed, std::vector<std::string> columns)
    : command_(std::move(command)), seed_(seed), columns_(std::move(columns)) {}

Table& Table::exact(const Rational& v) {
  current_.emplace_back(v);
  return *this;
}
Table& Table::number(double v) {
  current_.emplace_back(v);
  return *this;
}
Table& Table::text(const std::string& v) {
  current_.emplace_back(v);
  return *this;
}
Table& Table::flag(bool v) { return text(v ? "yes" : "no"); }

void Table::end_row() {
  if (current_.size() != columns_.size())
    fail(Errc::InvalidArgument, "row width does not match the header");
  rows_.push_back(std::move(current_));
  current_.clear();
}

std::string Table::csv() const {
  std::ostringstream out;
  out << "# toruslab " << command_ << ", seed=" << seed_ << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
  char buf[64];
  for (auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (auto* r = std::get_if<Rational>(&row[i])) {
        out << decimal12(*r);
      } else if (auto* d = std::get_if<double>(&row[i])) {
        std::snprintf(buf, sizeof(buf), "%.12g", *d);
        out << buf;
      } else {
        out << std::get<std::string>(row[i]);
      }
      out << (i + 1 < row.size() ? "," : "\n");
    }
  }
  return out.str();
}

io::json Table::sidecar() const {
  io::json rows = io::json::array();
  for (auto& row : rows_) {
    io::json jr = io::json::array();
    for (auto& cell : row) {
      if (auto* r = std::get_if<Rational>(&cell)) {
        jr.push_back(io::json{{"exact", io::rational_to_json(*r)}});
      } else if (auto* d = std::get_if<double>(&cell)) {
        jr.push_back(*d);
      } else {
        jr.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(jr));
  }
  return io::json{{"command", command_},
                  {"seed", seed_},
                  {"columns", columns_},
                  {"rows", std::move(rows)}};
}

TableOutput run_basis(long m_max) {
  if (m_max < 0) fail(Errc::InvalidArgument, "need m_max >= 0");
  Table t("basis", 0, {"m", "n", "j", "ell", "halved_coordinate", "measure"});
  for (long m = 0; m <= m_max; ++m) {
    SizeLevel s = SizeLevel::of(m);
    t.number(m).number(s.n).number(s.j).number(s.ell());
    if (m >= 1)
      t.number(halved_coordinate(m));
    else
      t.text("");
    t.exact(pow2(-m));
    t.end_row();
  }
  return {t.csv(), t.sidecar()};
}

TableOutput run_eval_maximal(const SimpleFunction& f, const BasisSpec& basis, const Rational& q,
                             const WeightFn* w, io::json* mf_out) {
  SimpleFunction mf = maximal_function(f, basis);
  if (mf_out) *mf_out = io::simplefn_to_json(mf);
  Rational weak = weak_lq_norm_pow(mf, q, w);
  Rational strong = lq_norm_pow(f, q, w);
  if (sgn(strong) == 0) fail(Errc::ZeroFunction, "zero function");
  Table t("eval-maximal", 0, {"q", "weak_power", "strong_power", "quotient_power"});
  t.exact(q).exact(weak).exact(strong).exact(Rational(weak / strong));
  t.end_row();
  return {t.csv(), t.sidecar()};
}

TableOutput run_blowup(config::PlanKind kind, const config::PlanParams& params, long jmax,
                       const Rational& q, config::TestFn fn) {
  config::SequencePlan plan = config::build_sequence(kind, params, jmax);
  Table t("blowup", 0,
          {"j", "epsilon", "l", "sizelevel", "quotient_power", "paper_bound_power", "ratio"});
  for (auto& row : plan.rows) {
    // closed forms need only the parameters, never the realized cube
    config::Configuration shallow;
    shallow.epsilon = row.epsilon;
    shallow.l = row.l;
    CubeSpec q_anchor;
    q_anchor.m = row.sizelevel;
    shallow.around = q_anchor;
    config::ClosedQuotient cq = config::blowup_quotient_closed(shallow, fn, q, nullptr);
    PowProduct bound = fn == config::TestFn::ChiIntersection && q == 1
                           ? config::chi_intersection_bound_q1(row.l)
                           : (fn == config::TestFn::ChiAnchor
                                  ? config::eps2_bound_pow(row.epsilon, row.l, q)
                                  : config::chi_q_bound_pow(row.epsilon, row.l, q));
    t.number(row.j).exact(row.epsilon).number(row.l).number(row.sizelevel);
    if (auto ex = cq.pow_q.exact())
      t.exact(*ex);
    else
      t.number(cq.approx);
    if (auto bx = bound.exact())
      t.exact(*bx);
    else
      t.number(bound.value());
    t.number(cq.approx / bound.value());
    t.end_row();
  }
  return {t.csv(), t.sidecar()};
}

TableOutput run_binomial(long m_lo, long m_hi, double q, double cq) {
  if (m_lo < 1 || m_hi < m_lo) fail(Errc::InvalidArgument, "bad m range");
  Table t("binomial", 0, {"m", "p", "F_sup", "sum_alpha_power", "cheb_rhs"});
  std::size_t n = static_cast<std::size_t>(m_hi - m_lo + 1);
  struct Row {
    double p, fsup, lhs, rhs;
    bool cheb;
  };
  std::vector<Row> rows(n);
  double phi = binomial::golden_ratio();
  parallel_for(n, [&](std::size_t i) {
    long m = m_lo + static_cast<long>(i);
    Row r{};
    r.p = binomial::model_p(m, q, cq);
    r.fsup = binomial::f_sup(m, q, cq);
    r.cheb = q >= phi - 1e-12 && m >= binomial::m0_for(q, cq);
    if (r.cheb) {
      auto [lhs, rhs] = binomial::chebyshev_sum_bound(m, q, cq);
      r.lhs = lhs;
      r.rhs = rhs;
    }
    rows[i] = r;
  });
  for (std::size_t i = 0; i < n; ++i) {
    t.number(m_lo + static_cast<long>(i)).number(rows[i].p).number(rows[i].fsup);
    if (rows[i].cheb)
      t.number(rows[i].lhs).number(rows[i].rhs);
    else
      t.text("").text("");
    t.end_row();
  }
  return {t.csv(), t.sidecar()};
}

TableOutput run_weights(const WeightFn& w, const weights::CubeFamily& fam, const Rational& p,
                        const Rational& r, std::uint64_t seed) {
  Table t("weights", seed, {"constant", "value", "note"});
  BasisSpec basis;
  if (p == 2) {
    t.text("ap_p2").exact(weights::ap2_constant(w, fam)).text(
        "family sup; lower bound of the full-basis constant; exact");
  } else {
    t.text("ap_p" + decimal12(p)).number(weights::ap_constant(w, p, fam)).text(
        "family sup; lower bound of the full-basis constant");
  }
  t.end_row();
  t.text("rh_r" + decimal12(r)).number(weights::rh_constant(w, r, fam)).text(
      "family sup; lower bound of the full-basis constant");
  t.end_row();
  t.text("a1").exact(weights::a1_constant(w, basis)).text(
      "dyadic-basis ess sup of Mw/w; exact");
  t.end_row();
  t.text("a1_family_lower").exact(weights::a1_family_lower(w, fam)).text(
      "family lower bound of the full-basis A_1 constant");
  t.end_row();
  t.text("fw_ainfty").exact(weights::fw_ainfty_estimate(w, fam, basis)).text(
      "dyadic-basis Fujii-Wilson estimate; lower bound");
  t.end_row();
  weights::ComparabilityFit fit = weights::comparability_fit(w, fam, 16, seed);
  t.text("fit_delta").exact(fit.delta).text(fit.verified ? "verified" : "UNVERIFIED");
  t.end_row();
  t.text("fit_C").exact(fit.C).text("samples=" + std::to_string(fit.samples.size()));
  t.end_row();
  t.text("fit_N").number(fit.blowup_n).text("smallest N with C N^-delta < 1");
  t.end_row();
  return {t.csv(), t.sidecar()};
}

TableOutput run_weighted_blowup(const config::SequencePlan& plan, const WeightFn& w,
                                const Rational& q, const Rational& C, const Rational& delta) {
  auto rows = weights::weighted_blowup(plan, w, q, C, delta);
  Table t("weighted-blowup", 0,
          {"j", "epsilon", "l", "N", "sizelevel", "chain_min_ratio", "realized_power",
           "bound_power", "chain_ok", "bound_ok"});
  for (auto& row : rows) {
    t.number(row.j).exact(row.epsilon).number(row.l).number(row.big_n).number(row.sizelevel);
    t.exact(row.chain_min_ratio);
    if (auto ex = row.realized_pow.exact())
      t.exact(*ex);
    else
      t.number(row.realized_approx);
    t.number(row.bound_approx);
    t.flag(row.chain_ok).flag(row.bound_ok);
    t.end_row();
  }
  return {t.csv(), t.sidecar()};
}

TableOutput run_periodize(const perio::PeriodizedWeight& pw, bool check_a1, long check_rh_r,
                          long family_n) {
  auto family = perio::default_interval_family(family_n);
  Table t("periodize", 0,
          {"item", "start", "length", "value", "tail", "violations", "line_constant",
           "min_slack"});
  for (auto& I : family) {
    perio::PerioValue v = perio::periodize_integral(pw, I);
    t.text("mass").exact(I.start).exact(I.length).number(v.value).number(v.tail);
    t.text("").text("").text("");
    t.end_row();
  }
  if (check_a1) {
    perio::TransferCheck c = perio::check_perio_a1(pw, family);
    t.text("check-a1").text("").text("").text("").text("");
    t.number(c.violations).number(c.line_constant).number(c.min_slack);
    t.end_row();
  }
  if (check_rh_r >= 2) {
    perio::TransferCheck c = perio::check_perio_rh(pw, check_rh_r, family);
    t.text("check-rh" + std::to_string(check_rh_r)).text("").text("").text("").text("");
    t.number(c.violations).number(c.line_constant).number(c.min_slack);
    t.end_row();
  }
  return {t.csv(), t.sidecar()};
}

}  // namespace torus::exper
