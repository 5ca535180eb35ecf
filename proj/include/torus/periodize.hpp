#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "torus/simple_fn.hpp"

namespace torus::perio {

// Value of the form a + b/e; exact carrier for logcap masses like 2k+2+2/e.
struct ExactLog {
  Rational a;
  Rational inv_e_coeff;
  double value() const;
};

// One-dimensional weight on the real line with closed-form interval
// integrals.
class LineWeight {
 public:
  enum class Kind { Power, LogCap, PiecewiseConst };

  static LineWeight power(const Rational& alpha);  // |x|^alpha, alpha > -1
  static LineWeight logcap();                      // max(log(1/|x|), 1)
  static LineWeight piecewise(std::vector<Rational> cuts, std::vector<Rational> values,
                              Rational outside);

  Kind kind() const { return kind_; }
  const Rational& alpha() const { return alpha_; }

  double value(double x) const;
  double integral(double a, double b) const;  // antiderivative difference

  // Exact paths where the closed form stays in a small field.
  Rational integral_exact_pwc(const Rational& a, const Rational& b) const;
  // logcap over [a,b] when neither endpoint lies strictly inside the log
  // region (0 < |x| < 1/e); nullopt when undecidable/inapplicable.
  std::optional<ExactLog> integral_exact_logcap(const Rational& a, const Rational& b) const;

  double cell_mass_bound(long k) const;  // upper bound of w([0,1]+k)
  double cell_sup(long k) const;         // sup of w on [k, k+1), |k| >= 1
  const std::vector<Rational>& cuts() const { return cuts_; }  // pwc only

 private:
  Kind kind_ = Kind::PiecewiseConst;
  Rational alpha_;
  std::vector<Rational> cuts_;
  std::vector<Rational> values_;
  Rational outside_ = Rational(1);
  friend struct PwHelpers;
};

// p[w, lambda^-|k|] truncated at |k| <= K, with certified geometric tails.
struct PeriodizedWeight {
  LineWeight base;
  Rational lambda;  // > 1
  long truncation_k = 64;
};

struct PerioValue {
  double value = 0.0;
  double tail = 0.0;  // certified bound on the discarded |k| > K mass
  long used_k = 0;
  std::optional<Rational> exact_partial;  // piecewise-constant bases only
};

// Integral of the periodization over a torus interval (wrap allowed); K is
// raised automatically until tail/value < 1e-9.
PerioValue periodize_integral(const PeriodizedWeight& pw, const Arc& interval);

// Pointwise value with a certified tail bound (x away from 0 for singular
// bases).
PerioValue periodize_point(const PeriodizedWeight& pw, double x);

// Certified enclosure of int_I p[w]^r for integer r >= 1: monotone Riemann
// refinement (first order, so the tolerance is modest) with the singular
// slivers at x = 0 and x = 1 integrated in closed form.
std::pair<double, double> periodize_power_integral(const PeriodizedWeight& pw, long r,
                                                   const Arc& interval, double rel_tol = 1e-4);

// A_1 and RH_r constants of the BASE weight estimated on a fixed family of
// real-line intervals (lower bounds of the true constants).
double a1_line_estimate(const LineWeight& w);
double rh_line_estimate(const LineWeight& w, long r);

struct TransferCheck {
  long intervals = 0;
  long checks = 0;
  long violations = 0;
  double line_constant = 0.0;  // estimated base constant on the real line
  double min_slack = 0.0;      // min over checks of rhs - lhs
};

// avg_I(pw) <= lambda^2 [w]_{A1(R)} pw(x) at sampled x in I, within tails.
TransferCheck check_perio_a1(const PeriodizedWeight& pw, const std::vector<Arc>& family,
                             long samples_per_interval = 8);

// (avg_I pw^r)^(1/r) <= lambda^2 [w]_{RH_r(R)} avg_I(pw), integer r.
TransferCheck check_perio_rh(const PeriodizedWeight& pw, long r, const std::vector<Arc>& family);

// Deterministic interval family including wrap-around members.
std::vector<Arc> default_interval_family(long n);

// Piecewise-constant staircases of per-cell means at resolution 2^-s; they
// bracket periodize_integral on every dyadic interval at that resolution (up
// to the certified tails, folded in here).
std::pair<WeightFn, WeightFn> staircase_envelopes(const PeriodizedWeight& pw, long s);

}  // namespace torus::perio
