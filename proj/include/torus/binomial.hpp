#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "torus/rational.hpp"

namespace torus::binomial {

// ----- exact lane (rational p) -----

// pmf of B(m, p); sums to 1 exactly.
std::vector<Rational> pmf(long m, const Rational& p);

// Tail probability P(X >= l), 0 <= l <= m+1.
Rational alpha(long m, const Rational& p, long l);

// Feller's CDF identity: m * C(m-1, k) * int_0^p t^k (1-t)^(m-k-1) dt,
// integrated term by term in rationals. Equals alpha(m, p, k+1).
Rational feller_tail(long m, const Rational& p, long k);

// Stochastic dominance of tails: alpha(m,eps,l) <= alpha(m,p,l) for all l.
bool dominance_check(long m, const Rational& eps, const Rational& p);

// Decreasing rearrangement of B(m,p) as a step profile: value l on
// [alpha_{l+1}, alpha_l), breakpoints descending from 1 to 0.
struct StepProfile {
  long m = 0;
  Rational p;
  std::vector<Rational> alpha;  // size m+2, alpha[0] = 1, alpha[m+1] = 0
  long value_at(const Rational& t) const;
  Rational integral() const;  // = m p
};
StepProfile step_profile(long m, const Rational& p);

// Running integral H(t) = int_0^t X*(s) ds: concave piecewise linear with
// integer slopes m..0 and H(1) = m p.
class HFunction {
 public:
  explicit HFunction(StepProfile prof);
  Rational operator()(const Rational& t) const;
  const StepProfile& profile() const { return prof_; }
  Rational total() const { return at_alpha_.front(); }  // H(alpha_0) = H(1)
  // H evaluated at breakpoint alpha[k]
  const Rational& at_breakpoint(std::size_t k) const { return at_alpha_[k]; }

 private:
  StepProfile prof_;
  std::vector<Rational> at_alpha_;
};
HFunction h_function(long m, const Rational& p);

struct RearrangementReport {
  long trials = 0;
  Rational h_at_t;
  Rational greedy_value;
  bool greedy_attains = false;
  bool all_below = true;
  Rational worst_excess;  // max over trials of integral - H(t); <= 0 when all_below
};
RearrangementReport rearrangement_sup_check(long m, const Rational& p, const Rational& t,
                                            long trials, std::uint64_t seed = 0);

// ----- float lane (p is generically irrational: C_q / m^(1/q)) -----

// Tails of B(m, p) in double precision via log-gamma; alpha[0] pinned to 1.
std::vector<double> tails_d(long m, double p);

double model_p(long m, double q, double cq);  // min(1, cq / m^(1/q))

// Smallest m with cq/m^(1/q) <= 1 and cq*m^(1-1/q) >= 1.
long m0_for(double q, double cq);

// sup_t H(t) / (t^(1/q) m^(1-1/q)) over breakpoints and interior critical
// points of each linear piece.
double f_sup(long m, double q, double cq);

// Both sides of the rearrangement-integral identity: the piecewise
// integration of H'(s) s^(-1/q) and the Abel-summed tail-power form.
std::pair<double, double> eqfm_sides(long m, double q, double cq);

// (lhs, rhs) of the Chebyshev band estimate at p = cq/m^(1/q):
// lhs = sum_{l=0}^m alpha_l^(1-1/q); rhs = 3 cq m^(1-1/q) +
// 2 sqrt(cq m^(1-1/q)) * sum_{n=1}^{floor(sqrt(m^(1+1/q)/cq))} n^(-2+2/q).
std::pair<double, double> chebyshev_sum_bound(long m, double q, double cq);

struct MomentRoute {
  double ratio = 0.0;        // (E X^R)^(1/R) / m^(1-1/q)
  bool exponent_ok = false;  // R - R/q > 1 (reported, not enforced)
};
MomentRoute moment_route_bound(long m, double q, long R, double cq = 1.0);

inline double golden_ratio() { return (std::sqrt(5.0) + 1.0) / 2.0; }

}  // namespace torus::binomial
