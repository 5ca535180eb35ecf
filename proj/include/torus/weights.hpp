#pragma once

#include <cstdint>
#include <vector>

#include "torus/configurations.hpp"
#include "torus/maximal.hpp"

namespace torus::weights {

// Finite surrogate for the supremum over all basis cubes.
struct CubeFamily {
  std::vector<CubeSpec> cubes;
  static CubeFamily dyadic_up_to(long max_m);
  // Dyadic cubes up to max_m plus copies shifted by k/shift_den in one
  // nonfree coordinate at a time, deduplicated.
  static CubeFamily with_shifts(long max_m, long shift_den);
};

// Exact A_2 product sup over the family: avg_Q(w) * avg_Q(1/w).
Rational ap2_constant(const WeightFn& w, const CubeFamily& f);

// General p > 1: avg_Q(w) * avg_Q(w^(1-p'))^(p-1), float powers.
double ap_constant(const WeightFn& w, const Rational& p, const CubeFamily& f);

// (avg_Q w^r)^(1/r) / avg_Q w, exact means inside, float root.
double rh_constant(const WeightFn& w, const Rational& r, const CubeFamily& f);

// Essential sup of M^basis(w) / w over the evaluator's refinement grid.
Rational a1_constant(const WeightFn& w, const BasisSpec& basis, const EvalCaps& caps = {});

// Cheaper family-restricted lower bound: max_Q avg_Q(w) / essinf_Q(w).
Rational a1_family_lower(const WeightFn& w, const CubeFamily& f);

// Fujii-Wilson estimate: max_Q (1/w(Q)) int_Q M^basis(w chi_Q).
Rational fw_ainfty_estimate(const WeightFn& w, const CubeFamily& f, const BasisSpec& basis,
                            const EvalCaps& caps = {});

struct ComparabilitySample {
  Rational size_frac;  // |E| / |Q|
  Rational mass_frac;  // w(E) / w(Q)
};
enum class FitDirection { RHSide, ApSide };

// Fit of w(E)/w(Q) <= C (|E|/|Q|)^delta over sampled E subset Q (RH side),
// or |E|/|Q| <= C (w(E)/w(Q))^delta (Ap side). delta lives on the grid k/16
// and C is rounded upward so the fitted pair re-verifies exactly.
struct ComparabilityFit {
  FitDirection direction = FitDirection::RHSide;
  Rational delta;
  Rational C;
  std::vector<ComparabilitySample> samples;
  bool verified = false;
  long blowup_n = 0;  // smallest N with C N^-delta < 1
};
ComparabilityFit comparability_fit(const WeightFn& w, const CubeFamily& f, long samples_per_cube,
                                   std::uint64_t seed = 0,
                                   FitDirection dir = FitDirection::RHSide);

// Sharp reverse Holder verification: avg_Q(w^r) <= C(A,r) (avg_Q w)^r with
// C(A,r) = A (r'-1) / (r'-1 - 2(A-1)) and A the Fujii-Wilson estimate. Only
// r with a positive constant denominator can be checked.
struct SharpRHEntry {
  Rational r;
  bool admissible = false;  // r < 1 + 1/(A-1)
  bool in_domain = false;   // constant denominator positive
  long cubes_checked = 0;
  long violations = 0;
  long undecided = 0;  // enclosure never separated (not expected)
};
struct SharpRHReport {
  Rational ainfty_estimate;
  bool all_r_admissible = false;  // A == 1
  std::vector<SharpRHEntry> entries;
  long total_violations = 0;
};
SharpRHReport sharp_rh_check(const WeightFn& w, const CubeFamily& f, const BasisSpec& basis,
                             const std::vector<Rational>& r_grid, const EvalCaps& caps = {});

// Weighted blow-up along a thm1.6 plan: chain ratios of the intermediate
// translated cubes, realized weighted quotient, and the target bound
// ((1-C N^-delta)^(N/q) l^(1/q) / (2N))^q.
struct WeightedBlowupRow {
  long j = 0;
  Rational epsilon;
  long l = 0;
  long big_n = 0;
  long sizelevel = 0;
  Rational chain_min_ratio;
  bool chain_ok = false;
  PowProduct realized_pow;
  double realized_approx = 0.0;
  double bound_approx = 0.0;
  bool bound_ok = false;
};
std::vector<WeightedBlowupRow> weighted_blowup(const config::SequencePlan& plan,
                                               const WeightFn& w, const Rational& q,
                                               const Rational& C, const Rational& delta);

}  // namespace torus::weights
