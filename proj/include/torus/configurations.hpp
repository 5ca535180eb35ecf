#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torus/maximal.hpp"

namespace torus::config {

// l cubes of common measure overlapping an anchor set A with overlap fraction
// in [eps, 1-eps] and pairwise disjoint excesses Q^(k) \ A.
struct Configuration {
  Region anchor;
  std::vector<CubeSpec> cubes;
  Rational epsilon;
  long l = 0;
  std::optional<CubeSpec> around;  // set when every cube is a one-coordinate shift of this Q
};

// Each cube k is Q translated by (1-eps)*side_k in coordinate k.
Configuration make_config_around(const CubeSpec& q, const Rational& eps, long l);

struct ValidationItem {
  std::string what;
  bool ok = false;
  std::string detail;
};
struct ValidationReport {
  bool valid = true;
  std::vector<ValidationItem> items;
};
ValidationReport validate_config(const Configuration& c);

// Measures of the cells of Q partitioned by how many of the first m cubes
// contain the point; entry l is (l, |Q_{.,l}|). Enumerates 2^m cells.
std::vector<std::pair<long, Rational>> inclusion_partition(const Configuration& c, long m = -1);

enum class TestFn { ChiAnchor, ChiQ, ChiIntersection };

// Exact q-th power of the weak-type quotient contributed by Q and its
// configuration cubes (a rigorous lower bound for the full-basis quotient).
struct ClosedQuotient {
  PowProduct pow_q;                     // max over the candidate levels
  std::vector<PowProduct> candidates;   // level t up to 1, and level eps^.. on E
  std::optional<Rational> exact;        // when every exponent is integral
  double approx = 0.0;
};
ClosedQuotient blowup_quotient_closed(const Configuration& c, TestFn fn, const Rational& q,
                                      const WeightFn* w = nullptr);

// Lower-bound targets from the quotient chains, as q-th powers.
PowProduct eps2_bound_pow(const Rational& eps, long l, const Rational& q);
PowProduct chi_q_bound_pow(const Rational& eps, long l, const Rational& q);
PowProduct chi_intersection_bound_q1(long l);

enum class PlanKind { Thm12, Cor13, Cor15Closed, Cor15Open, Thm16 };

struct PlanParams {
  Rational q0 = Rational(2);     // cor1.5 exponent
  Rational C = Rational(1);      // thm1.6 comparability constants
  Rational delta = Rational(1);
  long sizelevel_cap = 1L << 40;
};

struct PlanRow {
  long j = 0;
  Rational epsilon;
  long l = 0;
  long sizelevel = 0;
  Rational offset1;  // coordinate-1 anchor translation; keeps the E_j disjoint
  long big_n = 0;    // thm1.6 only
};

struct SequencePlan {
  PlanKind kind;
  PlanParams params;
  std::vector<PlanRow> rows;
};

SequencePlan build_sequence(PlanKind kind, const PlanParams& params, long jmax);

// Realizes a plan row as an actual configuration (small rows only; the closed
// forms never need this).
Configuration realize(const PlanRow& row, long ell_cap = 256);

const char* plan_kind_name(PlanKind k);
std::optional<PlanKind> plan_kind_from(const std::string& name);

// Smallest N with C * N^-delta < 1 (exact comparison).
long smallest_blowup_n(const Rational& C, const Rational& delta);

}  // namespace torus::config
