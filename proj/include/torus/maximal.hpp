#pragma once

#include <cstddef>
#include <vector>

#include "torus/simple_fn.hpp"

namespace torus {

// R_0 (optionally) together with a finite set S of extra cubes.
struct BasisSpec {
  bool include_dyadic = true;
  std::vector<CubeSpec> extra;
};

struct EvalCaps {
  std::size_t max_depth = 6;
  long max_spacing_log2 = 6;  // finest admissible dyadic spacing 2^-6
  std::size_t max_cells = std::size_t(1) << 22;
};

// Least m* such that the sides of V_m* divide f's breakpoint spacing in every
// constrained coordinate; beyond it dyadic averages equal f pointwise, so the
// truncated dyadic maximal function is exact.
long stabilization_level(const SimpleFunction& f);

// Exact evaluation of the maximal function on the common refinement grid of
// f's breakpoints, the dyadic grid at level m*, and the extra cubes' faces.
struct MaximalEval {
  std::size_t depth = 0;
  std::vector<std::vector<Rational>> cuts;  // per coordinate, sorted, 0..1
  std::vector<std::size_t> dims;
  std::size_t ncells = 1;
  std::vector<Rational> full;    // M^{R0 u S} f (or M^S f without the dyadic part)
  std::vector<Rational> dyadic;  // M^{R0} f
  std::vector<Rational> fvals;   // |f|

  Point cell_corner(std::size_t idx) const;
  Box cell_box(std::size_t idx) const;
  SimpleFunction as_simple(const std::vector<Rational>& vals) const;
};

MaximalEval evaluate_maximal(const SimpleFunction& f, const BasisSpec& basis,
                             const EvalCaps& caps = {});

SimpleFunction maximal_function(const SimpleFunction& f, const BasisSpec& basis,
                                const EvalCaps& caps = {});

// weak_lq_norm_pow(Mf) / lq_norm_pow(f): the q-th power of the weak-type
// quotient, exact.
Rational weak_type_quotient_pow(const SimpleFunction& f, const Rational& q,
                                const BasisSpec& basis, const WeightFn* w = nullptr,
                                const EvalCaps& caps = {});

// Sum of the indicators of the cubes of S; its maximum value is the overlap
// constant N.
SimpleFunction overlap_function(const std::vector<CubeSpec>& s, const EvalCaps& caps = {});
long overlap_max(const std::vector<CubeSpec>& s, const EvalCaps& caps = {});

// Brute-force reference evaluator: enumerates every dyadic cube of sizelevel
// <= m_cap (all 2^m translations) and every extra cube, painting cells of a
// uniform 2^-grid_log2 grid. Exponential in m_cap; exists to cross-check the
// fast evaluator, never to replace it.
MaximalEval bruteforce_maximal(const SimpleFunction& f, const BasisSpec& basis, long m_cap,
                               long grid_log2);

}  // namespace torus
