#pragma once

#include <optional>
#include <vector>

#include "torus/basis.hpp"

namespace torus {

// Finitely-valued cylindrical function: disjoint regions with rational values
// and a default value elsewhere (0 for plain functions).
class SimpleFunction {
 public:
  struct Piece {
    Region region;
    Rational value;
  };

  SimpleFunction() = default;  // identically 0 at depth 0
  static SimpleFunction constant(const Rational& c, std::size_t depth = 0);
  static SimpleFunction indicator(const Region& r);
  static SimpleFunction make(std::size_t depth, std::vector<Piece> pieces,
                             Rational default_value = Rational(0), bool check_disjoint = true);

  std::size_t depth() const { return depth_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Rational& default_value() const { return default_; }

  Rational value_at(const Point& p) const;
  Rational integral() const;
  Rational integral_over(const Region& r) const;
  Rational support_measure() const;  // total measure of explicit pieces
  bool is_zero() const;

  SimpleFunction abs() const;
  SimpleFunction restricted(const Region& r) const;  // f * chi_r (default 0 outside)
  SimpleFunction promoted(std::size_t depth) const;

  // Distinct values of |f| (including |default| when nonzero), descending.
  std::vector<Rational> levels_desc() const;

 private:
  std::size_t depth_ = 0;
  std::vector<Piece> pieces_;
  Rational default_ = Rational(0);
};

// Strictly positive simple function; default value must be > 0 as well so the
// weight is positive on the whole torus.
class WeightFn {
 public:
  static WeightFn make(SimpleFunction f);
  static WeightFn uniform(const Rational& c = Rational(1));
  const SimpleFunction& fn() const { return fn_; }
  Rational measure(const Region& r) const { return fn_.integral_over(r); }
  Rational total() const { return fn_.integral(); }
  WeightFn reciprocal() const;       // pointwise 1/w
  WeightFn power_int(long e) const;  // pointwise w^e

 private:
  SimpleFunction fn_;
};

// Exact average of f over a cube: (1/|Q|) * integral_Q f.
Rational average(const SimpleFunction& f, const CubeSpec& q);

// q-th POWER of the L^q norm, exact: sum |v|^q * w(piece). IrrationalPower if
// some |v|^q is not rational.
Rational lq_norm_pow(const SimpleFunction& f, const Rational& q, const WeightFn* w = nullptr);

// q-th POWER of the weak-L^q norm: max over levels v of v^q * w({|f| >= v}),
// optionally of the level sets intersected with `within`.
Rational weak_lq_norm_pow(const SimpleFunction& f, const Rational& q, const WeightFn* w = nullptr,
                          const Region* within = nullptr);

// One-dimensional piecewise-constant factor: breakpoint partition of [0,1).
struct WeightFactor {
  std::vector<Rational> cuts;    // 0 = cuts[0] < ... < cuts[k] = 1
  std::vector<Rational> values;  // size k, all > 0
};

// Product weight v(x) = prod_i w_i(x_i) over finitely many factors.
WeightFn tensor_weight(const std::vector<WeightFactor>& factors);

// Weighted measure of a cylinder box described by its first arcs and its
// total Haar measure: coordinates beyond depth(w) integrate out, so huge
// sizelevels never have to be realized.
Rational cylinder_weighted_measure(const WeightFn* w, const std::vector<Arc>& head_arcs,
                                   const Rational& total_measure);

}  // namespace torus
