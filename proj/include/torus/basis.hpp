#pragma once

#include <vector>

#include "torus/geometry.hpp"

namespace torus {

// m = n^2 + j with 1 <= j <= 2n+1 (m = 0 is the root). ell = number of
// nonfree coordinates.
struct SizeLevel {
  long m = 0, n = 0, j = 0;
  static SizeLevel of(long m);
  long ell() const { return m == 0 ? 0 : n + 1; }
};

// Per-coordinate side exponents of V_m: side_i = 2^-e_i, i = 1..ell(m).
std::vector<long> side_exponents(long m);

// The nonfree box of V_m at depth ell(m); measure 2^-m.
Box fundamental_domain(long m);

// 1-based index of the unique coordinate whose side halves from V_{m-1} to V_m.
long halved_coordinate(long m);

// All 2^m elements of H_m. Refuses above the cap: callers must switch to
// locate() instead of enumerating.
std::vector<Point> subgroup_elements(long m, long cap_log2 = 22);

// A basis cube g + V_m. `dyadic` marks membership in N_m (g in H_m).
struct CubeSpec {
  long m = 0;
  std::vector<Rational> translation;  // size ell(m)
  bool dyadic = true;
  SizeLevel level() const { return SizeLevel::of(m); }
  Rational measure() const { return pow2(-m); }
};

CubeSpec make_cube(long m, std::vector<Rational> translation, bool dyadic_hint = false);

// The dyadic cube of N_m containing x, computed coordinate-wise (H_m is never
// enumerated). With strict_open, a coordinate exactly on a cell boundary is an
// error.
CubeSpec locate(const Point& x, long m, bool strict_open = false);

Region cube_region(const CubeSpec& c);

// Dyadic ancestors from sizelevel m down to the root (m+1 cubes).
std::vector<CubeSpec> ancestor_chain(const CubeSpec& c);

bool cube_is_dyadic(const CubeSpec& c);

}  // namespace torus
