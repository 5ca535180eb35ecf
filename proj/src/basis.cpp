#include "torus/basis.hpp"

#include <algorithm>
#include <cmath>

namespace torus {

SizeLevel SizeLevel::of(long m) {
  if (m < 0) fail(Errc::InvalidArgument, "negative sizelevel");
  SizeLevel s;
  s.m = m;
  if (m == 0) return s;
  long n = static_cast<long>(std::sqrt(static_cast<double>(m - 1)));
  while ((n + 1) * (n + 1) <= m - 1) ++n;
  while (n * n > m - 1) --n;
  s.n = n;
  s.j = m - n * n;
  return s;
}

std::vector<long> side_exponents(long m) {
  SizeLevel s = SizeLevel::of(m);
  if (m == 0) return {};
  std::vector<long> e(static_cast<std::size_t>(s.ell()));
  if (s.j <= s.n) {
    for (long i = 0; i < s.n; ++i) e[i] = s.n;
    e[s.n] = s.j;
  } else {
    for (long i = 0; i < s.j - s.n; ++i) e[i] = s.n + 1;
    for (long i = s.j - s.n; i <= s.n; ++i) e[i] = s.n;
  }
  return e;
}

Box fundamental_domain(long m) {
  auto e = side_exponents(m);
  std::vector<Arc> arcs;
  arcs.reserve(e.size());
  for (long ei : e) arcs.emplace_back(Rational(0), pow2(-ei));
  return Box(std::move(arcs));
}

long halved_coordinate(long m) {
  if (m < 1) fail(Errc::InvalidArgument, "halved_coordinate needs m >= 1");
  SizeLevel s = SizeLevel::of(m);
  if (s.j <= s.n || s.j == 1) return s.n + 1;
  return s.j - s.n;
}

std::vector<Point> subgroup_elements(long m, long cap_log2) {
  if (m > cap_log2)
    fail(Errc::CapExceeded, "H_m enumeration above 2^" + std::to_string(cap_log2) +
                                "; use locate() for dyadic queries");
  auto e = side_exponents(m);
  std::vector<Point> out;
  out.reserve(1u << m);
  std::vector<long> idx(e.size(), 0);
  while (true) {
    std::vector<Rational> coords;
    coords.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) coords.push_back(rat(idx[i]) * pow2(-e[i]));
    out.push_back(Point(std::move(coords)));
    std::size_t i = 0;
    for (; i < e.size(); ++i) {
      if (++idx[i] < (1L << e[i])) break;
      idx[i] = 0;
    }
    if (i == e.size()) break;
  }
  return out;
}

CubeSpec make_cube(long m, std::vector<Rational> translation, bool dyadic_hint) {
  SizeLevel s = SizeLevel::of(m);
  if (static_cast<long>(translation.size()) != s.ell())
    fail(Errc::InvalidArgument, "translation size must equal ell(m)");
  for (auto& t : translation) {
    if (sgn(t) < 0 || t >= 1) fail(Errc::InvalidArgument, "translation outside [0,1)");
  }
  CubeSpec c;
  c.m = m;
  c.translation = std::move(translation);
  c.dyadic = dyadic_hint && cube_is_dyadic(c);
  if (dyadic_hint && !c.dyadic) fail(Errc::NotDyadic, "translation not in H_m");
  return c;
}

bool cube_is_dyadic(const CubeSpec& c) {
  auto e = side_exponents(c.m);
  for (std::size_t i = 0; i < e.size(); ++i) {
    Rational scaled = c.translation[i] * pow2(e[i]);
    if (scaled.get_den() != 1) return false;
  }
  return true;
}

CubeSpec locate(const Point& x, long m, bool strict_open) {
  auto e = side_exponents(m);
  std::vector<Rational> t;
  t.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    Rational scaled = x.coord(i) * pow2(e[i]);
    if (strict_open && scaled.get_den() == 1 && sgn(scaled) != 0)
      fail(Errc::BoundaryPoint, "coordinate " + std::to_string(i + 1) + " on a cell boundary");
    t.push_back(rat(floor_rat(scaled)) * pow2(-e[i]));
  }
  CubeSpec c;
  c.m = m;
  c.translation = std::move(t);
  c.dyadic = true;
  return c;
}

Region cube_region(const CubeSpec& c) {
  auto e = side_exponents(c.m);
  std::vector<Arc> arcs;
  arcs.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) arcs.emplace_back(c.translation[i], pow2(-e[i]));
  return Region::of_box(Box(std::move(arcs)));
}

std::vector<CubeSpec> ancestor_chain(const CubeSpec& c) {
  if (!c.dyadic || !cube_is_dyadic(c)) fail(Errc::NotDyadic, "ancestor_chain needs a dyadic cube");
  std::vector<CubeSpec> chain{c};
  CubeSpec cur = c;
  for (long m = c.m; m >= 1; --m) {
    long hc = halved_coordinate(m);  // 1-based
    SizeLevel prev = SizeLevel::of(m - 1);
    CubeSpec par;
    par.m = m - 1;
    par.dyadic = true;
    auto pe = side_exponents(m - 1);
    par.translation.assign(cur.translation.begin(),
                           cur.translation.begin() + prev.ell());
    if (hc <= prev.ell()) {
      Rational scaled = cur.translation[hc - 1] * pow2(pe[hc - 1]);
      par.translation[hc - 1] = rat(floor_rat(scaled)) * pow2(-pe[hc - 1]);
    }
    cur = par;
    chain.push_back(std::move(par));
  }
  return chain;
}

}  // namespace torus
