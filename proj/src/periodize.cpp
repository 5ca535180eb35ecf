#include "torus/periodize.hpp"

#include <algorithm>
#include <cmath>

namespace torus::perio {

namespace {

constexpr double kE = 2.718281828459045235360287471352662497757;

// Rational bounds of e (40 digits): enough to place any working endpoint on
// one side of 1/e.
const Rational& e_lo() {
  static const Rational v(
      "27182818284590452353602874713526624977/10000000000000000000000000000000000000");
  return v;
}
const Rational& e_hi() {
  static const Rational v(
      "27182818284590452353602874713526624978/10000000000000000000000000000000000000");
  return v;
}

// -1, 0(+undecidable), +1 for |x| vs 1/e.
std::optional<int> cmp_abs_inv_e(const Rational& x) {
  Rational a = abs(x);
  if (sgn(a) == 0) return -1;
  Rational inv = 1 / a;
  if (inv < e_lo()) return 1;   // |x| > 1/e
  if (inv > e_hi()) return -1;  // |x| < 1/e
  return std::nullopt;
}

}  // namespace

double ExactLog::value() const { return to_double(a) + to_double(inv_e_coeff) / kE; }

LineWeight LineWeight::power(const Rational& alpha) {
  if (alpha <= -1) fail(Errc::NotIntegrable, "need alpha > -1");
  LineWeight w;
  w.kind_ = Kind::Power;
  w.alpha_ = alpha;
  return w;
}

LineWeight LineWeight::logcap() {
  LineWeight w;
  w.kind_ = Kind::LogCap;
  return w;
}

LineWeight LineWeight::piecewise(std::vector<Rational> cuts, std::vector<Rational> values,
                                 Rational outside) {
  if (cuts.size() != values.size() + 1) fail(Errc::InvalidArgument, "cuts/values mismatch");
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i] >= cuts[i + 1]) fail(Errc::InvalidArgument, "cuts not increasing");
  for (auto& v : values)
    if (sgn(v) < 0) fail(Errc::InvalidArgument, "negative weight value");
  if (sgn(outside) < 0) fail(Errc::InvalidArgument, "negative outside value");
  LineWeight w;
  w.kind_ = Kind::PiecewiseConst;
  w.cuts_ = std::move(cuts);
  w.values_ = std::move(values);
  w.outside_ = std::move(outside);
  return w;
}

double LineWeight::value(double x) const {
  switch (kind_) {
    case Kind::Power:
      return std::pow(std::abs(x), to_double(alpha_));
    case Kind::LogCap:
      return std::max(std::log(1.0 / std::abs(x)), 1.0);
    case Kind::PiecewiseConst:
      for (std::size_t i = 0; i + 1 < cuts_.size(); ++i)
        if (x >= to_double(cuts_[i]) && x < to_double(cuts_[i + 1]))
          return to_double(values_[i]);
      return to_double(outside_);
  }
  return 0.0;
}

namespace {

// Odd antiderivative of logcap: x(1 + log(1/x)) on (0, 1/e], then x + 1/e.
double logcap_anti(double x) {
  double s = x < 0 ? -1.0 : 1.0;
  double a = std::abs(x);
  if (a == 0.0) return 0.0;
  if (a <= 1.0 / kE) return s * a * (1.0 - std::log(a));
  return s * (a + 1.0 / kE);
}

double power_anti(double x, double alpha) {
  double s = x < 0 ? -1.0 : 1.0;
  double a = std::abs(x);
  return s * std::pow(a, alpha + 1.0) / (alpha + 1.0);
}

}  // namespace

double LineWeight::integral(double a, double b) const {
  if (a > b) fail(Errc::InvalidArgument, "need a <= b");
  switch (kind_) {
    case Kind::Power:
      return power_anti(b, to_double(alpha_)) - power_anti(a, to_double(alpha_));
    case Kind::LogCap:
      return logcap_anti(b) - logcap_anti(a);
    case Kind::PiecewiseConst:
      return to_double(integral_exact_pwc(Rational(a), Rational(b)));
  }
  return 0.0;
}

Rational LineWeight::integral_exact_pwc(const Rational& a, const Rational& b) const {
  if (kind_ != Kind::PiecewiseConst) fail(Errc::InvalidArgument, "piecewise-constant only");
  if (a > b) fail(Errc::InvalidArgument, "need a <= b");
  Rational total = outside_ * (b - a);
  for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
    Rational lo = std::max(a, cuts_[i]);
    Rational hi = std::min(b, cuts_[i + 1]);
    if (lo < hi) total += (values_[i] - outside_) * (hi - lo);
  }
  return total;
}

std::optional<ExactLog> LineWeight::integral_exact_logcap(const Rational& a,
                                                          const Rational& b) const {
  if (kind_ != Kind::LogCap || a > b) return std::nullopt;
  // F as a + b/e is exact when the endpoint is 0 or outside the open log
  // region (0 < |x| < 1/e)
  auto anti = [](const Rational& x) -> std::optional<ExactLog> {
    int s = sgn(x);
    if (s == 0) return ExactLog{Rational(0), Rational(0)};
    auto c = cmp_abs_inv_e(x);
    if (!c || *c < 0) return std::nullopt;
    return ExactLog{x, Rational(s)};  // F(x) = x + sgn(x)/e
  };
  auto fa = anti(a), fb = anti(b);
  if (!fa || !fb) return std::nullopt;
  return ExactLog{Rational(fb->a - fa->a), Rational(fb->inv_e_coeff - fa->inv_e_coeff)};
}

double LineWeight::cell_mass_bound(long k) const {
  long a = std::labs(k);
  switch (kind_) {
    case Kind::Power: {
      double al = to_double(alpha_);
      return 2.0 * std::pow(a + 1.0, al + 1.0) / (al + 1.0);
    }
    case Kind::LogCap:
      return 2.0 * a + 2.0 + 2.0 / kE;
    case Kind::PiecewiseConst: {
      double m = to_double(outside_);
      for (auto& v : values_) m = std::max(m, to_double(v));
      return m;
    }
  }
  return 0.0;
}

double LineWeight::cell_sup(long k) const {
  switch (kind_) {
    case Kind::Power: {
      double al = to_double(alpha_);
      double near = std::min(std::abs(static_cast<double>(k)), std::abs(k + 1.0));
      double far = std::max(std::abs(static_cast<double>(k)), std::abs(k + 1.0));
      if (al >= 0) return std::pow(far, al);
      if (near == 0.0) fail(Errc::InvalidArgument, "singular cell has no finite sup");
      return std::pow(near, al);
    }
    case Kind::LogCap: {
      double near = std::min(std::abs(static_cast<double>(k)), std::abs(k + 1.0));
      if (near == 0.0) fail(Errc::InvalidArgument, "singular cell has no finite sup");
      return std::max(std::log(1.0 / near), 1.0);
    }
    case Kind::PiecewiseConst: {
      double m = to_double(outside_);
      for (auto& v : values_) m = std::max(m, to_double(v));
      return m;
    }
  }
  return 0.0;
}

namespace {

// Tail of sum_{|k| > K} lambda^-|k| * mass_bound(k): the envelope terms decay
// geometrically once the polynomial growth ratio falls under lambda.
double mass_tail_bound(const PeriodizedWeight& pw, long K) {
  double lam = to_double(pw.lambda);
  double t1 = 2.0 * std::pow(lam, -(K + 1.0)) * pw.base.cell_mass_bound(K + 1);
  double growth = 1.0;
  switch (pw.base.kind()) {
    case LineWeight::Kind::Power:
      growth = std::pow((K + 3.0) / (K + 2.0), to_double(pw.base.alpha()) + 1.0);
      break;
    case LineWeight::Kind::LogCap:
      growth = (2.0 * (K + 2.0) + 2.0 + 2.0 / kE) / (2.0 * (K + 1.0) + 2.0 + 2.0 / kE);
      break;
    case LineWeight::Kind::PiecewiseConst:
      break;
  }
  double rho = growth / lam;
  if (rho >= 1.0) return -1.0;  // raise K and retry
  return t1 / (1.0 - rho);
}

double point_tail_bound(const PeriodizedWeight& pw, long K) {
  double lam = to_double(pw.lambda);
  double t1 =
      std::pow(lam, -(K + 1.0)) * (pw.base.cell_sup(K + 1) + pw.base.cell_sup(-(K + 2)));
  double growth = 1.0;
  if (pw.base.kind() == LineWeight::Kind::Power && sgn(pw.base.alpha()) > 0)
    growth = std::pow((K + 3.0) / (K + 2.0), to_double(pw.base.alpha()));
  double rho = growth / lam;
  if (rho >= 1.0) return -1.0;
  return t1 / (1.0 - rho);
}

std::vector<std::pair<double, double>> unwrap(const Arc& interval) {
  double lo = to_double(interval.start);
  double hi = lo + to_double(interval.length);
  if (hi <= 1.0) return {{lo, hi}};
  return {{lo, 1.0}, {0.0, hi - 1.0}};
}

}  // namespace

PerioValue periodize_integral(const PeriodizedWeight& pw, const Arc& interval) {
  if (pw.lambda <= 1) fail(Errc::TailDiverges, "need lambda > 1");
  auto pieces = unwrap(interval);
  double lam = to_double(pw.lambda);
  for (long K = std::max(2L, pw.truncation_k);; K *= 2) {
    if (K > (1L << 22)) fail(Errc::TailDiverges, "periodization tail does not converge");
    double tail = mass_tail_bound(pw, K);
    if (tail < 0) continue;
    double value = 0.0;
    for (long k = -K; k <= K; ++k) {
      double a = std::pow(lam, -static_cast<double>(std::labs(k)));
      for (auto& [plo, phi] : pieces) value += a * pw.base.integral(plo + k, phi + k);
    }
    PerioValue out;
    out.value = value;
    out.tail = tail;
    out.used_k = K;
    if (pw.base.kind() == LineWeight::Kind::PiecewiseConst) {
      Rational exact(0);
      std::vector<std::pair<Rational, Rational>> rp;
      Rational rlo = interval.start, rhi = interval.start + interval.length;
      if (rhi <= 1) {
        rp.emplace_back(rlo, rhi);
      } else {
        rp.emplace_back(rlo, Rational(1));
        rp.emplace_back(Rational(0), Rational(rhi - 1));
      }
      for (long k = -K; k <= K; ++k) {
        Rational a = pow_int(pw.lambda, -std::labs(k));
        for (auto& [plo, phi] : rp)
          exact += a * pw.base.integral_exact_pwc(Rational(plo + k), Rational(phi + k));
      }
      out.exact_partial = exact;
    }
    if (tail <= 1e-9 * std::max(value, 1e-30)) return out;
  }
}

PerioValue periodize_point(const PeriodizedWeight& pw, double x) {
  if (pw.lambda <= 1) fail(Errc::TailDiverges, "need lambda > 1");
  double lam = to_double(pw.lambda);
  for (long K = std::max(2L, pw.truncation_k);; K *= 2) {
    if (K > (1L << 22)) fail(Errc::TailDiverges, "periodization tail does not converge");
    double tail = point_tail_bound(pw, K);
    if (tail < 0) continue;
    double value = 0.0;
    for (long k = -K; k <= K; ++k)
      value += std::pow(lam, -static_cast<double>(std::labs(k))) * pw.base.value(x + k);
    PerioValue out;
    out.value = value;
    out.tail = tail;
    out.used_k = K;
    if (tail <= 1e-9 * std::max(value, 1e-30)) return out;
  }
}

namespace {

// int_0^h w(x)^j dx for the singular bases.
double singular_moment(const LineWeight& w, long j, double h) {
  if (j == 0) return h;
  if (w.kind() == LineWeight::Kind::LogCap) {
    // on (0, c]: int (log 1/x)^j dx = c sum_{i<=j} (j!/i!) (log 1/c)^i
    double c = std::min(h, 1.0 / kE);
    double L = std::log(1.0 / c);
    double jfac = 1.0;
    for (long i = 2; i <= j; ++i) jfac *= i;
    double sum = 0.0, ifac = 1.0, Lp = 1.0;
    for (long i = 0; i <= j; ++i) {
      if (i > 0) {
        ifac *= i;
        Lp *= L;
      }
      sum += (jfac / ifac) * Lp;
    }
    double core = c * sum;
    if (h > 1.0 / kE) core += h - 1.0 / kE;  // w = 1 past the log region
    return core;
  }
  if (w.kind() == LineWeight::Kind::Power) {
    double a = to_double(w.alpha()) * j;
    if (a <= -1.0) fail(Errc::NotIntegrable, "w^j not integrable at 0");
    return std::pow(h, a + 1.0) / (a + 1.0);
  }
  fail(Errc::InvalidArgument, "no singular moment for piecewise-constant bases");
}

}  // namespace

std::pair<double, double> periodize_power_integral(const PeriodizedWeight& pw, long r,
                                                   const Arc& interval, double rel_tol) {
  if (r < 1) fail(Errc::InvalidArgument, "need integer r >= 1");
  double lam = to_double(pw.lambda);
  long K = std::max(8L, pw.truncation_k);
  double ptail = point_tail_bound(pw, K);
  while (ptail < 0 && K <= (1L << 22)) {
    K *= 2;
    ptail = point_tail_bound(pw, K);
  }
  if (ptail < 0) fail(Errc::TailDiverges, "periodization tail does not converge");

  bool singular_at_zero = pw.base.kind() == LineWeight::Kind::LogCap ||
                          (pw.base.kind() == LineWeight::Kind::Power && sgn(pw.base.alpha()) < 0);

  double total_lo = 0.0, total_hi = 0.0;

  // The periodized weight is singular at x = 0 (the k = 0 translate) and at
  // x = 1 (the k = -1 translate). Slivers touching either point integrate in
  // closed form: (c0 w(dist) + g)^r expanded binomially, with g enclosed by
  // per-translate endpoint values.
  auto carve_sliver = [&](double lo_x, double hi_x, bool left_end) {
    double h = hi_x - lo_x;
    long sing_k = left_end ? 0 : -1;
    double c0 = std::pow(lam, -static_cast<double>(std::labs(sing_k)));
    double far = left_end ? hi_x : lo_x;  // the endpoint away from the singularity
    double g_lo = 0.0, g_hi = 0.0;
    for (long k = -K; k <= K; ++k) {
      if (k == sing_k) continue;
      double c = std::pow(lam, -static_cast<double>(std::labs(k)));
      double v0 = pw.base.value((left_end ? 0.0 : 1.0) + k), vh = pw.base.value(far + k);
      g_lo += c * std::min(v0, vh);
      g_hi += c * std::max(v0, vh);
    }
    g_hi += ptail;
    double s_lo = 0.0, s_hi = 0.0, binc = 1.0;
    for (long jj = 0; jj <= r; ++jj) {
      double mom = singular_moment(pw.base, jj, h) * std::pow(c0, static_cast<double>(jj));
      s_lo += binc * std::pow(g_lo, static_cast<double>(r - jj)) * mom;
      s_hi += binc * std::pow(g_hi, static_cast<double>(r - jj)) * mom;
      binc = binc * static_cast<double>(r - jj) / static_cast<double>(jj + 1);
    }
    total_lo += s_lo;
    total_hi += s_hi;
  };

  for (auto& piece : unwrap(interval)) {
    double a = piece.first, b = piece.second;
    if (a >= b) continue;

    if (singular_at_zero && a == 0.0) {
      double h = std::min(b, 1e-4);
      carve_sliver(0.0, h, /*left_end=*/true);
      a = h;
      if (a >= b) continue;
    }
    if (singular_at_zero && b == 1.0) {
      double h = std::min(1.0 - a, 1e-4);
      carve_sliver(1.0 - h, 1.0, /*left_end=*/false);
      b = 1.0 - h;
      if (a >= b) continue;
    }

    // split at every kink/singularity/cut of every translate so each segment
    // sees only monotone translate restrictions
    std::vector<double> cps{a, b};
    for (long k = -K; k <= K; ++k) {
      switch (pw.base.kind()) {
        case LineWeight::Kind::LogCap:
          for (double t : {-1.0 / kE - k, 1.0 / kE - k, -static_cast<double>(k)})
            if (t > a && t < b) cps.push_back(t);
          break;
        case LineWeight::Kind::Power: {
          double t = -static_cast<double>(k);
          if (t > a && t < b) cps.push_back(t);
          break;
        }
        case LineWeight::Kind::PiecewiseConst:
          for (auto& cu : pw.base.cuts()) {
            double t = to_double(cu) - k;
            if (t > a && t < b) cps.push_back(t);
          }
          break;
      }
    }

    struct Seg {
      double lo, hi, vlo, vhi;
    };
    auto enclose = [&](double u, double v, double& out_lo, double& out_hi) {
      double smin = 0.0, smax = 0.0;
      for (long k = -K; k <= K; ++k) {
        double c = std::pow(lam, -static_cast<double>(std::labs(k)));
        double x = pw.base.value(u + k), y = pw.base.value(v + k);
        smin += c * std::min(x, y);
        smax += c * std::max(x, y);
      }
      out_lo = smin;
      out_hi = smax + ptail;
    };
    std::sort(cps.begin(), cps.end());
    std::vector<Seg> segs;
    for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
      if (cps[i + 1] - cps[i] <= 0) continue;
      Seg s{cps[i], cps[i + 1], 0, 0};
      enclose(s.lo, s.hi, s.vlo, s.vhi);
      segs.push_back(s);
    }
    auto seg_bounds = [&](const Seg& s) {
      double len = s.hi - s.lo;
      return std::make_pair(len * std::pow(s.vlo, static_cast<double>(r)),
                            len * std::pow(s.vhi, static_cast<double>(r)));
    };
    double sum_lo = 0.0, sum_hi = 0.0;
    for (int round = 0;; ++round) {
      sum_lo = 0.0;
      sum_hi = 0.0;
      for (auto& s : segs) {
        auto [l, h] = seg_bounds(s);
        sum_lo += l;
        sum_hi += h;
      }
      if (sum_hi - sum_lo <= rel_tol * std::max(sum_lo, 1e-30) || segs.size() > 20000 ||
          round >= 40)
        break;
      std::vector<std::size_t> order(segs.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::size_t cut = std::min<std::size_t>(segs.size(), 64);
      std::partial_sort(order.begin(), order.begin() + cut, order.end(),
                        [&](std::size_t x, std::size_t y) {
                          auto [xl, xh] = seg_bounds(segs[x]);
                          auto [yl, yh] = seg_bounds(segs[y]);
                          return xh - xl > yh - yl;
                        });
      std::vector<bool> split(segs.size(), false);
      for (std::size_t i = 0; i < cut; ++i) split[order[i]] = true;
      std::vector<Seg> next;
      next.reserve(segs.size() + cut);
      for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!split[i]) {
          next.push_back(segs[i]);
          continue;
        }
        double mid = 0.5 * (segs[i].lo + segs[i].hi);
        Seg s1{segs[i].lo, mid, 0, 0}, s2{mid, segs[i].hi, 0, 0};
        enclose(s1.lo, s1.hi, s1.vlo, s1.vhi);
        enclose(s2.lo, s2.hi, s2.vlo, s2.vhi);
        next.push_back(s1);
        next.push_back(s2);
      }
      segs = std::move(next);
    }
    total_lo += sum_lo;
    total_hi += sum_hi;
  }
  return {total_lo, total_hi};
}

double a1_line_estimate(const LineWeight& w) {
  double best = 1.0;
  const long grid = 64;
  for (long ia = -2 * grid; ia < 2 * grid; ++ia) {
    for (long len : {1L, 2L, 3L, 5L, 8L, 13L, 21L, 34L, 64L, 128L}) {
      double a = static_cast<double>(ia) / grid;
      double b = a + static_cast<double>(len) / grid;
      double avg = w.integral(a, b) / (b - a);
      double inf;
      switch (w.kind()) {
        case LineWeight::Kind::LogCap:
          inf = w.value(std::max(std::abs(a), std::abs(b)));
          break;
        case LineWeight::Kind::Power:
          if (sgn(w.alpha()) <= 0) {
            inf = w.value(std::max(std::abs(a), std::abs(b)));
          } else {
            if (a <= 0.0 && b >= 0.0) continue;  // inf = 0, ratio unbounded
            inf = w.value(std::min(std::abs(a), std::abs(b)));
          }
          break;
        case LineWeight::Kind::PiecewiseConst: {
          inf = w.value(a);
          double step = (b - a) / 256;
          for (double x = a; x < b; x += step) inf = std::min(inf, w.value(x + step / 2));
          break;
        }
        default:
          continue;
      }
      if (inf <= 0.0) continue;
      best = std::max(best, avg / inf);
    }
  }
  return best;
}

double rh_line_estimate(const LineWeight& w, long r) {
  if (r < 2) fail(Errc::InvalidArgument, "need integer r >= 2");
  double best = 1.0;
  const long grid = 64;
  auto moment = [&](double a, double b) {
    if (w.kind() == LineWeight::Kind::PiecewiseConst) {
      double acc = 0.0;
      double step = (b - a) / 4096;
      for (double x = a; x < b; x += step) acc += std::pow(w.value(x + step / 2), r) * step;
      return acc;
    }
    double s = 0.0;
    auto one_side = [&](double lo, double hi) {  // 0 <= lo < hi
      if (hi <= lo) return;
      if (w.kind() == LineWeight::Kind::Power) {
        double e = to_double(w.alpha()) * r;
        s += (std::pow(hi, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
      } else {
        s += singular_moment(w, r, hi) - singular_moment(w, r, lo);
      }
    };
    if (a < 0 && b > 0) {
      one_side(0.0, -a);
      one_side(0.0, b);
    } else {
      one_side(std::min(std::abs(a), std::abs(b)), std::max(std::abs(a), std::abs(b)));
    }
    return s;
  };
  for (long ia = -2 * grid; ia < 2 * grid; ++ia) {
    for (long len : {1L, 2L, 3L, 5L, 8L, 13L, 21L, 34L, 64L, 128L}) {
      double a = static_cast<double>(ia) / grid;
      double b = a + static_cast<double>(len) / grid;
      double mean = w.integral(a, b) / (b - a);
      if (mean <= 0.0) continue;
      double mr = moment(a, b) / (b - a);
      best = std::max(best, std::pow(mr, 1.0 / r) / mean);
    }
  }
  return best;
}

TransferCheck check_perio_a1(const PeriodizedWeight& pw, const std::vector<Arc>& family,
                             long samples_per_interval) {
  TransferCheck out;
  out.line_constant = a1_line_estimate(pw.base);
  double lam2 = to_double(pw.lambda) * to_double(pw.lambda);
  bool first = true;
  for (auto& I : family) {
    ++out.intervals;
    PerioValue pv = periodize_integral(pw, I);
    double avg_upper = (pv.value + pv.tail) / to_double(I.length);
    double lo = to_double(I.start), len = to_double(I.length);
    for (long s = 0; s < samples_per_interval; ++s) {
      double x = lo + (s + 0.5) * len / samples_per_interval;
      if (x >= 1.0) x -= 1.0;
      if (x == 0.0) continue;  // singular point: the bound is trivial there
      double wx_lower = periodize_point(pw, x).value;  // truncation only lowers it
      ++out.checks;
      double slack = lam2 * out.line_constant * wx_lower - avg_upper;
      if (first || slack < out.min_slack) {
        out.min_slack = slack;
        first = false;
      }
      if (slack < 0) ++out.violations;
    }
  }
  return out;
}

TransferCheck check_perio_rh(const PeriodizedWeight& pw, long r, const std::vector<Arc>& family) {
  TransferCheck out;
  out.line_constant = rh_line_estimate(pw.base, r);
  double lam2 = to_double(pw.lambda) * to_double(pw.lambda);
  bool first = true;
  for (auto& I : family) {
    ++out.intervals;
    ++out.checks;
    PerioValue pv = periodize_integral(pw, I);
    double len = to_double(I.length);
    double mean_lower = std::max(0.0, pv.value - pv.tail) / len;
    auto [plo, phi] = periodize_power_integral(pw, r, I);
    double lhs_upper = std::pow(phi / len, 1.0 / r);
    double slack = lam2 * out.line_constant * mean_lower - lhs_upper;
    if (first || slack < out.min_slack) {
      out.min_slack = slack;
      first = false;
    }
    if (slack < 0) ++out.violations;
  }
  return out;
}

std::vector<Arc> default_interval_family(long n) {
  std::vector<Arc> out;
  for (long i = 0; i < n; ++i) {
    Rational len = pow2(-(2 + (i % 4)));  // 1/4 down to 1/32
    Rational start = rat((5 * i) % (4 * n), 4 * n);
    if (i % 5 == 4) start = 1 - len / 2;  // wrap-around member
    out.emplace_back(start, len);
  }
  return out;
}

std::pair<WeightFn, WeightFn> staircase_envelopes(const PeriodizedWeight& pw, long s) {
  if (s < 0 || s > 16) fail(Errc::InvalidArgument, "resolution exponent out of range");
  long cells = 1L << s;
  std::vector<SimpleFunction::Piece> lo_pieces, hi_pieces;
  const Rational floor_value = rat(1, 1000000000);
  for (long k = 0; k < cells; ++k) {
    Arc cell(rat(k, cells), rat(1, cells));
    PerioValue pv = periodize_integral(pw, cell);
    double fp_slack = 1e-9 * std::max(std::abs(pv.value), 1e-12);
    Rational mean_lo(std::max(0.0, pv.value - pv.tail - fp_slack) * cells);
    Rational mean_hi((pv.value + pv.tail + fp_slack) * cells);
    if (mean_lo <= 0) mean_lo = floor_value;
    Region reg = Region::of_box(Box({cell}));
    lo_pieces.push_back({reg, mean_lo});
    hi_pieces.push_back({reg, mean_hi});
  }
  WeightFn lo =
      WeightFn::make(SimpleFunction::make(1, std::move(lo_pieces), floor_value, false));
  WeightFn hi = WeightFn::make(SimpleFunction::make(1, std::move(hi_pieces), Rational(1), false));
  return {lo, hi};
}

}  // namespace torus::perio
