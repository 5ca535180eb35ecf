#include "torus/binomial.hpp"

#include <algorithm>
#include <cmath>

namespace torus::binomial {

std::vector<Rational> pmf(long m, const Rational& p) {
  if (m < 0 || sgn(p) < 0 || p > 1) fail(Errc::InvalidArgument, "need m >= 0, p in [0,1]");
  Rational pc = 1 - p;
  std::vector<Rational> ppow(m + 1), cpow(m + 1);
  ppow[0] = cpow[0] = Rational(1);
  for (long i = 1; i <= m; ++i) {
    ppow[i] = ppow[i - 1] * p;
    cpow[i] = cpow[i - 1] * pc;
  }
  std::vector<Rational> out(m + 1);
  for (long i = 0; i <= m; ++i) out[i] = rat(binom(m, i)) * ppow[i] * cpow[m - i];
  return out;
}

Rational alpha(long m, const Rational& p, long l) {
  if (l <= 0) return Rational(1);
  if (l > m) return Rational(0);
  auto f = pmf(m, p);
  Rational tail(0);
  for (long i = m; i >= l; --i) tail += f[i];
  return tail;
}

Rational feller_tail(long m, const Rational& p, long k) {
  if (k < 0 || k >= m) fail(Errc::InvalidArgument, "need 0 <= k < m");
  // int_0^p t^k (1-t)^(m-k-1) dt, expanding the second factor binomially
  long d = m - k - 1;
  Rational integral(0);
  Rational pp = pow_int(p, k + 1);
  for (long i = 0; i <= d; ++i) {
    Rational term = rat(binom(d, i)) * pp / rat(k + i + 1);
    integral += (i % 2 == 0) ? term : Rational(-term);
    pp *= p;
  }
  return rat(m) * rat(binom(m - 1, k)) * integral;
}

bool dominance_check(long m, const Rational& eps, const Rational& p) {
  if (eps > p) fail(Errc::ParamOrder, "need eps <= p");
  auto fe = pmf(m, eps);
  auto fp = pmf(m, p);
  Rational te(0), tp(0);
  for (long l = m; l >= 1; --l) {
    te += fe[l];
    tp += fp[l];
    if (te > tp) return false;
  }
  return true;
}

StepProfile step_profile(long m, const Rational& p) {
  StepProfile prof;
  prof.m = m;
  prof.p = p;
  prof.alpha.assign(m + 2, Rational(0));
  auto f = pmf(m, p);
  prof.alpha[m + 1] = Rational(0);
  for (long l = m; l >= 0; --l) prof.alpha[l] = prof.alpha[l + 1] + f[l];
  // the suffix sum of the whole pmf is exactly 1
  return prof;
}

long StepProfile::value_at(const Rational& t) const {
  for (long l = m; l >= 0; --l)
    if (t < alpha[l]) return l;
  return 0;
}

Rational StepProfile::integral() const {
  Rational s(0);
  for (long l = 0; l <= m; ++l) s += rat(l) * (alpha[l] - alpha[l + 1]);
  return s;
}

HFunction::HFunction(StepProfile prof) : prof_(std::move(prof)) {
  at_alpha_.assign(prof_.alpha.size(), Rational(0));
  for (long l = prof_.m; l >= 0; --l)
    at_alpha_[l] = at_alpha_[l + 1] + rat(l) * (prof_.alpha[l] - prof_.alpha[l + 1]);
}

Rational HFunction::operator()(const Rational& t) const {
  if (sgn(t) < 0 || t > 1) fail(Errc::InvalidArgument, "H is defined on [0,1]");
  for (long l = prof_.m; l >= 0; --l) {
    if (t <= prof_.alpha[l])
      return at_alpha_[l + 1] + rat(l) * (t - prof_.alpha[l + 1]);
  }
  return at_alpha_.front();
}

HFunction h_function(long m, const Rational& p) { return HFunction(step_profile(m, p)); }

RearrangementReport rearrangement_sup_check(long m, const Rational& p, const Rational& t,
                                            long trials, std::uint64_t seed) {
  if (sgn(t) <= 0 || t > 1) fail(Errc::InvalidArgument, "need t in (0,1]");
  HFunction h = h_function(m, p);
  const StepProfile& prof = h.profile();
  std::vector<Rational> len(m + 1);
  for (long l = 0; l <= m; ++l) len[l] = prof.alpha[l] - prof.alpha[l + 1];

  RearrangementReport rep;
  rep.trials = trials;
  rep.h_at_t = h(t);
  rep.worst_excess = Rational(-1);

  // greedy: fill the largest values first
  {
    Rational remaining = t, value(0);
    for (long l = m; l >= 0 && sgn(remaining) > 0; --l) {
      Rational take = std::min(len[l], remaining);
      value += rat(l) * take;
      remaining -= take;
    }
    rep.greedy_value = value;
    rep.greedy_attains = (value == rep.h_at_t);
  }

  Rng rng(seed ? seed : 0xb10c5eed);
  std::vector<long> order(m + 1);
  for (long l = 0; l <= m; ++l) order[l] = l;
  for (long it = 0; it < trials; ++it) {
    // random measurable union of parts of the level cells with |U| = t
    for (long i = m; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<Rational> take(m + 1, Rational(0));
    Rational remaining = t;
    for (long idx = 0; idx <= m && sgn(remaining) > 0; ++idx) {
      long l = order[idx];
      Rational frac = rat(rng.range(0, 8), 8);
      take[l] = std::min(len[l], Rational(remaining * frac));
      remaining -= take[l];
    }
    for (long idx = 0; idx <= m && sgn(remaining) > 0; ++idx) {
      long l = order[idx];
      Rational more = std::min(Rational(len[l] - take[l]), remaining);
      take[l] += more;
      remaining -= more;
    }
    Rational value(0);
    for (long l = 0; l <= m; ++l) value += rat(l) * take[l];
    Rational excess = value - rep.h_at_t;
    if (excess > rep.worst_excess) rep.worst_excess = excess;
    if (sgn(excess) > 0) rep.all_below = false;
  }
  return rep;
}

// ----- float lane -----

std::vector<double> tails_d(long m, double p) {
  if (m < 0 || p < 0.0 || p > 1.0) fail(Errc::InvalidArgument, "need m >= 0, p in [0,1]");
  std::vector<double> tails(m + 2, 0.0);
  if (p == 0.0) {
    tails[0] = 1.0;
    return tails;
  }
  if (p == 1.0) {
    for (long l = 0; l <= m; ++l) tails[l] = 1.0;
    return tails;
  }
  double lp = std::log(p), lq = std::log1p(-p), lg = std::lgamma(m + 1.0);
  std::vector<double> f(m + 1);
  for (long i = 0; i <= m; ++i)
    f[i] = std::exp(lg - std::lgamma(i + 1.0) - std::lgamma(m - i + 1.0) + i * lp +
                    (m - i) * lq);
  for (long l = m; l >= 1; --l) tails[l] = tails[l + 1] + f[l];
  tails[0] = 1.0;
  for (long l = 1; l <= m; ++l) tails[l] = std::min(1.0, tails[l]);
  return tails;
}

double model_p(long m, double q, double cq) {
  return std::min(1.0, cq / std::pow(static_cast<double>(m), 1.0 / q));
}

long m0_for(double q, double cq) {
  for (long m = 1;; ++m) {
    double a = cq / std::pow(static_cast<double>(m), 1.0 / q);
    double b = cq * std::pow(static_cast<double>(m), 1.0 - 1.0 / q);
    if (a <= 1.0 && b >= 1.0) return m;
    if (m > (1L << 30)) fail(Errc::PreconditionViolated, "no m0 below 2^30");
  }
}

namespace {

struct HPiecesD {
  std::vector<double> alpha;  // descending, alpha[0] = 1, alpha[m+1] = 0
  std::vector<double> h;      // H at alpha[k]
};

HPiecesD h_pieces_d(long m, double p) {
  HPiecesD out;
  out.alpha = tails_d(m, p);
  out.h.assign(m + 2, 0.0);
  for (long l = m; l >= 0; --l)
    out.h[l] = out.h[l + 1] + l * (out.alpha[l] - out.alpha[l + 1]);
  return out;
}

}  // namespace

double f_sup(long m, double q, double cq) {
  if (m < 1) fail(Errc::InvalidArgument, "need m >= 1");
  double p = model_p(m, q, cq);
  HPiecesD hp = h_pieces_d(m, p);
  double scale = std::pow(static_cast<double>(m), 1.0 - 1.0 / q);
  double best = 0.0;
  auto consider = [&](double t, double ht) {
    if (t <= 0.0) return;
    double v = ht / (std::pow(t, 1.0 / q) * scale);
    best = std::max(best, v);
  };
  for (long l = 0; l <= m; ++l) {
    double a_hi = hp.alpha[l], a_lo = hp.alpha[l + 1];
    consider(a_hi, hp.h[l]);
    if (l >= 1 && a_hi > a_lo) {
      // on (a_lo, a_hi): H(t) = c + l t; F' = 0 at t = c / (l (q-1))
      double c = hp.h[l + 1] - l * a_lo;
      double tstar = c / (l * (q - 1.0));
      if (tstar > a_lo && tstar < a_hi) consider(tstar, c + l * tstar);
    }
  }
  return best;
}

std::pair<double, double> eqfm_sides(long m, double q, double cq) {
  double p = model_p(m, q, cq);
  HPiecesD hp = h_pieces_d(m, p);
  double c = 1.0 - 1.0 / q;
  // route 1: per-piece antiderivative of H'(s) s^(-1/q)
  double integral = 0.0;
  for (long l = 1; l <= m; ++l)
    integral += l * (q / (q - 1.0)) * (std::pow(hp.alpha[l], c) - std::pow(hp.alpha[l + 1], c));
  double scale = std::pow(static_cast<double>(m), c);
  // route 2: Abel-summed tail powers (l >= 1; the l = 0 term does not belong
  // to the identity)
  double s = 0.0;
  for (long l = 1; l <= m; ++l) s += std::pow(hp.alpha[l], c);
  return {integral / scale, (q / (q - 1.0)) * s / scale};
}

std::pair<double, double> chebyshev_sum_bound(long m, double q, double cq) {
  if (q < golden_ratio() - 1e-12) fail(Errc::PreconditionViolated, "need q >= golden ratio");
  if (m < m0_for(q, cq)) fail(Errc::PreconditionViolated, "need m >= m0");
  double p = model_p(m, q, cq);
  auto tails = tails_d(m, p);
  double c = 1.0 - 1.0 / q;
  double lhs = 0.0;
  for (long l = 0; l <= m; ++l) lhs += std::pow(tails[l], c);
  double a = cq * std::pow(static_cast<double>(m), c);
  long nmax = static_cast<long>(
      std::floor(std::sqrt(std::pow(static_cast<double>(m), 1.0 + 1.0 / q) / cq)));
  double band = 0.0;
  for (long n = 1; n <= nmax; ++n) band += std::pow(static_cast<double>(n), -2.0 + 2.0 / q);
  double rhs = 3.0 * a + 2.0 * std::sqrt(a) * band;
  return {lhs, rhs};
}

MomentRoute moment_route_bound(long m, double q, long R, double cq) {
  if (!(q > 1.0 && q < golden_ratio())) fail(Errc::PreconditionViolated, "need 1 < q < phi");
  if (R < 1) fail(Errc::PreconditionViolated, "need R >= 1");
  if (m < R) fail(Errc::PreconditionViolated, "need m >= R");
  MomentRoute out;
  out.exponent_ok = (R - static_cast<double>(R) / q > 1.0);
  double p = model_p(m, q, cq);
  if (cq > 0.0) {
    double denom = cq * std::pow(static_cast<double>(m), 1.0 - 1.0 / q);
    if (R / denom >= std::exp(1.0))
      fail(Errc::PreconditionViolated, "need R / (cq m^(1-1/q)) < e");
  }
  // E[X^R] = sum_k S2(R,k) fall(m,k) p^k, Stirling numbers exact
  std::vector<std::vector<Int>> s2(R + 1, std::vector<Int>(R + 1, Int(0)));
  s2[0][0] = 1;
  for (long n = 1; n <= R; ++n)
    for (long k = 1; k <= n; ++k) s2[n][k] = Int(k) * s2[n - 1][k] + s2[n - 1][k - 1];
  double moment = 0.0;
  for (long k = 1; k <= R; ++k) {
    Int fall(1);
    for (long i = 0; i < k; ++i) fall *= Int(m - i);
    moment += mpz_get_d(s2[R][k].get_mpz_t()) * mpz_get_d(fall.get_mpz_t()) * std::pow(p, k);
  }
  out.ratio = std::pow(moment, 1.0 / R) / std::pow(static_cast<double>(m), 1.0 - 1.0 / q);
  return out;
}

}  // namespace torus::binomial
