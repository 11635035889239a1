// Test-only oracles: independent numerical routes used to freeze expected
// values. Nothing here shares code with the library paths under test:
// integration is Romberg (the library uses adaptive Simpson), suprema are
// dense-grid scans without refinement, and norms re-derive their defining
// optimizations on 10x denser grids.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailbound/functions.hpp"
#include "tailbound/rv_models.hpp"

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Romberg integration on [a, b] for smooth integrands.
inline double romberg(const std::function<double(double)>& f, double a,
                      double b, double rel_tol = 1e-12, int max_k = 22) {
  std::vector<double> row{0.5 * (b - a) * (f(a) + f(b))};
  double h = b - a;
  for (int k = 1; k <= max_k; ++k) {
    h *= 0.5;
    double acc = 0.0;
    const std::int64_t steps = std::int64_t{1} << (k - 1);
    for (std::int64_t i = 0; i < steps; ++i) {
      acc += f(a + (2.0 * static_cast<double>(i) + 1.0) * h);
    }
    std::vector<double> next(k + 1);
    next[0] = 0.5 * row[0] + h * acc;
    double pow4 = 1.0;
    for (int j = 1; j <= k; ++j) {
      pow4 *= 4.0;
      next[j] = next[j - 1] + (next[j - 1] - row[j - 1]) / (pow4 - 1.0);
    }
    if (k > 3 &&
        std::abs(next[k] - row[k - 1]) <=
            rel_tol * std::max(1e-300, std::abs(next[k]))) {
      return next[k];
    }
    row = std::move(next);
  }
  return row.back();
}

// Discontinuity points of the exact tail of |xi|, used to split integration
// panels so Romberg only ever sees smooth pieces.
inline std::vector<double> tail_breakpoints(const tailbound::RVSpec& spec,
                                            double upper) {
  std::vector<double> cuts{0.0, upper};
  if (std::holds_alternative<tailbound::Rademacher>(spec.law)) {
    cuts.push_back(1.0);
  } else if (const auto* b = std::get_if<tailbound::Bounded>(&spec.law)) {
    for (double v : b->values) cuts.push_back(std::abs(v));
  } else if (const auto* tp = std::get_if<tailbound::TwoPointSharp>(&spec.law)) {
    cuts.push_back(tp->t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::erase_if(cuts, [&](double c) { return c < 0.0 || c > upper; });
  return cuts;
}

// Upper limit where the exact tail drops below 1e-16.
inline double tail_upper_limit(const tailbound::RVSpec& spec) {
  using namespace tailbound;
  if (std::holds_alternative<Rademacher>(spec.law)) return 1.0;
  if (const auto* g = std::get_if<Gaussian>(&spec.law)) return 9.0 * g->sigma;
  if (const auto* u = std::get_if<Uniform>(&spec.law)) return u->half_width;
  if (const auto* w = std::get_if<WeibullSym>(&spec.law)) {
    return std::pow(16.0 * std::log(10.0), 1.0 / w->m);
  }
  if (const auto* tp = std::get_if<TwoPointSharp>(&spec.law)) return tp->t;
  const auto& b = std::get<Bounded>(spec.law);
  double hi = 0.0;
  for (double v : b.values) hi = std::max(hi, std::abs(v));
  return hi;
}

// E|xi|^p through the tail formula: integral of p t^(p-1) P(|xi| > t).
inline double abs_moment_via_tail(const tailbound::RVSpec& spec, double p) {
  const double upper = tail_upper_limit(spec);
  const auto integrand = [&](double t) {
    return p * std::pow(t, p - 1.0) * tailbound::tail(spec, t);
  };
  const std::vector<double> cuts = tail_breakpoints(spec, upper);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // nudge panel ends inward so jump points never get sampled
    const double a = cuts[i] + 1e-13 * std::max(1.0, cuts[i]);
    const double b = cuts[i + 1] - 1e-13 * std::max(1.0, cuts[i + 1]);
    if (b > a) acc += romberg(integrand, a, b, 1e-12);
  }
  return acc;
}

// E exp(lambda xi) for the symmetric Weibull law as an even moment series.
inline double weibull_mgf_series(double m, double lambda) {
  const double l2 = lambda * lambda;
  double term = 1.0, acc = 1.0;
  for (int k = 1; k < 400; ++k) {
    term *= l2 / ((2.0 * k - 1.0) * (2.0 * k));  // lambda^(2k) / (2k)!
    const double contrib = term * std::exp(std::lgamma(1.0 + 2.0 * k / m));
    acc += contrib;
    if (contrib < 1e-17 * acc) break;
  }
  return acc;
}

// Dense uniform-grid supremum of y*u - g(y) over [lo, hi]; no refinement.
inline double legendre_grid(const std::function<double(double)>& g, double lo,
                            double hi, double u, int n = 200000) {
  double best = -kInf;
  for (int i = 0; i <= n; ++i) {
    const double y = lo + (hi - lo) * i / n;
    const double gy = g(y);
    if (!std::isfinite(gy)) continue;
    best = std::max(best, y * u - gy);
  }
  return best;
}

// Brute-force Grand Lebesgue norm: 10x denser log grid, no refinement.
inline double gls_norm_grid(const tailbound::RVSpec& spec,
                            const tailbound::GeneratingFunction& psi,
                            double p_cap = 512.0, int n = 4000) {
  if (psi.extremal_r) {
    return std::exp(tailbound::log_abs_moment(spec, *psi.extremal_r) /
                    *psi.extremal_r);
  }
  double hi = std::isfinite(psi.b) ? psi.b : p_cap;
  if (std::isfinite(psi.b) && !psi.closed_upper) hi *= 1.0 - 1e-12;
  double best = -kInf;
  const double llo = std::log(psi.p_lo), lhi = std::log(hi);
  for (int i = 0; i <= n; ++i) {
    const double p = std::exp(llo + (lhi - llo) * i / n);
    const double lpsi = psi.log_eval(p);
    if (lpsi == kInf) continue;
    best = std::max(best, tailbound::log_abs_moment(spec, p) / p - lpsi);
  }
  return std::exp(best);
}

// Brute-force B(phi) norm: independent bisection over a 10x denser lambda
// grid with exact (slack-free) comparisons.
inline double bphi_norm_grid(const tailbound::RVSpec& spec,
                             const tailbound::YoungFunction& phi,
                             double lambda_cap = 50.0, int n = 2000) {
  const double lam_hi = std::min(phi.lambda0 * (1.0 - 1e-6), lambda_cap);
  std::vector<double> lams(n), lmgf(n);
  const double llo = std::log(1e-4), lhi = std::log(lam_hi);
  for (int i = 0; i < n; ++i) {
    lams[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    lmgf[i] = std::max(tailbound::log_mgf(spec, lams[i]),
                       tailbound::log_mgf(spec, -lams[i]));
  }
  const auto ok = [&](double tau) {
    for (int i = 0; i < n; ++i) {
      const double x = lams[i] * tau;
      if (x >= phi.lambda0) continue;
      if (lmgf[i] > phi.eval_abs(x)) return false;
    }
    return true;
  };
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 1e9) return kInf;
  }
  double lo = hi == 1.0 ? 0.0 : 0.5 * hi;
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

inline double normal_upper_tail(double t) {
  return 0.5 * std::erfc(t / std::sqrt(2.0));
}

inline double normal_two_sided_tail(double t) {
  return std::erfc(t / std::sqrt(2.0));
}

// Least-squares slope of ln(-ln T(t)) on ln t for an exact tail function,
// the regression the exponent estimator should recover in the no-noise limit.
inline double exact_tail_slope(const std::function<double(double)>& tail_fn,
                               double t_lo, double t_hi, int points) {
  std::vector<double> xs, ys;
  for (int i = 0; i < points; ++i) {
    const double t =
        std::exp(std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / (points - 1));
    xs.push_back(std::log(t));
    ys.push_back(std::log(-std::log(tail_fn(t))));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

}  // namespace oracles
