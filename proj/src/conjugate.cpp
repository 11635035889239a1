#include "tailbound/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Open endpoints are approached through (1 +/- 1e-12) scaled offsets.
double clamp_below(double hi) {
  if (hi == 0.0) return -1e-12;
  return hi - std::abs(hi) * 1e-12;
}

double clamp_above(double lo) {
  if (lo == 0.0) return 1e-12;
  return lo + std::abs(lo) * 1e-12;
}

struct ScanResult {
  double best_y = 0.0;
  double best_val = -kInf;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  bool at_upper_edge = false;
};

// Log-spaced candidates on [lo, hi], 0 < lo < hi, descending ~16 decades from
// hi so both tiny and large maximizers are bracketed.
void push_log_grid(std::vector<double>& ys, double lo, double hi, int n) {
  const double lo_eff = std::max(lo, hi * 1e-16);
  if (!(hi > lo_eff)) {
    ys.push_back(lo);
    return;
  }
  const double llo = std::log(lo_eff), lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    ys.push_back(std::exp(llo + f * (lhi - llo)));
  }
  if (lo < lo_eff) ys.push_back(lo);
}

ScanResult scan(const std::function<double(double)>& obj, double lo, double hi,
                int n) {
  std::vector<double> ys;
  ys.reserve(static_cast<std::size_t>(n) + 8);
  if (lo <= 0.0 && hi >= 0.0) {
    if (lo < 0.0) push_log_grid(ys, -clamp_below(0.0), -lo, n / 2);
    for (double& y : ys) y = -y;
    ys.push_back(0.0);
    if (hi > 0.0) push_log_grid(ys, clamp_above(0.0), hi, lo < 0.0 ? n / 2 : n);
  } else if (lo > 0.0) {
    push_log_grid(ys, lo, hi, n);
  } else {  // hi < 0
    push_log_grid(ys, -hi, -lo, n);
    for (double& y : ys) y = -y;
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  ScanResult r;
  std::size_t best_idx = 0;
  bool found = false;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double v = obj(ys[i]);
    if (std::isnan(v) || v == -kInf) continue;
    if (v == kInf) {
      // The objective itself diverges at an admissible point.
      r.best_y = ys[i];
      r.best_val = kInf;
      return r;
    }
    if (!found || v > r.best_val) {
      found = true;
      r.best_val = v;
      r.best_y = ys[i];
      best_idx = i;
    }
  }
  if (!found) {
    throw numeric_error("legendre transform: objective nowhere finite");
  }
  r.bracket_lo = best_idx == 0 ? ys.front() : ys[best_idx - 1];
  r.bracket_hi = best_idx + 1 >= ys.size() ? ys.back() : ys[best_idx + 1];
  r.at_upper_edge = best_idx + 2 >= ys.size();
  return r;
}

double golden_refine(const std::function<double(double)>& obj, double lo,
                     double hi, double seed_val) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = obj(x1), f2 = obj(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = obj(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = obj(x1);
    }
  }
  return std::max({seed_val, f1, f2});
}

}  // namespace

double legendre_transform(const DomainFunction& g, double u) {
  if (!(u >= 0.0)) {
    throw validation_error("legendre_transform: u must be nonnegative");
  }
  if (!(g.lo < g.hi)) {
    throw validation_error("legendre_transform: empty domain");
  }
  const auto obj = [&](double y) -> double {
    const double gy = g.eval(y);
    if (std::isnan(gy)) return -kInf;
    if (gy == kInf) return -kInf;   // outside Dom[g]
    if (gy == -kInf) return kInf;   // sup is unbounded through g
    return y * u - gy;
  };
  const int n = std::max(64, g.grid_hint);
  const double lo_eff = std::isfinite(g.lo)
                            ? (std::isfinite(g.eval(g.lo)) ? g.lo : clamp_above(g.lo))
                            : -1e12;

  if (std::isfinite(g.hi)) {
    const double hi_eff = std::isfinite(g.eval(g.hi)) ? g.hi : clamp_below(g.hi);
    ScanResult r = scan(obj, lo_eff, hi_eff, n);
    if (r.best_val == kInf) return kInf;
    return golden_refine(obj, std::max(lo_eff, r.bracket_lo),
                         std::min(hi_eff, r.bracket_hi), r.best_val);
  }

  // Unbounded above: extend the cap until the peak is interior, or conclude
  // the supremum is +inf when each extension grows the best value > 10x.
  double cap = 1e6;
  ScanResult r = scan(obj, lo_eff, cap, n);
  if (r.best_val == kInf) return kInf;
  int growth_streak = 0;
  while (r.at_upper_edge && cap < 1e12) {
    const double prev_best = r.best_val;
    cap *= 32.0;
    r = scan(obj, lo_eff, cap, n);
    if (r.best_val == kInf) return kInf;
    if (r.best_val > 10.0 * std::max(prev_best, 1.0)) {
      if (++growth_streak >= 2) return kInf;
    } else {
      growth_streak = 0;
    }
  }
  if (r.at_upper_edge) return kInf;
  return golden_refine(obj, std::max(lo_eff, r.bracket_lo), r.bracket_hi,
                       r.best_val);
}

double nu_transform(const YoungFunction& phi, double x) {
  if (!(x >= 0.0)) {
    throw validation_error("nu_transform: x must be nonnegative");
  }
  if (x == 0.0) return 0.0;  // lambda = 0 attains 0 and phi >= 0
  DomainFunction g;
  g.lo = 0.0;
  g.hi = phi.lambda0;
  g.eval = [&phi](double y) -> double {
    if (y < 0.0 || y >= phi.lambda0) return kInf;
    return phi.eval_abs(y);
  };
  return std::max(0.0, legendre_transform(g, x));
}

double h_star(const GeneratingFunction& psi, double y) {
  if (psi.extremal_r) return *psi.extremal_r * y;
  DomainFunction h;
  h.lo = psi.p_lo;
  h.hi = psi.b;
  h.eval = [&psi](double p) -> double {
    if (p < psi.p_lo) return kInf;
    if (psi.closed_upper ? p > psi.b : p >= psi.b) return kInf;
    const double lv = psi.log_eval(p);
    if (lv == kInf) return kInf;
    return p * lv;
  };
  if (psi.closed_upper && std::isfinite(psi.b)) {
    // allow the tabulated right endpoint itself
    h.hi = psi.b * (1.0 + 1e-12);
  }
  if (y >= 0.0) return legendre_transform(h, y);
  // Negative arguments arrive from ln(t) with t < 1; flip the sign into the
  // objective since legendre_transform restricts u to be nonnegative.
  DomainFunction h_neg = h;
  h_neg.eval = [&, base = h.eval](double p) -> double {
    const double v = base(p);
    if (v == kInf) return kInf;
    return v - 2.0 * y * p;  // (p*y - h) == (p*(-y) - (h - 2yp))
  };
  return legendre_transform(h_neg, -y);
}

double g_ml_asymptotic(double m, const SlowlyVarying& L, double t) {
  if (!(m >= 2.0)) {
    throw validation_error("g_ml_asymptotic: m must be >= 2");
  }
  if (!(t >= 1.0)) {
    throw validation_error("g_ml_asymptotic: t must be >= 1");
  }
  const double q = m / (m - 1.0);
  const double lt = std::pow(t, 1.0 / (m - 1.0));
  return (m - 1.0) / m * std::pow(t, q) * std::pow(L(lt), -1.0 / (m - 1.0));
}

double g_ml_asymptotic(double m, double t) {
  return g_ml_asymptotic(m, SlowlyVarying::one(), t);
}

}  // namespace tailbound
