#include "tailbound/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tailbound/conjugate.hpp"
#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double golden_max(const std::function<double(double)>& f, double a, double b) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

std::string SpaceDescriptor::label() const {
  return std::visit(
      overloaded{
          [](const LpSpace& s) { return "lp(" + std::to_string(s.p) + ")"; },
          [](const GlsSpace& s) { return "gls[" + s.psi.label + "]"; },
          [](const BphiSpace& s) { return "bphi[" + s.phi.label + "]"; },
      },
      space);
}

SpaceDescriptor make_lp_space(double p) {
  if (!(p >= 1.0)) throw validation_error("lp space: p must be >= 1");
  return {LpSpace{p}};
}

SpaceDescriptor make_gls_space(GeneratingFunction psi) {
  return {GlsSpace{std::move(psi)}};
}

SpaceDescriptor make_bphi_space(YoungFunction phi) {
  return {BphiSpace{std::move(phi)}};
}

double lp_norm(const RVSpec& spec, double p) {
  return std::exp(log_abs_moment(spec, p) / p);
}

double gls_norm(const RVSpec& spec, const GeneratingFunction& psi,
                const GlsNormOptions& opt) {
  if (psi.extremal_r) return lp_norm(spec, *psi.extremal_r);

  const auto log_ratio = [&](double p) -> double {
    const double lpsi = psi.log_eval(p);
    if (lpsi == kInf) return -kInf;
    return log_abs_moment(spec, p) / p - lpsi;
  };

  const bool unbounded = !std::isfinite(psi.b);
  double hi = unbounded ? opt.p_cap : psi.b;
  if (!unbounded && !psi.closed_upper) hi *= 1.0 - 1e-12;
  const double lo = psi.p_lo;
  if (!(hi > lo)) throw validation_error("gls_norm: empty p-range");

  const int n = std::max(16, opt.grid_points);
  std::vector<double> ps(n), vals(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  int best = -1;
  for (int i = 0; i < n; ++i) {
    ps[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    vals[i] = log_ratio(ps[i]);
    if (vals[i] > -kInf && (best < 0 || vals[i] > vals[best])) best = i;
  }
  if (best < 0) throw numeric_error("gls_norm: psi infinite on the whole grid");

  if (unbounded) {
    bool climbing = true;
    for (int i = n - 5; i < n - 1; ++i) {
      if (!(vals[i + 1] >= vals[i])) climbing = false;
    }
    const double q1 = log_ratio(0.5 * opt.p_cap);
    const double q2 = vals[n - 1];
    if (climbing && q2 - q1 > std::log(opt.divergence_ratio)) {
      return kInf;  // |xi|_p outruns psi: not a member of the space
    }
  }

  const double a = best > 0 ? ps[best - 1] : ps[best];
  const double b = best + 1 < n ? ps[best + 1] : ps[best];
  const double refined =
      a < b ? golden_max(log_ratio, a, b) : vals[best];
  return std::exp(std::max(refined, vals[best]));
}

namespace {

// Smallest x in [0, lambda0) with phi(x) >= level; +inf when the level is out
// of reach inside the domain (the constraint then voids past lambda0).
double young_inverse(const YoungFunction& phi, double level, double tau_cap) {
  if (level <= 0.0) return 0.0;
  double hi = 1.0;
  const double dom_hi = phi.lambda0 * (1.0 - 1e-12);
  while (phi.eval_abs(std::min(hi, dom_hi)) < level) {
    if (hi >= dom_hi || hi > tau_cap) return kInf;
    hi *= 2.0;
  }
  hi = std::min(hi, dom_hi);
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi.eval_abs(mid) >= level ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double bphi_norm(const RVSpec& spec, const YoungFunction& phi,
                 const BphiNormOptions& opt) {
  if (!is_sum_admissible(spec)) {
    throw validation_error("bphi_norm: law must be centered");
  }
  const double lam_hi = std::min(phi.lambda0 * (1.0 - 1e-6), opt.lambda_cap);
  if (!(lam_hi > opt.lambda_min)) {
    throw validation_error("bphi_norm: lambda range is empty");
  }
  const bool symmetric = !std::holds_alternative<Bounded>(spec.law);

  // The minimal tau making E exp(+/- lambda xi) <= exp(phi(lambda tau)) at a
  // single lambda is phi^{-1}(ln mgf) / lambda, capped at lambda0 / lambda
  // where the constraint voids. The norm is the supremum over lambda; a grid
  // scan locates the binding lambda and golden-section sharpens it, which
  // keeps the result exactly scale-homogeneous up to refinement precision.
  const auto tau_at = [&](double lam) {
    double level = log_mgf(spec, lam);
    if (!symmetric) level = std::max(level, log_mgf(spec, -lam));
    if (level == kInf) return kInf;
    const double x = young_inverse(phi, level, opt.tau_cap);
    if (x == kInf) {
      return std::isfinite(phi.lambda0) ? phi.lambda0 / lam : kInf;
    }
    return x / lam;
  };

  const int n = std::max(16, opt.grid_points);
  const double llo = std::log(opt.lambda_min), lhi = std::log(lam_hi);
  std::vector<double> lams(n), taus(n);
  int best = 0;
  for (int i = 0; i < n; ++i) {
    lams[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    taus[i] = tau_at(lams[i]);
    if (taus[i] > taus[best]) best = i;
  }
  if (taus[best] == kInf || taus[best] > opt.tau_cap) return kInf;

  const double a = best > 0 ? lams[best - 1] : lams[best];
  const double b = best + 1 < n ? lams[best + 1] : lams[best];
  double refined = taus[best];
  if (a < b) refined = std::max(refined, golden_max(tau_at, a, b));
  return refined;
}

double space_norm(const RVSpec& spec, const SpaceDescriptor& space) {
  return std::visit(
      overloaded{
          [&](const LpSpace& s) { return lp_norm(spec, s.p); },
          [&](const GlsSpace& s) { return gls_norm(spec, s.psi); },
          [&](const BphiSpace& s) { return bphi_norm(spec, s.phi); },
      },
      space.space);
}

double tail_characteristic(const SpaceDescriptor& space, double t) {
  if (!(t >= 0.0)) {
    throw validation_error("tail_characteristic: t must be >= 0");
  }
  return std::visit(
      overloaded{
          [&](const LpSpace& s) {
            return t <= 1.0 ? 1.0 : std::min(1.0, std::pow(t, -s.p));
          },
          [&](const GlsSpace& s) {
            if (t < std::numbers::e) return 1.0;
            return std::min(1.0, std::exp(-h_star(s.psi, std::log(t))));
          },
          [&](const BphiSpace& s) {
            return std::min(1.0, std::exp(-nu_transform(s.phi, t)));
          },
      },
      space.space);
}

bool tail_characteristic_is_exact(const SpaceDescriptor& space) {
  return std::holds_alternative<LpSpace>(space.space);
}

SharpnessResult lp_sharpness_witness(double p, double t) {
  const RVSpec extremal = make_two_point_sharp(t, p);
  return {lp_norm(extremal, p), tail(extremal, t)};
}

double rosenthal_constant(double p) {
  if (!(p > 2.0)) {
    throw validation_error("rosenthal_constant: requires p > 2");
  }
  return kRosenthalConstant * p / std::log(p);
}

bool is_phi_conv(const YoungFunction& phi) {
  const double sqrt_cap = std::min(phi.lambda0 * (1.0 - 1e-9), 50.0);
  const double cap = sqrt_cap * sqrt_cap;
  const int n = 513;
  const double h = cap / n;
  double prev = phi.eval_abs(0.0);
  double cur = phi.eval_abs(std::sqrt(h));
  for (int i = 1; i + 1 < n; ++i) {
    const double next = phi.eval_abs(std::sqrt((i + 1) * h));
    if (!std::isfinite(next)) return false;
    const double dd = prev + next - 2.0 * cur;
    if (dd < -1e-9 * std::max(1.0, std::abs(cur))) return false;
    prev = cur;
    cur = next;
  }
  return true;
}

}  // namespace tailbound
