#include "tailbound/functions.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_psi_positive(const GeneratingFunction& psi) {
  // inf psi > 0 on the domain; sampled check up to a finite horizon.
  const double hi = std::min(psi.b, 4096.0);
  const int n = 64;
  bool any_finite = false;
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    const double p = psi.p_lo * std::pow(hi * 0.999999 / psi.p_lo, f);
    const double lv = psi.log_eval(p);
    if (lv == kInf) continue;
    any_finite = true;
    if (!(lv > -690.0)) {  // psi below ~1e-300 counts as a zero infimum
      throw validation_error("generating function must have inf psi > 0");
    }
  }
  if (!any_finite) {
    throw validation_error("generating function is infinite on its whole domain");
  }
}

}  // namespace

double SlowlyVarying::operator()(double x) const {
  switch (kind) {
    case Kind::One:
      return 1.0;
    case Kind::LogPow:
      return std::pow(1.0 + std::log(std::max(x, 1.0)), a);
  }
  return 1.0;
}

GeneratingFunction make_psi_power(double exponent, double b) {
  if (!(b > 1.0)) throw validation_error("psi:power requires b > 1");
  GeneratingFunction psi;
  psi.log_eval = [exponent](double p) { return exponent * std::log(p); };
  psi.b = b;
  psi.label = "psi:power(" + std::to_string(exponent) + ")";
  check_psi_positive(psi);
  return psi;
}

GeneratingFunction make_psi_const(double value, double b) {
  if (!(value > 0.0)) throw validation_error("psi:const requires a positive value");
  if (!(b > 1.0)) throw validation_error("psi:const requires b > 1");
  GeneratingFunction psi;
  const double lv = std::log(value);
  psi.log_eval = [lv](double) { return lv; };
  psi.b = b;
  psi.label = "psi:const(" + std::to_string(value) + ")";
  return psi;
}

GeneratingFunction make_psi_margin(double b, double beta) {
  if (!(b > 1.0) || !std::isfinite(b)) {
    throw validation_error("psi:margin requires finite b > 1");
  }
  if (!(beta >= 0.0)) throw validation_error("psi:margin requires beta >= 0");
  GeneratingFunction psi;
  psi.log_eval = [b, beta](double p) {
    if (p >= b) return kInf;
    return -beta * std::log(b - p);
  };
  psi.b = b;
  psi.label = "psi:margin";
  check_psi_positive(psi);
  return psi;
}

GeneratingFunction make_psi_extremal(double r) {
  if (!(r >= 1.0)) throw validation_error("psi:extremal requires r >= 1");
  GeneratingFunction psi;
  psi.log_eval = [r](double p) { return p == r ? 0.0 : kInf; };
  psi.b = std::max(r * (1.0 + 1e-9), r + 1e-9);
  psi.closed_upper = true;
  psi.extremal_r = r;
  psi.label = "psi:extremal(" + std::to_string(r) + ")";
  return psi;
}

GeneratingFunction make_psi_table(std::vector<double> p_grid,
                                  std::vector<double> log_values,
                                  std::string label) {
  if (p_grid.size() < 2 || p_grid.size() != log_values.size()) {
    throw validation_error("psi:table needs at least two (p, psi) pairs");
  }
  if (!(p_grid.front() >= 1.0)) {
    throw validation_error("psi:table grid must start at p >= 1");
  }
  for (std::size_t i = 1; i < p_grid.size(); ++i) {
    if (!(p_grid[i] > p_grid[i - 1])) {
      throw validation_error("psi:table grid must be strictly increasing");
    }
  }
  for (double lv : log_values) {
    if (!std::isfinite(lv)) {
      throw validation_error("psi:table values must be finite and positive");
    }
  }
  GeneratingFunction psi;
  psi.p_lo = p_grid.front();
  psi.b = p_grid.back();
  psi.closed_upper = true;
  psi.label = std::move(label);
  psi.log_eval = [grid = std::move(p_grid), vals = std::move(log_values)](double p) {
    if (p < grid.front() * (1.0 - 1e-12) || p > grid.back() * (1.0 + 1e-12)) {
      return kInf;
    }
    p = std::clamp(p, grid.front(), grid.back());
    const auto it = std::upper_bound(grid.begin(), grid.end(), p);
    const std::size_t j = std::min<std::size_t>(
        grid.size() - 1, static_cast<std::size_t>(it - grid.begin()));
    const std::size_t i = j == 0 ? 0 : j - 1;
    if (i == j) return vals[i];
    const double w = (std::log(p) - std::log(grid[i])) /
                     (std::log(grid[j]) - std::log(grid[i]));
    return (1.0 - w) * vals[i] + w * vals[j];
  };
  check_psi_positive(psi);
  return psi;
}

YoungFunction make_young(std::function<double(double)> eval_on_nonneg,
                         double lambda0, std::string label) {
  if (!(lambda0 > 0.0)) {
    throw validation_error("young function: lambda0 must be positive");
  }
  YoungFunction phi{std::move(eval_on_nonneg), lambda0, std::move(label)};
  if (phi.eval_abs(0.0) != 0.0) {
    throw validation_error("young function: phi(0) must be 0");
  }
  const double h = 1e-5;
  const double curvature0 = 2.0 * phi.eval_abs(h) / (h * h);
  if (!(curvature0 > 1e-12) || !(curvature0 < 1e12)) {
    throw validation_error("young function: phi''(0) must be finite and positive");
  }
  // positivity and convexity on a sampled grid of the nonnegative branch
  const double hi = std::min(lambda0 * (1.0 - 1e-9), 50.0);
  const int n = 257;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double x = hi * static_cast<double>(i) / (n - 1);
    v[i] = phi.eval_abs(x);
    if (!std::isfinite(v[i]) || (i > 0 && !(v[i] > 0.0))) {
      throw validation_error("young function: phi must be finite and positive off 0");
    }
  }
  for (int i = 1; i + 1 < n; ++i) {
    const double dd = v[i - 1] + v[i + 1] - 2.0 * v[i];
    if (dd < -1e-9 * std::max(1.0, std::abs(v[i]))) {
      throw validation_error("young function: phi must be convex");
    }
  }
  return phi;
}

YoungFunction make_phi_quadratic(double lambda0) {
  return make_young([](double x) { return 0.5 * x * x; }, lambda0,
                    "phi:quadratic");
}

YoungFunction make_phi_ml(double m, SlowlyVarying L, double lambda0) {
  if (!(m >= 2.0)) throw validation_error("phi:m_L requires m >= 2");
  const double c = L(1.0) / m;
  return make_young(
      [m, L, c](double x) {
        if (x < 1.0) return c * x * x;
        return std::pow(x, m) * L(x) / m;
      },
      lambda0, "phi:m_L(" + std::to_string(m) + ")");
}

YoungFunction make_phi_sqrt_concave(double lambda0) {
  return make_young([](double x) { return x * x / (1.0 + x); }, lambda0,
                    "phi:sqrt_concave");
}

}  // namespace tailbound
