#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tailbound {

// Positive continuous slowly varying weight on [1, inf). Two shapes cover the
// toolkit: a constant and (1 + ln x)^a.
struct SlowlyVarying {
  enum class Kind { One, LogPow };
  Kind kind = Kind::One;
  double a = 0.0;

  double operator()(double x) const;
  static SlowlyVarying one() { return {}; }
  static SlowlyVarying log_pow(double a) { return {Kind::LogPow, a}; }
};

// Generating function psi(p) of a Grand Lebesgue Space on [p_lo, b); values
// are carried in log form so ratios |f|_p / psi(p) survive large p.
struct GeneratingFunction {
  std::function<double(double)> log_eval;  // ln psi(p); +inf where psi is +inf
  double p_lo = 1.0;
  double b = std::numeric_limits<double>::infinity();
  bool closed_upper = false;      // tabulated envelopes live on [p_lo, b]
  std::optional<double> extremal_r;  // degenerate psi^{(r)}: finite only at r
  std::string label;

  double eval(double p) const { return std::exp(log_eval(p)); }
};

GeneratingFunction make_psi_power(double exponent,
                                  double b = std::numeric_limits<double>::infinity());
GeneratingFunction make_psi_const(double value = 1.0,
                                  double b = std::numeric_limits<double>::infinity());
// psi(p) = (b - p)^(-beta) on [1, b), finite b.
GeneratingFunction make_psi_margin(double b, double beta);
// psi^{(r)}: 1 at p = r, +inf elsewhere; its space collapses to L_r.
GeneratingFunction make_psi_extremal(double r);
// Tabulated psi on an increasing grid, interpolated linearly in (ln p, ln psi).
GeneratingFunction make_psi_table(std::vector<double> p_grid,
                                  std::vector<double> log_values,
                                  std::string label = "psi:table");

// Young function phi on (-lambda0, lambda0): even, phi(0) = 0, positive off
// zero, convex, with finite positive curvature at the origin. The struct
// stores the nonnegative branch; operator() mirrors it.
struct YoungFunction {
  std::function<double(double)> eval_abs;
  double lambda0 = std::numeric_limits<double>::infinity();
  std::string label;

  double operator()(double lambda) const { return eval_abs(std::abs(lambda)); }
};

// Validating constructor: checks the Young axioms on a sampled grid and
// throws validation_error when they fail.
YoungFunction make_young(std::function<double(double)> eval_on_nonneg,
                         double lambda0, std::string label);

// phi_2(lambda) = lambda^2 / 2, the subgaussian generator.
YoungFunction make_phi_quadratic(
    double lambda0 = std::numeric_limits<double>::infinity());

// phi(lambda) = lambda^m L(lambda) / m for lambda >= 1 with a quadratic
// continuation L(1)/m * lambda^2 below 1 (keeps the curvature at zero finite
// and preserves convexity; the large-lambda branch is what the conjugate
// asymptotics see).
YoungFunction make_phi_ml(
    double m, SlowlyVarying L = SlowlyVarying::one(),
    double lambda0 = std::numeric_limits<double>::infinity());

// phi(lambda) = lambda^2 / (1 + |lambda|): a valid Young function whose
// sqrt-composition is concave, the stock counterexample for the B_2 gate.
YoungFunction make_phi_sqrt_concave(
    double lambda0 = std::numeric_limits<double>::infinity());

}  // namespace tailbound
