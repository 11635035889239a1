#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailbound/spaces.hpp"

namespace tailbound {

// Independent centered members xi_1, ..., xi_n (the list is cycled when
// shorter than n) and the normalized sum S_n = sum xi_i / sqrt(sum var_i).
struct SumProblem {
  std::vector<RVSpec> members;
  std::size_t n = 1;
};

// Validates the centering and positive-variance gates on every member.
SumProblem make_sum_problem(std::vector<RVSpec> members, std::size_t n);

const RVSpec& member_at(const SumProblem& problem, std::size_t j);

// sum of var(xi_i) over the n cycled members.
double total_variance(const SumProblem& problem);

enum class Provenance { Exact, Upper };

struct BoundCurve {
  std::vector<double> t_grid;  // increasing, >= 0
  std::vector<double> values;  // raw bound values; may exceed 1 at small t
  Provenance provenance = Provenance::Upper;
  std::string label;
};

// Enforces the curve invariants (matching grid/value sizes, nonincreasing
// values up to 1e-9 jitter which is clamped away).
BoundCurve make_bound_curve(std::vector<double> t_grid,
                            std::vector<double> values, Provenance provenance,
                            std::string label);

// 2 exp(-t^2 / (2 nu n + 2 kappa_c t)) for the raw sum (and its running
// maximum) at threshold t >= 0. Raw value: clipping to 1 happens at the
// reporting layer only.
double classical_bernstein(double nu, double kappa_c, std::size_t n, double t);

struct KappaRelative {
  double value = 0.0;
  int infinite_member = 0;  // 1-based index of the first member with infinite
                            // relative norm; 0 when kappa is finite
};

// kappa = max over members of ||xi_i||_X / sigma_i.
KappaRelative kappa_relative(const SumProblem& problem,
                             const SpaceDescriptor& space);

// t -> T^Y(t / (kappa * u_const)): the uniform-in-n tail bound for S_n given
// a weak-pair constant u_const = U(X, Y). Pass K(X) with y = x for the weak
// single-space case and 1 for the constant-free case.
BoundCurve modified_tail_bound(const SumProblem& problem,
                               const SpaceDescriptor& x_space,
                               const SpaceDescriptor& y_space, double u_const,
                               std::vector<double> t_grid);

// sqrt(sum of squares): right-hand side of the Pythagorean sum rule.
double subgaussian_sum_norm(std::span<const double> norms);

struct PsiEnvelopePair {
  GeneratingFunction psi;        // p -> sup_i ||xi_i/sigma_i||_p, tabulated
  GeneratingFunction psi_tilde;  // C_R * (p/ln p) * psi(p) on p >= 2
};

// Moment envelope of the normalized members over p_grid, plus its Rosenthal
// inflation. Requires a finite envelope at some p > 2.
PsiEnvelopePair psi_envelope(const SumProblem& problem,
                             std::span<const double> p_grid);

// Predicted tail exponent min(m, 2) for the symmetric Weibull family.
double lower_exponent(double m);

enum class Route { B2, Wb2, Pair, Classical, GlsRosenthal };

struct RouteSpec {
  Route route = Route::Pair;
  std::optional<SpaceDescriptor> space_x;
  std::optional<SpaceDescriptor> space_y;
  std::optional<double> u_const;
  std::optional<double> nu;       // classical route
  std::optional<double> kappa_c;  // classical route
  std::vector<double> p_grid;     // gls_rosenthal route; default when empty
};

// Dispatches the five bound routes. The classical route evaluates the raw-sum
// formula at the matching threshold t * sqrt(total variance) so its curve
// lives on the same normalized t-grid as the others. The b2 route insists on
// a membership certificate (L_2, or B(phi) with convex sqrt-composition).
BoundCurve build_route_bound(const SumProblem& problem, const RouteSpec& route,
                             std::vector<double> t_grid);

}  // namespace tailbound
