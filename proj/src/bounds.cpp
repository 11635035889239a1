#include "tailbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> default_envelope_grid() {
  return {2.0, 2.5, 3.0, 3.5, 4.0, 5.0, 6.0, 8.0, 10.0, 12.0, 16.0, 20.0, 26.0, 32.0};
}

void require_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw validation_error("t_grid must be nonempty");
  if (!(t_grid.front() >= 0.0)) {
    throw validation_error("t_grid must start at t >= 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw validation_error("t_grid must be strictly increasing");
    }
  }
}

}  // namespace

SumProblem make_sum_problem(std::vector<RVSpec> members, std::size_t n) {
  if (members.empty()) {
    throw validation_error("problem.members: at least one member required");
  }
  if (n == 0) throw validation_error("problem.n: must be >= 1");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!is_sum_admissible(members[i])) {
      throw validation_error("problem.members[" + std::to_string(i + 1) +
                             "]: not centered, rejected from sums");
    }
    if (!(variance(members[i]) > 0.0)) {
      throw validation_error("problem.members[" + std::to_string(i + 1) +
                             "]: variance must be strictly positive");
    }
  }
  return {std::move(members), n};
}

const RVSpec& member_at(const SumProblem& problem, std::size_t j) {
  return problem.members[j % problem.members.size()];
}

double total_variance(const SumProblem& problem) {
  const std::size_t k = problem.members.size();
  std::vector<double> member_var(k);
  for (std::size_t i = 0; i < k; ++i) member_var[i] = variance(problem.members[i]);
  const std::size_t full_cycles = problem.n / k;
  double v = 0.0;
  for (std::size_t i = 0; i < k; ++i) v += member_var[i];
  v *= static_cast<double>(full_cycles);
  for (std::size_t i = 0; i < problem.n % k; ++i) v += member_var[i];
  return v;
}

BoundCurve make_bound_curve(std::vector<double> t_grid,
                            std::vector<double> values, Provenance provenance,
                            std::string label) {
  require_grid(t_grid);
  if (values.size() != t_grid.size()) {
    throw validation_error("bound curve: grid/value size mismatch");
  }
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + 1e-9) {
      throw numeric_error("bound curve is not nonincreasing at t = " +
                          std::to_string(t_grid[i]));
    }
    values[i] = std::min(values[i], values[i - 1]);  // absorb refinement jitter
  }
  return {std::move(t_grid), std::move(values), provenance, std::move(label)};
}

double classical_bernstein(double nu, double kappa_c, std::size_t n, double t) {
  if (!(nu > 0.0) || !(kappa_c > 0.0)) {
    throw validation_error("classical bound: nu and kappa_c must be positive");
  }
  if (n == 0) throw validation_error("classical bound: n must be >= 1");
  if (!(t >= 0.0)) throw validation_error("classical bound: t must be >= 0");
  return 2.0 * std::exp(-t * t / (2.0 * nu * static_cast<double>(n) + 2.0 * kappa_c * t));
}

KappaRelative kappa_relative(const SumProblem& problem,
                             const SpaceDescriptor& space) {
  KappaRelative out;
  for (std::size_t i = 0; i < problem.members.size(); ++i) {
    const double norm = space_norm(problem.members[i], space);
    if (!std::isfinite(norm)) {
      return {kInf, static_cast<int>(i) + 1};
    }
    out.value = std::max(out.value, norm / std::sqrt(variance(problem.members[i])));
  }
  return out;
}

BoundCurve modified_tail_bound(const SumProblem& problem,
                               const SpaceDescriptor& x_space,
                               const SpaceDescriptor& y_space, double u_const,
                               std::vector<double> t_grid) {
  require_grid(t_grid);
  if (!(u_const > 0.0)) {
    throw validation_error("u_const: must be a positive real");
  }
  const KappaRelative kappa = kappa_relative(problem, x_space);
  if (kappa.infinite_member != 0) {
    throw validation_error("kappa is infinite: member " +
                           std::to_string(kappa.infinite_member) +
                           " has infinite norm in " + x_space.label());
  }
  const double scale = kappa.value * u_const;
  std::vector<double> values(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    values[i] = tail_characteristic(y_space, t_grid[i] / scale);
  }
  const Provenance prov = tail_characteristic_is_exact(y_space)
                              ? Provenance::Exact
                              : Provenance::Upper;
  return make_bound_curve(std::move(t_grid), std::move(values), prov,
                          "modified[" + y_space.label() + "]");
}

double subgaussian_sum_norm(std::span<const double> norms) {
  double acc = 0.0;
  for (double v : norms) {
    if (!(v >= 0.0)) {
      throw validation_error("sum norm: member norms must be nonnegative");
    }
    acc += v * v;
  }
  return std::sqrt(acc);
}

PsiEnvelopePair psi_envelope(const SumProblem& problem,
                             std::span<const double> p_grid) {
  if (p_grid.size() < 2) {
    throw validation_error("p_grid: at least two points required");
  }
  std::vector<double> grid(p_grid.begin(), p_grid.end());
  std::vector<double> log_env(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double p = grid[j];
    if (!(p >= 1.0)) throw validation_error("p_grid: entries must be >= 1");
    if (j > 0 && !(p > grid[j - 1])) {
      throw validation_error("p_grid: entries must be strictly increasing");
    }
    double best = -kInf;
    for (const RVSpec& member : problem.members) {
      const double rel = log_abs_moment(member, p) / p -
                         0.5 * std::log(variance(member));
      best = std::max(best, rel);
    }
    log_env[j] = best;
  }
  bool finite_above_2 = false;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] > 2.0 && std::isfinite(log_env[j])) finite_above_2 = true;
  }
  if (!finite_above_2) {
    throw validation_error("psi envelope: no finite value at any p > 2");
  }

  std::vector<double> tilde_grid, tilde_vals;
  const double log_cr = std::log(kRosenthalConstant);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] < 2.0) continue;
    tilde_grid.push_back(grid[j]);
    tilde_vals.push_back(log_cr + std::log(grid[j]) -
                         std::log(std::log(grid[j])) + log_env[j]);
  }
  if (tilde_grid.size() < 2) {
    throw validation_error("p_grid: needs at least two points >= 2");
  }
  return {make_psi_table(std::move(grid), std::move(log_env), "psi:envelope"),
          make_psi_table(std::move(tilde_grid), std::move(tilde_vals),
                         "psi:rosenthal_envelope")};
}

double lower_exponent(double m) {
  if (!(m > 1.0)) throw validation_error("lower_exponent: m must exceed 1");
  return std::min(m, 2.0);
}

BoundCurve build_route_bound(const SumProblem& problem, const RouteSpec& route,
                             std::vector<double> t_grid) {
  switch (route.route) {
    case Route::Classical: {
      if (!route.nu || !route.kappa_c) {
        throw validation_error("classical: nu and kappa are required");
      }
      require_grid(t_grid);
      const double raw_scale = std::sqrt(total_variance(problem));
      std::vector<double> values(t_grid.size());
      for (std::size_t i = 0; i < t_grid.size(); ++i) {
        values[i] = classical_bernstein(*route.nu, *route.kappa_c, problem.n,
                                        t_grid[i] * raw_scale);
      }
      return make_bound_curve(std::move(t_grid), std::move(values),
                              Provenance::Upper, "classical");
    }
    case Route::B2: {
      if (!route.space_x) throw validation_error("space_x: required for route=b2");
      const SpaceDescriptor& x = *route.space_x;
      if (const auto* bphi = std::get_if<BphiSpace>(&x.space)) {
        if (!is_phi_conv(bphi->phi)) {
          throw validation_error(
              "space_x.phi: sqrt-composition is not convex, constant-1 sum "
              "rule refused");
        }
      } else if (const auto* lp = std::get_if<LpSpace>(&x.space)) {
        if (lp->p != 2.0) {
          throw validation_error(
              "space_x.p: only p = 2 carries the constant-1 sum rule");
        }
      } else {
        throw validation_error(
            "space_x: no constant-1 sum rule certificate for this space; use "
            "route=pair with an explicit u_const");
      }
      return modified_tail_bound(problem, x, x, 1.0, std::move(t_grid));
    }
    case Route::Wb2: {
      if (!route.space_x) throw validation_error("space_x: required for route=wb2");
      const SpaceDescriptor& x = *route.space_x;
      double k_const;
      if (route.u_const) {
        k_const = *route.u_const;
      } else if (const auto* lp = std::get_if<LpSpace>(&x.space)) {
        k_const = lp->p > 2.0 ? rosenthal_constant(lp->p)
                              : (lp->p == 2.0 ? 1.0 : throw validation_error(
                                    "space_x.p: no known K(X) for p < 2"));
      } else if (const auto* bphi = std::get_if<BphiSpace>(&x.space)) {
        if (!is_phi_conv(bphi->phi)) {
          throw validation_error(
              "space_x.phi: sqrt-composition is not convex and no u_const "
              "given");
        }
        k_const = 1.0;
      } else {
        throw validation_error("u_const: required for route=wb2 with this space");
      }
      return modified_tail_bound(problem, x, x, k_const, std::move(t_grid));
    }
    case Route::Pair: {
      if (!route.space_x) throw validation_error("space_x: required for route=pair");
      if (!route.space_y) throw validation_error("space_y: required for route=pair");
      if (!route.u_const) throw validation_error("u_const: required for route=pair");
      return modified_tail_bound(problem, *route.space_x, *route.space_y,
                                 *route.u_const, std::move(t_grid));
    }
    case Route::GlsRosenthal: {
      const std::vector<double> grid =
          route.p_grid.empty() ? default_envelope_grid() : route.p_grid;
      const PsiEnvelopePair env = psi_envelope(problem, grid);
      const SpaceDescriptor x = make_gls_space(env.psi);
      const SpaceDescriptor y = make_gls_space(env.psi_tilde);
      return modified_tail_bound(problem, x, y, 1.0, std::move(t_grid));
    }
  }
  throw validation_error("route: unknown route");
}

}  // namespace tailbound
