#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tailbound/bounds.hpp"
#include "tailbound/errors.hpp"

using namespace tailbound;

namespace {

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

SumProblem rademachers(std::size_t n) {
  return make_sum_problem({make_rademacher()}, n);
}

}  // namespace

TEST_CASE("classical bernstein formula") {
  CHECK(classical_bernstein(1.0, 1.0, 100, 0.0) == 2.0);
  // frozen by direct evaluation of 2 exp(-t^2 / (2 nu n + 2 kappa t))
  CHECK(classical_bernstein(1.0, 1.0, 100, 10.0) ==
        doctest::Approx(1.2694728378805637).epsilon(1e-12));
  CHECK(classical_bernstein(1.0, 1.0, 100, 40.0) ==
        doctest::Approx(0.006597011511878183).epsilon(1e-12));
  CHECK_THROWS_AS(classical_bernstein(0.0, 1.0, 10, 1.0), validation_error);
}

TEST_CASE("sum problem validation and variance accounting") {
  CHECK_THROWS_AS(make_sum_problem({}, 10), validation_error);
  CHECK_THROWS_AS(make_sum_problem({make_two_point_sharp(4.0, 2.0)}, 10),
                  validation_error);
  const SumProblem mixed =
      make_sum_problem({make_gaussian(1.0), make_gaussian(2.0)}, 5);
  // cycled members: sigma^2 sequence 1,4,1,4,1
  CHECK(total_variance(mixed) == doctest::Approx(11.0).epsilon(1e-14));
  CHECK(std::get<Gaussian>(member_at(mixed, 3).law).sigma == 2.0);
}

TEST_CASE("kappa from relative norms") {
  const SpaceDescriptor sub = make_bphi_space(make_phi_quadratic());

  CHECK(kappa_relative(rademachers(10), sub).value ==
        doctest::Approx(1.0).epsilon(1e-5));

  const SumProblem gaussians = make_sum_problem(
      {make_gaussian(1.0), make_gaussian(2.0), make_gaussian(5.0)}, 30);
  CHECK(kappa_relative(gaussians, sub).value ==
        doctest::Approx(1.0).epsilon(1e-9));

  const SumProblem mixed =
      make_sum_problem({make_uniform(1.0), make_rademacher()}, 20);
  CHECK(kappa_relative(mixed, sub).value == doctest::Approx(1.0).epsilon(1e-5));

  // infinite relative norm surfaces the offending member
  const SumProblem heavy = make_sum_problem(
      {make_rademacher(), make_gaussian(1.0)}, 4);
  const KappaRelative k =
      kappa_relative(heavy, make_gls_space(make_psi_const(1.0)));
  CHECK(k.infinite_member == 2);
  CHECK(std::isinf(k.value));
}

TEST_CASE("modified tail bound on the worked examples") {
  const SpaceDescriptor sub = make_bphi_space(make_phi_quadratic());
  const BoundCurve curve =
      modified_tail_bound(rademachers(100), sub, sub, 1.0, {0.0, 3.0});
  CHECK(curve.values[0] == 1.0);
  CHECK(curve.values[1] ==
        doctest::Approx(0.011108996538242306).epsilon(1e-5));
  CHECK(curve.provenance == Provenance::Upper);

  // kappa = 1 problem against L_4 with the Rosenthal constant
  const BoundCurve lp_curve = modified_tail_bound(
      rademachers(100), make_lp_space(4.0), make_lp_space(4.0),
      rosenthal_constant(4.0), {0.0, 20.0});
  CHECK(lp_curve.values[1] ==
        doctest::Approx(0.004313617727312615).epsilon(1e-9));
  CHECK(lp_curve.values[0] == 1.0);
  CHECK(lp_curve.provenance == Provenance::Exact);
}

TEST_CASE("pythagorean sum norm") {
  CHECK(subgaussian_sum_norm(std::vector<double>{3.0, 4.0}) == 5.0);
  CHECK(subgaussian_sum_norm(std::vector<double>{1.0}) == 1.0);
  const std::vector<double> ones(16, 1.0);
  CHECK(subgaussian_sum_norm(ones) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("psi envelope and its rosenthal inflation") {
  const std::vector<double> grid = {2.0, 3.0, 4.0, 6.0, 8.0};

  const PsiEnvelopePair rad_env = psi_envelope(rademachers(10), grid);
  CHECK(rad_env.psi.eval(4.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rad_env.psi_tilde.eval(4.0) ==
        doctest::Approx(5.125549233468674).epsilon(1e-10));

  const SumProblem gaussians = make_sum_problem(
      {make_gaussian(1.0), make_gaussian(2.0), make_gaussian(5.0)}, 30);
  const PsiEnvelopePair g_env = psi_envelope(gaussians, grid);
  CHECK(g_env.psi.eval(4.0) ==
        doctest::Approx(1.3160740129524924).epsilon(1e-10));
  CHECK(g_env.psi_tilde.eval(4.0) ==
        doctest::Approx(6.745602148276689).epsilon(1e-10));

  // a single member is its own envelope
  const SumProblem solo = make_sum_problem({make_uniform(2.0)}, 7);
  const PsiEnvelopePair solo_env = psi_envelope(solo, grid);
  const double sigma = std::sqrt(variance(make_uniform(2.0)));
  for (double p : grid) {
    CHECK(solo_env.psi.eval(p) ==
          doctest::Approx(lp_norm(make_uniform(2.0), p) / sigma).epsilon(1e-10));
  }

  CHECK_THROWS_AS(psi_envelope(rademachers(4), std::vector<double>{1.5, 1.8}),
                  validation_error);
}

TEST_CASE("lower exponent prediction") {
  CHECK(lower_exponent(1.5) == 1.5);
  CHECK(lower_exponent(3.0) == 2.0);
  CHECK(lower_exponent(2.0) == 2.0);
  CHECK_THROWS_AS(lower_exponent(1.0), validation_error);
}

TEST_CASE("bound curves are scale invariant") {
  const std::vector<double> grid = linear_grid(0.0, 4.0, 21);
  const SpaceDescriptor sub = make_bphi_space(make_phi_quadratic());
  const SumProblem base =
      make_sum_problem({make_gaussian(1.0), make_uniform(1.5)}, 12);
  for (double c : {0.5, 2.0, 10.0}) {
    const SumProblem rescaled = make_sum_problem(
        {make_gaussian(c), make_uniform(c * 1.5)}, 12);
    const double k0 = kappa_relative(base, sub).value;
    const double k1 = kappa_relative(rescaled, sub).value;
    CHECK(k1 == doctest::Approx(k0).epsilon(1e-9));
    const BoundCurve b0 = modified_tail_bound(base, sub, sub, 1.0, grid);
    const BoundCurve b1 = modified_tail_bound(rescaled, sub, sub, 1.0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(b1.values[i] == doctest::Approx(b0.values[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("route specializations agree") {
  const std::vector<double> grid = linear_grid(0.0, 4.0, 17);
  const SpaceDescriptor sub = make_bphi_space(make_phi_quadratic());
  const SumProblem prob = rademachers(100);

  RouteSpec b2;
  b2.route = Route::B2;
  b2.space_x = sub;
  const BoundCurve via_b2 = build_route_bound(prob, b2, grid);
  const BoundCurve via_pair = modified_tail_bound(prob, sub, sub, 1.0, grid);
  CHECK(via_b2.values == via_pair.values);

  // U(X, X) = K(X): the weak-pair path with the same constant is identical
  const SpaceDescriptor l4 = make_lp_space(4.0);
  RouteSpec wb2;
  wb2.route = Route::Wb2;
  wb2.space_x = l4;
  const BoundCurve via_wb2 = build_route_bound(prob, wb2, grid);
  const BoundCurve via_pair_k = modified_tail_bound(
      prob, l4, l4, rosenthal_constant(4.0), grid);
  CHECK(via_wb2.values == via_pair_k.values);
}

TEST_CASE("curves are nonincreasing across routes") {
  const std::vector<double> grid = linear_grid(0.0, 6.0, 31);
  const SumProblem prob = rademachers(50);

  RouteSpec classical;
  classical.route = Route::Classical;
  classical.nu = 1.0;
  classical.kappa_c = 1.0;

  RouteSpec wb2;
  wb2.route = Route::Wb2;
  wb2.space_x = make_lp_space(4.0);

  RouteSpec gls;
  gls.route = Route::GlsRosenthal;

  for (const RouteSpec& r : {classical, wb2, gls}) {
    const BoundCurve curve = build_route_bound(prob, r, grid);
    for (std::size_t i = 1; i < curve.values.size(); ++i) {
      CHECK(curve.values[i] <= curve.values[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("subgaussian curve undercuts the classical curve far out") {
  // same members seen through both lenses, thresholds in S_n scale on [5, 15]
  for (double t = 5.0; t <= 15.0; t += 0.5) {
    const double modified = std::exp(-0.5 * t * t);
    const double classical =
        classical_bernstein(1.0, 1.0, 100, t * std::sqrt(100.0));
    CHECK(modified <= 2.0 * classical);
  }
}

TEST_CASE("route validation failures") {
  const std::vector<double> grid = linear_grid(0.0, 4.0, 9);
  const SumProblem prob = rademachers(10);

  RouteSpec pair_missing_u;
  pair_missing_u.route = Route::Pair;
  pair_missing_u.space_x = make_lp_space(4.0);
  pair_missing_u.space_y = make_lp_space(4.0);
  CHECK_THROWS_AS(build_route_bound(prob, pair_missing_u, grid),
                  validation_error);

  RouteSpec b2_nonconv;
  b2_nonconv.route = Route::B2;
  b2_nonconv.space_x = make_bphi_space(make_phi_sqrt_concave());
  CHECK_THROWS_AS(build_route_bound(prob, b2_nonconv, grid), validation_error);

  RouteSpec b2_lp;
  b2_lp.route = Route::B2;
  b2_lp.space_x = make_lp_space(4.0);  // only L_2 carries the constant-1 rule
  CHECK_THROWS_AS(build_route_bound(prob, b2_lp, grid), validation_error);

  RouteSpec classical_missing;
  classical_missing.route = Route::Classical;
  CHECK_THROWS_AS(build_route_bound(prob, classical_missing, grid),
                  validation_error);

  CHECK_THROWS_AS(modified_tail_bound(prob, make_lp_space(2.0),
                                      make_lp_space(2.0), -1.0, grid),
                  validation_error);
}
