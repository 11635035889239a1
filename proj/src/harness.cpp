#include "tailbound/harness.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tailbound/errors.hpp"
#include "tailbound/rng.hpp"

namespace tailbound {

namespace {

void run_reps(const SumProblem& problem, std::uint64_t seed, bool maximal,
              double inv_scale, std::size_t r0, std::size_t r1,
              std::vector<double>& out) {
  const std::size_t k = problem.members.size();
  const std::size_t n = problem.n;
  for (std::size_t r = r0; r < r1; ++r) {
    Rng rng(seed, r);
    double partial = 0.0;
    double peak = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      partial += draw_one(problem.members[j % k], rng);
      if (maximal) peak = std::max(peak, std::abs(partial));
    }
    out[r] = (maximal ? peak : partial) * inv_scale;
  }
}

}  // namespace

std::vector<double> simulate_sn(const SimulationRun& run, int threads) {
  if (run.reps == 0) throw validation_error("sim.reps: must be >= 1");
  const double scale = std::sqrt(total_variance(run.problem));
  const double inv_scale = 1.0 / scale;
  std::vector<double> out(run.reps);

  const int workers = std::clamp(threads, 1, 64);
  if (workers == 1 || run.reps < 4096) {
    run_reps(run.problem, run.seed, run.maximal, inv_scale, 0, run.reps, out);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (run.reps + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t r0 = std::min(run.reps, block * w);
    const std::size_t r1 = std::min(run.reps, r0 + block);
    if (r0 >= r1) break;
    pool.emplace_back([&, r0, r1] {
      run_reps(run.problem, run.seed, run.maximal, inv_scale, r0, r1, out);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

TailEstimate empirical_tail(std::span<const double> samples,
                            std::vector<double> t_grid, double delta) {
  if (samples.empty()) throw validation_error("empirical_tail: no samples");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw validation_error("sim.delta: must lie in (0, 1)");
  }
  std::vector<double> magnitudes(samples.size());
  std::transform(samples.begin(), samples.end(), magnitudes.begin(),
                 [](double x) { return std::abs(x); });
  std::sort(magnitudes.begin(), magnitudes.end());

  TailEstimate est;
  est.reps = samples.size();
  est.delta = delta;
  est.band_halfwidth =
      std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(samples.size())));
  est.empirical.resize(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const auto it =
        std::lower_bound(magnitudes.begin(), magnitudes.end(), t_grid[i]);
    est.empirical[i] = static_cast<double>(magnitudes.end() - it) /
                       static_cast<double>(magnitudes.size());
  }
  est.t_grid = std::move(t_grid);
  return est;
}

TailReport verify_bound(TailEstimate estimate, BoundCurve bound) {
  if (estimate.t_grid != bound.t_grid) {
    throw validation_error("verify: empirical and bound t_grids differ");
  }
  TailReport report{std::move(estimate), std::move(bound), {}, 0.0};
  for (std::size_t i = 0; i < report.estimate.t_grid.size(); ++i) {
    const double clipped = std::min(1.0, report.bound.values[i]);
    const double gap =
        report.estimate.empirical[i] - report.estimate.band_halfwidth - clipped;
    if (gap > 0.0) {
      report.violations.push_back(i);
      report.max_violation = std::max(report.max_violation, gap);
    }
  }
  return report;
}

ExponentFit estimate_tail_exponent(std::span<const double> samples, double t_lo,
                                   double t_hi, int grid_points) {
  if (samples.empty()) throw estimation_error("exponent: no samples");
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw estimation_error("exponent: requires 0 < t_lo < t_hi");
  }
  if (grid_points < 5) throw estimation_error("exponent: grid_points must be >= 5");

  std::vector<double> magnitudes(samples.size());
  std::transform(samples.begin(), samples.end(), magnitudes.begin(),
                 [](double x) { return std::abs(x); });
  std::sort(magnitudes.begin(), magnitudes.end());
  const double total = static_cast<double>(magnitudes.size());

  std::vector<double> xs, ys;
  const double llo = std::log(t_lo), lhi = std::log(t_hi);
  for (int i = 0; i < grid_points; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / (grid_points - 1));
    const auto it = std::lower_bound(magnitudes.begin(), magnitudes.end(), t);
    const double tail_frac = static_cast<double>(magnitudes.end() - it) / total;
    if (!(tail_frac > 0.0) || !(tail_frac < 1.0)) continue;
    xs.push_back(std::log(t));
    ys.push_back(std::log(-std::log(tail_frac)));
  }
  if (xs.size() < 5) {
    throw estimation_error(
        "exponent: fewer than 5 grid points with empirical tail inside (0,1)");
  }

  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double resid = ys[i] - intercept - slope * xs[i];
    ssr += resid * resid;
  }
  ExponentFit fit;
  fit.slope = slope;
  fit.std_error = std::sqrt(ssr / (k - 2.0) / sxx);
  fit.used_points = xs.size();
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  return fit;
}

}  // namespace tailbound
