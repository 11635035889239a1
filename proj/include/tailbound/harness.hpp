#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tailbound/bounds.hpp"

namespace tailbound {

struct SimulationRun {
  SumProblem problem;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  // When set, record max over j <= n of |partial sum| / sqrt(total variance)
  // instead of the terminal S_n.
  bool maximal = false;
};

// One value per rep: S_n (signed) or the maximal statistic. Rep r draws from
// the substream (seed, r), so the output is identical for every thread count
// and bitwise reproducible across runs.
std::vector<double> simulate_sn(const SimulationRun& run, int threads = 1);

struct TailEstimate {
  std::vector<double> t_grid;
  std::vector<double> empirical;  // fraction of |sample| >= t
  double band_halfwidth = 0.0;    // DKW epsilon = sqrt(ln(2/delta) / (2 reps))
  std::size_t reps = 0;
  double delta = 0.0;
};

TailEstimate empirical_tail(std::span<const double> samples,
                            std::vector<double> t_grid, double delta);

struct TailReport {
  TailEstimate estimate;
  BoundCurve bound;
  std::vector<std::size_t> violations;  // grid indices where the bound fails
  double max_violation = 0.0;           // largest (empirical - eps - bound)

  bool pass() const { return violations.empty(); }
};

// pass iff empirical - eps <= min(1, bound) at every grid point. Both curves
// must share the t_grid.
TailReport verify_bound(TailEstimate estimate, BoundCurve bound);

struct ExponentFit {
  double slope = 0.0;
  double std_error = 0.0;
  std::size_t used_points = 0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

// Least-squares slope of ln(-ln T(t)) against ln t over a log grid on
// [t_lo, t_hi], using only points with empirical tail strictly inside (0, 1).
// Throws estimation_error when fewer than five points are usable.
ExponentFit estimate_tail_exponent(std::span<const double> samples, double t_lo,
                                   double t_hi, int grid_points = 25);

}  // namespace tailbound
