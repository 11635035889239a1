#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tailbound/rng.hpp"

namespace tailbound {

// Catalog of centered scalar random variables. Every law admitted into sums
// is symmetric (centering is structural, never by subtraction) and has finite
// strictly positive variance. TwoPointSharp is the single non-centered
// member; it exists to realise the worst case of the L_p tail characteristic
// and is rejected by sum-building code.

struct Rademacher {};

struct Gaussian {
  double sigma = 1.0;
};

struct Uniform {
  double half_width = 1.0;  // symmetric on [-half_width, half_width]
};

// P(nu = t) = t^-p, P(nu = 0) = 1 - t^-p, with t, p > 1.
struct TwoPointSharp {
  double t = 2.0;
  double p = 2.0;
};

// Symmetric law with P(|x| > t) = exp(-t^m) for all t >= 0, m > 1.
struct WeibullSym {
  double m = 2.0;
};

// Finite discrete law; must have mean zero.
struct Bounded {
  std::vector<double> values;
  std::vector<double> probs;
};

using RVLaw =
    std::variant<Rademacher, Gaussian, Uniform, TwoPointSharp, WeibullSym, Bounded>;

struct RVSpec {
  RVLaw law;
  std::string label;
};

// Validating factories. Each throws validation_error on bad parameters.
RVSpec make_rademacher(std::string label = "rademacher");
RVSpec make_gaussian(double sigma, std::string label = "");
RVSpec make_uniform(double half_width, std::string label = "");
RVSpec make_two_point_sharp(double t, double p, std::string label = "");
RVSpec make_weibull_sym(double m, std::string label = "");
RVSpec make_bounded(std::vector<double> values, std::vector<double> probs,
                    std::string label = "");

// True for every kind except TwoPointSharp: mean exactly zero and variance in
// (0, inf), the gate for membership in a sum.
bool is_sum_admissible(const RVSpec& spec);

// Exact mean (zero for all admitted kinds).
double mean(const RVSpec& spec);

// Exact analytic variance. Throws validation_error for TwoPointSharp.
double variance(const RVSpec& spec);

// ln E|xi|^p for p >= 1, safe for large p. -inf only for the degenerate
// all-zero Bounded law, which the factory rejects.
double log_abs_moment(const RVSpec& spec, double p);

// E|xi|^p for p >= 1 via closed forms (gamma-function formulas for Gaussian
// and WeibullSym, direct sums for the discrete kinds).
double abs_moment(const RVSpec& spec, double p);

// ln E exp(lambda * xi). WeibullSym uses adaptive quadrature in a peak-scaled
// form; everything else is closed form. Returns +inf outside the finiteness
// domain rather than failing.
double log_mgf(const RVSpec& spec, double lambda);

// E exp(lambda * xi); exp(log_mgf), so values beyond double range surface as
// the distinguished +inf.
double mgf(const RVSpec& spec, double lambda);

// Exact two-sided tail P(|xi| >= t).
double tail(const RVSpec& spec, double t);

// One draw from the law. Consumes a fixed number of uniforms per kind
// (Gaussian and WeibullSym take two, the rest one), so positions in a stream
// are reproducible.
double draw_one(const RVSpec& spec, Rng& rng);

// Deterministic sampling: identical output for identical (spec, count, seed,
// stream) on every platform we target.
std::vector<double> sample(const RVSpec& spec, std::size_t count,
                           std::uint64_t seed, std::uint64_t stream = 0);

struct BernsteinCheck {
  bool ok = true;
  // 1-based index of the first violating member and the moment order, set
  // only when ok is false.
  int member_index = 0;
  int moment_order = 0;
};

// Checks E|xi_i|^m <= nu * m! * kappa_c^(m-2) / 2 for all members and integer
// m in [2, m_max]. Comparison runs in log space so large m cannot overflow.
BernsteinCheck check_bernstein_condition(std::span<const RVSpec> specs,
                                         double nu, double kappa_c, int m_max);

}  // namespace tailbound
