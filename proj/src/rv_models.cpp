#include "tailbound/rv_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tailbound/errors.hpp"
#include "tailbound/quadrature.hpp"

namespace tailbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logsumexp2(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

double log_cosh(double x) {
  x = std::abs(x);
  if (x < 0.1) {
    // the exact form cancels ~|x - ln 2 + log1p(...)| digits at small x
    const double x2 = x * x;
    return x2 * (0.5 + x2 * (-1.0 / 12.0 + x2 / 45.0));
  }
  // cosh x = e^x (1 + e^-2x) / 2
  return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
}

// ln(sinh(x)/x), even in x.
double log_sinhc(double x) {
  x = std::abs(x);
  if (x < 0.1) {
    const double x2 = x * x;
    return x2 * (1.0 / 6.0 + x2 * (-1.0 / 180.0 + x2 / 2835.0));
  }
  return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
}

double two_point_q(const TwoPointSharp& tp) { return std::pow(tp.t, -tp.p); }

// Peak of |lambda| t - t^m over t >= 0 (m > 1).
double weibull_peak(double lam_abs, double m) {
  if (lam_abs == 0.0) return 0.0;
  const double tstar = std::pow(lam_abs / m, 1.0 / (m - 1.0));
  return lam_abs * tstar - std::pow(tstar, m);
}

double weibull_log_mgf(const WeibullSym& w, double lambda) {
  const double lam = std::abs(lambda);
  if (lam == 0.0) return 0.0;
  const double m = w.m;
  const double peak = weibull_peak(lam, m);
  // Upper limit where both exponents are below peak - 60.
  double upper = std::max(2.0, 2.0 * std::pow(lam / m, 1.0 / (m - 1.0)));
  while (lam * upper - std::pow(upper, m) - peak > -60.0 && upper < 1e12) {
    upper *= 1.5;
  }
  const auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double base = -std::pow(t, m) - peak;
    const double density = m * std::pow(t, m - 1.0);
    return 0.5 * density * (std::exp(lam * t + base) + std::exp(-lam * t + base));
  };
  QuadratureOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  const double scaled = integrate(integrand, 0.0, upper, opt);
  if (!(scaled > 0.0)) {
    throw numeric_error("mgf quadrature produced a non-positive value");
  }
  return peak + std::log(scaled);
}

}  // namespace

RVSpec make_rademacher(std::string label) {
  return {Rademacher{}, std::move(label)};
}

RVSpec make_gaussian(double sigma, std::string label) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw validation_error("gaussian: sigma must be a positive real");
  }
  if (label.empty()) label = "gaussian(" + std::to_string(sigma) + ")";
  return {Gaussian{sigma}, std::move(label)};
}

RVSpec make_uniform(double half_width, std::string label) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw validation_error("uniform: half_width must be a positive real");
  }
  if (label.empty()) label = "uniform(" + std::to_string(half_width) + ")";
  return {Uniform{half_width}, std::move(label)};
}

RVSpec make_two_point_sharp(double t, double p, std::string label) {
  if (!(t > 1.0) || !(p > 1.0) || !std::isfinite(t) || !std::isfinite(p)) {
    throw validation_error("two_point_sharp: requires t > 1 and p > 1");
  }
  if (label.empty()) label = "two_point_sharp";
  return {TwoPointSharp{t, p}, std::move(label)};
}

RVSpec make_weibull_sym(double m, std::string label) {
  if (!(m > 1.0) || !std::isfinite(m)) {
    throw validation_error("weibull_sym: m must exceed 1");
  }
  if (label.empty()) label = "weibull_sym(" + std::to_string(m) + ")";
  return {WeibullSym{m}, std::move(label)};
}

RVSpec make_bounded(std::vector<double> values, std::vector<double> probs,
                    std::string label) {
  if (values.empty() || values.size() != probs.size()) {
    throw validation_error("bounded: values and probs must be nonempty and equal-sized");
  }
  double total = 0.0;
  for (double q : probs) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
      throw validation_error("bounded: probs must be nonnegative reals");
    }
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw validation_error("bounded: probs must sum to 1");
  }
  for (double& q : probs) q /= total;
  double mu = 0.0, scale = 0.0, var = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw validation_error("bounded: values must be finite");
    }
    mu += values[i] * probs[i];
    scale = std::max(scale, std::abs(values[i]));
  }
  if (std::abs(mu) > 1e-12 * std::max(1.0, scale)) {
    throw validation_error("bounded: law must be centered (mean zero)");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    var += values[i] * values[i] * probs[i];
  }
  if (!(var > 0.0)) {
    throw validation_error("bounded: variance must be strictly positive");
  }
  if (label.empty()) label = "bounded";
  return {Bounded{std::move(values), std::move(probs)}, std::move(label)};
}

bool is_sum_admissible(const RVSpec& spec) {
  return !std::holds_alternative<TwoPointSharp>(spec.law);
}

double mean(const RVSpec& spec) {
  if (const auto* tp = std::get_if<TwoPointSharp>(&spec.law)) {
    return tp->t * two_point_q(*tp);
  }
  return 0.0;
}

double variance(const RVSpec& spec) {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Rademacher>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return law.sigma * law.sigma;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return law.half_width * law.half_width / 3.0;
        } else if constexpr (std::is_same_v<T, WeibullSym>) {
          return std::tgamma(1.0 + 2.0 / law.m);
        } else if constexpr (std::is_same_v<T, Bounded>) {
          double v = 0.0;
          for (std::size_t i = 0; i < law.values.size(); ++i) {
            v += law.values[i] * law.values[i] * law.probs[i];
          }
          return v;
        } else {
          throw validation_error(
              "two_point_sharp is not centered and is rejected by sum-building "
              "operations");
        }
      },
      spec.law);
}

double log_abs_moment(const RVSpec& spec, double p) {
  if (!(p >= 1.0)) {
    throw validation_error("abs_moment: p must be >= 1");
  }
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Rademacher>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          // E|X|^p = sigma^p 2^{p/2} Gamma((p+1)/2) / sqrt(pi)
          return p * std::log(law.sigma) + 0.5 * p * std::numbers::ln2 +
                 std::lgamma(0.5 * (p + 1.0)) - 0.5 * std::log(std::numbers::pi);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return p * std::log(law.half_width) - std::log1p(p);
        } else if constexpr (std::is_same_v<T, WeibullSym>) {
          return std::lgamma(1.0 + p / law.m);
        } else if constexpr (std::is_same_v<T, TwoPointSharp>) {
          return (p - law.p) * std::log(law.t);
        } else {
          double acc = -kInf;
          for (std::size_t i = 0; i < law.values.size(); ++i) {
            const double v = std::abs(law.values[i]);
            if (v == 0.0 || law.probs[i] == 0.0) continue;
            acc = logsumexp2(acc, std::log(law.probs[i]) + p * std::log(v));
          }
          return acc;
        }
      },
      spec.law);
}

double abs_moment(const RVSpec& spec, double p) {
  return std::exp(log_abs_moment(spec, p));
}

double log_mgf(const RVSpec& spec, double lambda) {
  if (lambda == 0.0) return 0.0;
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Rademacher>) {
          return log_cosh(lambda);
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return 0.5 * law.sigma * law.sigma * lambda * lambda;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return log_sinhc(law.half_width * lambda);
        } else if constexpr (std::is_same_v<T, WeibullSym>) {
          return weibull_log_mgf(law, lambda);
        } else if constexpr (std::is_same_v<T, TwoPointSharp>) {
          const double q = two_point_q(law);
          return logsumexp2(std::log1p(-q), std::log(q) + lambda * law.t);
        } else {
          double acc = -kInf;
          for (std::size_t i = 0; i < law.values.size(); ++i) {
            if (law.probs[i] == 0.0) continue;
            acc = logsumexp2(acc, std::log(law.probs[i]) + lambda * law.values[i]);
          }
          return acc;
        }
      },
      spec.law);
}

double mgf(const RVSpec& spec, double lambda) {
  return std::exp(log_mgf(spec, lambda));
}

double tail(const RVSpec& spec, double t) {
  if (t <= 0.0) return 1.0;
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Rademacher>) {
          return t <= 1.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          return std::erfc(t / (law.sigma * std::numbers::sqrt2));
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return t >= law.half_width ? 0.0 : 1.0 - t / law.half_width;
        } else if constexpr (std::is_same_v<T, WeibullSym>) {
          return std::exp(-std::pow(t, law.m));
        } else if constexpr (std::is_same_v<T, TwoPointSharp>) {
          return t <= law.t ? two_point_q(law) : 0.0;
        } else {
          double acc = 0.0;
          for (std::size_t i = 0; i < law.values.size(); ++i) {
            if (std::abs(law.values[i]) >= t) acc += law.probs[i];
          }
          return acc;
        }
      },
      spec.law);
}

double draw_one(const RVSpec& spec, Rng& rng) {
  return std::visit(
      [&](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Rademacher>) {
          return rng.next_unit() < 0.5 ? -1.0 : 1.0;
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          const double u1 = rng.next_unit();
          const double u2 = rng.next_unit();
          return law.sigma * std::sqrt(-2.0 * std::log(u1)) *
                 std::cos(2.0 * std::numbers::pi * u2);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return law.half_width * (2.0 * rng.next_unit() - 1.0);
        } else if constexpr (std::is_same_v<T, WeibullSym>) {
          const double sign = rng.next_unit() < 0.5 ? -1.0 : 1.0;
          // inverse of the exact tail: |x| = (-ln U)^(1/m)
          return sign * std::pow(-std::log(rng.next_unit()), 1.0 / law.m);
        } else if constexpr (std::is_same_v<T, TwoPointSharp>) {
          return rng.next_unit() < two_point_q(law) ? law.t : 0.0;
        } else {
          double u = rng.next_unit();
          for (std::size_t i = 0; i < law.values.size(); ++i) {
            u -= law.probs[i];
            if (u < 0.0) return law.values[i];
          }
          return law.values.back();
        }
      },
      spec.law);
}

std::vector<double> sample(const RVSpec& spec, std::size_t count,
                           std::uint64_t seed, std::uint64_t stream) {
  if (count == 0) {
    throw validation_error("sample: count must be >= 1");
  }
  Rng rng(seed, stream);
  std::vector<double> out(count);
  for (double& x : out) x = draw_one(spec, rng);
  return out;
}

BernsteinCheck check_bernstein_condition(std::span<const RVSpec> specs,
                                         double nu, double kappa_c, int m_max) {
  if (!(nu > 0.0) || !(kappa_c > 0.0)) {
    throw validation_error("bernstein condition: nu and kappa_c must be positive");
  }
  if (m_max < 2) {
    throw validation_error("bernstein condition: m_max must be >= 2");
  }
  const double log_nu = std::log(nu);
  const double log_kappa = std::log(kappa_c);
  for (int m = 2; m <= m_max; ++m) {
    const double rhs = log_nu + std::lgamma(static_cast<double>(m) + 1.0) +
                       (m - 2) * log_kappa - std::numbers::ln2;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const double lhs = log_abs_moment(specs[i], static_cast<double>(m));
      if (lhs > rhs + 1e-12) {
        return {false, static_cast<int>(i) + 1, m};
      }
    }
  }
  return {};
}

}  // namespace tailbound
