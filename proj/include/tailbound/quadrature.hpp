#pragma once

#include <functional>

namespace tailbound {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_depth = 52;
};

// Adaptive Simpson integration of f over the finite interval [a, b].
// Throws numeric_error if the integrand evaluates to a non-finite value or
// the requested tolerance cannot be reached.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

}  // namespace tailbound
