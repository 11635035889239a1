#pragma once

#include <functional>
#include <limits>

#include "tailbound/functions.hpp"

namespace tailbound {

// A scalar function together with the open interval where it is finite.
// Outside (lo, hi) the function is treated as +inf.
struct DomainFunction {
  std::function<double(double)> eval;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  int grid_hint = 512;
};

// g*(u) = sup over the domain of (y*u - g(y)), u >= 0. A coarse log-spaced
// scan localises the peak and golden-section refinement finishes it. When the
// domain is unbounded the scan cap is extended geometrically; an objective
// that keeps growing by more than 10x per extension is declared unbounded and
// the distinguished +inf is returned.
double legendre_transform(const DomainFunction& g, double u);

// nu(x) = phi*(x) with the supremum over [0, lambda0); evenness of phi makes
// the nonnegative half sufficient for x >= 0. nu(0) = 0 exactly.
double nu_transform(const YoungFunction& phi, double x);

// Conjugate of h(p) = p ln psi(p) over the finiteness domain of psi,
// evaluated at y. The degenerate psi^{(r)} collapses to h*(y) = r*y.
double h_star(const GeneratingFunction& psi, double y);

// Closed-form large-argument equivalent of the conjugate of phi_{m,L}:
// ((m-1)/m) * t^(m/(m-1)) * L(t^(1/(m-1)))^(-1/(m-1)), for m >= 2, t >= 1.
double g_ml_asymptotic(double m, const SlowlyVarying& L, double t);
double g_ml_asymptotic(double m, double t);

}  // namespace tailbound
