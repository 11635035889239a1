#pragma once

#include <string>
#include <variant>

#include "tailbound/functions.hpp"
#include "tailbound/rv_models.hpp"

namespace tailbound {

// The three space families norms and tail characteristics dispatch over.
struct LpSpace {
  double p = 2.0;
};

struct GlsSpace {
  GeneratingFunction psi;
};

struct BphiSpace {
  YoungFunction phi;
};

struct SpaceDescriptor {
  std::variant<LpSpace, GlsSpace, BphiSpace> space;

  std::string label() const;
};

SpaceDescriptor make_lp_space(double p);
SpaceDescriptor make_gls_space(GeneratingFunction psi);
SpaceDescriptor make_bphi_space(YoungFunction phi);

// (E|xi|^p)^(1/p), p >= 1.
double lp_norm(const RVSpec& spec, double p);

struct GlsNormOptions {
  double p_cap = 512.0;          // scan horizon when b = inf
  int grid_points = 400;
  double divergence_ratio = 1.15;  // ratio growth over the last octave => +inf
};

// sup over p of |xi|_p / psi(p) on a log-dense grid with golden-section
// refinement. A ratio still climbing at the scan horizon by more than
// divergence_ratio per octave is declared divergent: the variable is not in
// the space and the distinguished +inf is returned.
double gls_norm(const RVSpec& spec, const GeneratingFunction& psi,
                const GlsNormOptions& opt = {});

struct BphiNormOptions {
  double lambda_min = 1e-4;
  double lambda_cap = 50.0;
  int grid_points = 200;
  double tau_cap = 1e9;  // no feasible tau below this => +inf verdict
};

// Minimal tau with E exp(+/- lambda xi) <= exp(phi(lambda tau)) across a
// lambda grid covering (0, lambda0), found by bisection. mgf values are
// computed once per grid point; the small-lambda end pins the infimum.
double bphi_norm(const RVSpec& spec, const YoungFunction& phi,
                 const BphiNormOptions& opt = {});

double space_norm(const RVSpec& spec, const SpaceDescriptor& space);

// Worst-case tail over the unit ball of the space. Exact for L_p (t > 1);
// an upper bound for GLS and B(phi).
double tail_characteristic(const SpaceDescriptor& space, double t);
bool tail_characteristic_is_exact(const SpaceDescriptor& space);

struct SharpnessResult {
  double norm;       // L_p norm of the two-point law, equals 1
  double tail_at_t;  // exact tail at t, equals t^-p
};

// Realises the extremal two-point law showing the L_p characteristic is
// attained: norm 1 and tail exactly t^-p.
SharpnessResult lp_sharpness_witness(double p, double t);

inline constexpr double kRosenthalConstant = 1.77638;

// K(L_p) <= C_R * p / ln p for p > 2.
double rosenthal_constant(double p);

// Numeric verdict on convexity of lambda -> phi(sqrt(lambda)), the gate for
// the constant-1 sum rule on B(phi). Inconclusive evidence reports false.
bool is_phi_conv(const YoungFunction& phi);

}  // namespace tailbound
