#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tailbound/bounds.hpp"
#include "tailbound/harness.hpp"

namespace tailbound {

using json = nlohmann::json;

// {"kind": ..., "params": {...}, "label": ...}: the experiment-config atom.
json rv_to_json(const RVSpec& spec);
RVSpec rv_from_json(const json& j);

// {"name":"power","exponent":...,"b":...} | const | margin | extremal | table
GeneratingFunction psi_from_json(const json& j);
// {"name":"quadratic","lambda0":...} | m_L | sqrt_concave
YoungFunction phi_from_json(const json& j);

// {"space":"lp","p":4} | {"space":"gls","psi":{...}} | {"space":"bphi","phi":{...}}
SpaceDescriptor space_from_json(const json& j);

json bound_to_json(const BoundCurve& curve);
BoundCurve bound_from_json(const json& j);

json report_to_json(const TailReport& report, std::uint64_t seed);
TailReport report_from_json(const json& j);

// Floating-point text output uses 9 significant digits everywhere.
std::string format_sig9(double v);

void write_bound_csv(const std::filesystem::path& path, const BoundCurve& curve);
void write_tail_csv(const std::filesystem::path& path, const TailEstimate& est);
void write_report_csv(const std::filesystem::path& path, const TailReport& report);
void write_json_file(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

struct TGridSpec {
  double min = 0.0;
  double max = 4.0;
  int points = 81;
  std::vector<double> explicit_grid;  // wins over min/max/points when present
};

std::vector<double> build_t_grid(const TGridSpec& spec);

struct SimSpec {
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  bool maximal = false;
  double delta = 0.01;
};

struct ExponentSpec {
  double m = 2.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double tol = 0.3;
  int grid_points = 25;
};

struct OutSpec {
  std::string dir = ".";
  std::string prefix = "run";
};

struct ExperimentConfig {
  SumProblem problem;
  RouteSpec route;
  TGridSpec t_grid;
  std::optional<SimSpec> sim;
  std::optional<ExponentSpec> exponent;
  double bound_scale = 1.0;  // verification canary knob; 1 = the real bound
  OutSpec out;
};

ExperimentConfig config_from_json(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace tailbound
