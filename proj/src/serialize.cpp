#include "tailbound/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "tailbound/errors.hpp"

namespace tailbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double get_num(const json& j, const std::string& field, const std::string& ctx) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw validation_error(ctx + "." + field + ": number required");
  }
  return j[field].get<double>();
}

double get_num_or(const json& j, const std::string& field, double fallback) {
  if (!j.contains(field) || j[field].is_null()) return fallback;
  return j[field].get<double>();
}

std::string get_str(const json& j, const std::string& field,
                    const std::string& ctx) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw validation_error(ctx + "." + field + ": string required");
  }
  return j[field].get<std::string>();
}

SlowlyVarying slowly_varying_from_json(const json& j) {
  if (j.is_null()) return SlowlyVarying::one();
  const std::string name = get_str(j, "name", "phi.L");
  if (name == "one") return SlowlyVarying::one();
  if (name == "log_pow") {
    return SlowlyVarying::log_pow(get_num(j, "a", "phi.L"));
  }
  throw validation_error("phi.L.name: unknown slowly varying kind '" + name + "'");
}

}  // namespace

json rv_to_json(const RVSpec& spec) {
  json params = json::object();
  std::string kind;
  std::visit(
      [&](const auto& law) {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Rademacher>) {
          kind = "rademacher";
        } else if constexpr (std::is_same_v<T, Gaussian>) {
          kind = "gaussian";
          params["sigma"] = law.sigma;
        } else if constexpr (std::is_same_v<T, Uniform>) {
          kind = "uniform";
          params["half_width"] = law.half_width;
        } else if constexpr (std::is_same_v<T, TwoPointSharp>) {
          kind = "two_point_sharp";
          params["t"] = law.t;
          params["p"] = law.p;
        } else if constexpr (std::is_same_v<T, WeibullSym>) {
          kind = "weibull_sym";
          params["m"] = law.m;
        } else {
          kind = "bounded";
          params["values"] = law.values;
          params["probs"] = law.probs;
        }
      },
      spec.law);
  return {{"kind", kind}, {"params", params}, {"label", spec.label}};
}

RVSpec rv_from_json(const json& j) {
  const std::string kind = get_str(j, "kind", "rv");
  const json params = j.value("params", json::object());
  std::string label = j.value("label", std::string{});
  if (kind == "rademacher") {
    return label.empty() ? make_rademacher() : make_rademacher(label);
  }
  if (kind == "gaussian") {
    return make_gaussian(get_num(params, "sigma", "rv.params"), label);
  }
  if (kind == "uniform") {
    return make_uniform(get_num(params, "half_width", "rv.params"), label);
  }
  if (kind == "two_point_sharp") {
    return make_two_point_sharp(get_num(params, "t", "rv.params"),
                                get_num(params, "p", "rv.params"), label);
  }
  if (kind == "weibull_sym") {
    return make_weibull_sym(get_num(params, "m", "rv.params"), label);
  }
  if (kind == "bounded") {
    if (!params.contains("values") || !params.contains("probs")) {
      throw validation_error("rv.params: bounded requires values and probs");
    }
    return make_bounded(params["values"].get<std::vector<double>>(),
                        params["probs"].get<std::vector<double>>(), label);
  }
  throw validation_error("rv.kind: unknown kind '" + kind + "'");
}

GeneratingFunction psi_from_json(const json& j) {
  const std::string name = get_str(j, "name", "psi");
  if (name == "power") {
    return make_psi_power(get_num(j, "exponent", "psi"),
                          get_num_or(j, "b", kInf));
  }
  if (name == "const") {
    return make_psi_const(get_num_or(j, "value", 1.0), get_num_or(j, "b", kInf));
  }
  if (name == "margin") {
    return make_psi_margin(get_num(j, "b", "psi"), get_num(j, "beta", "psi"));
  }
  if (name == "extremal") {
    return make_psi_extremal(get_num(j, "r", "psi"));
  }
  if (name == "table") {
    if (!j.contains("p") || !j.contains("log_psi")) {
      throw validation_error("psi: table requires p and log_psi arrays");
    }
    return make_psi_table(j["p"].get<std::vector<double>>(),
                          j["log_psi"].get<std::vector<double>>());
  }
  throw validation_error("psi.name: unknown generating function '" + name + "'");
}

YoungFunction phi_from_json(const json& j) {
  const std::string name = get_str(j, "name", "phi");
  const double lambda0 = get_num_or(j, "lambda0", kInf);
  if (name == "quadratic") return make_phi_quadratic(lambda0);
  if (name == "m_L") {
    return make_phi_ml(get_num(j, "m", "phi"),
                       slowly_varying_from_json(j.value("L", json{})), lambda0);
  }
  if (name == "sqrt_concave") return make_phi_sqrt_concave(lambda0);
  throw validation_error("phi.name: unknown young function '" + name + "'");
}

SpaceDescriptor space_from_json(const json& j) {
  const std::string tag = get_str(j, "space", "space");
  if (tag == "lp") return make_lp_space(get_num(j, "p", "space"));
  if (tag == "gls") {
    if (!j.contains("psi")) throw validation_error("space.psi: required for gls");
    return make_gls_space(psi_from_json(j["psi"]));
  }
  if (tag == "bphi") {
    if (!j.contains("phi")) throw validation_error("space.phi: required for bphi");
    return make_bphi_space(phi_from_json(j["phi"]));
  }
  throw validation_error("space: unknown space tag '" + tag + "'");
}

json bound_to_json(const BoundCurve& curve) {
  json clipped = json::array();
  for (double v : curve.values) clipped.push_back(std::min(1.0, v));
  return {{"label", curve.label},
          {"provenance", curve.provenance == Provenance::Exact ? "exact" : "upper"},
          {"t", curve.t_grid},
          {"value", curve.values},
          {"clipped", clipped}};
}

BoundCurve bound_from_json(const json& j) {
  const std::string prov = get_str(j, "provenance", "bound");
  if (prov != "exact" && prov != "upper") {
    throw validation_error("bound.provenance: must be exact or upper");
  }
  return make_bound_curve(j.at("t").get<std::vector<double>>(),
                          j.at("value").get<std::vector<double>>(),
                          prov == "exact" ? Provenance::Exact : Provenance::Upper,
                          j.value("label", std::string{}));
}

json report_to_json(const TailReport& report, std::uint64_t seed) {
  return {{"verdict", report.pass() ? "pass" : "fail"},
          {"max_violation", report.max_violation},
          {"violations", report.violations},
          {"seed", seed},
          {"reps", report.estimate.reps},
          {"delta", report.estimate.delta},
          {"band_halfwidth", report.estimate.band_halfwidth},
          {"empirical", report.estimate.empirical},
          {"bound", bound_to_json(report.bound)}};
}

TailReport report_from_json(const json& j) {
  TailReport report;
  report.bound = bound_from_json(j.at("bound"));
  report.estimate.t_grid = report.bound.t_grid;
  report.estimate.empirical = j.at("empirical").get<std::vector<double>>();
  report.estimate.delta = get_num(j, "delta", "report");
  report.estimate.band_halfwidth = get_num(j, "band_halfwidth", "report");
  report.estimate.reps = j.at("reps").get<std::size_t>();
  report.violations = j.at("violations").get<std::vector<std::size_t>>();
  report.max_violation = get_num(j, "max_violation", "report");
  if (report.estimate.empirical.size() != report.estimate.t_grid.size()) {
    throw validation_error("report: empirical/t size mismatch");
  }
  return report;
}

std::string format_sig9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw validation_error("cannot open output file " + path.string());
  }
  return out;
}

}  // namespace

void write_bound_csv(const std::filesystem::path& path, const BoundCurve& curve) {
  auto out = open_out(path);
  out << "t,value,clipped,provenance\n";
  const char* prov = curve.provenance == Provenance::Exact ? "exact" : "upper";
  for (std::size_t i = 0; i < curve.t_grid.size(); ++i) {
    out << format_sig9(curve.t_grid[i]) << ',' << format_sig9(curve.values[i])
        << ',' << format_sig9(std::min(1.0, curve.values[i])) << ',' << prov
        << '\n';
  }
}

void write_tail_csv(const std::filesystem::path& path, const TailEstimate& est) {
  auto out = open_out(path);
  out << "t,empirical,band\n";
  for (std::size_t i = 0; i < est.t_grid.size(); ++i) {
    out << format_sig9(est.t_grid[i]) << ',' << format_sig9(est.empirical[i])
        << ',' << format_sig9(est.band_halfwidth) << '\n';
  }
}

void write_report_csv(const std::filesystem::path& path, const TailReport& report) {
  auto out = open_out(path);
  out << "t,empirical,band,bound,violation\n";
  std::size_t next = 0;
  for (std::size_t i = 0; i < report.estimate.t_grid.size(); ++i) {
    const bool violated =
        next < report.violations.size() && report.violations[next] == i;
    if (violated) ++next;
    out << format_sig9(report.estimate.t_grid[i]) << ','
        << format_sig9(report.estimate.empirical[i]) << ','
        << format_sig9(report.estimate.band_halfwidth) << ','
        << format_sig9(std::min(1.0, report.bound.values[i])) << ','
        << (violated ? '1' : '0') << '\n';
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw validation_error("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

std::vector<double> build_t_grid(const TGridSpec& spec) {
  if (!spec.explicit_grid.empty()) return spec.explicit_grid;
  if (spec.points < 2) throw validation_error("t_grid.points: must be >= 2");
  if (!(spec.max > spec.min) || !(spec.min >= 0.0)) {
    throw validation_error("t_grid: requires 0 <= min < max");
  }
  std::vector<double> grid(spec.points);
  for (int i = 0; i < spec.points; ++i) {
    grid[i] = spec.min + (spec.max - spec.min) * i / (spec.points - 1);
  }
  return grid;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;

  if (!j.contains("problem") || !j["problem"].contains("members")) {
    throw validation_error("problem.members: required");
  }
  std::vector<RVSpec> members;
  for (const json& m : j["problem"]["members"]) members.push_back(rv_from_json(m));
  const std::size_t n = j["problem"].value("n", std::uint64_t{1});
  cfg.problem = make_sum_problem(std::move(members), n);

  const std::string route = j.value("route", std::string{});
  if (route == "b2") {
    cfg.route.route = Route::B2;
  } else if (route == "wb2") {
    cfg.route.route = Route::Wb2;
  } else if (route == "pair") {
    cfg.route.route = Route::Pair;
  } else if (route == "classical") {
    cfg.route.route = Route::Classical;
  } else if (route == "gls_rosenthal") {
    cfg.route.route = Route::GlsRosenthal;
  } else {
    throw validation_error("route: unknown route '" + route + "'");
  }
  if (j.contains("space_x")) cfg.route.space_x = space_from_json(j["space_x"]);
  if (j.contains("space_y")) cfg.route.space_y = space_from_json(j["space_y"]);
  if (j.contains("u_const") && !j["u_const"].is_null()) {
    cfg.route.u_const = j["u_const"].get<double>();
  }
  if (j.contains("classical")) {
    cfg.route.nu = get_num(j["classical"], "nu", "classical");
    cfg.route.kappa_c = get_num(j["classical"], "kappa", "classical");
  }
  if (j.contains("p_grid")) {
    cfg.route.p_grid = j["p_grid"].get<std::vector<double>>();
  }

  if (j.contains("t_grid")) {
    const json& tg = j["t_grid"];
    if (tg.is_array()) {
      cfg.t_grid.explicit_grid = tg.get<std::vector<double>>();
    } else {
      cfg.t_grid.min = get_num_or(tg, "min", 0.0);
      cfg.t_grid.max = get_num_or(tg, "max", 4.0);
      cfg.t_grid.points = tg.value("points", 81);
    }
  }

  if (j.contains("sim")) {
    const json& s = j["sim"];
    SimSpec sim;
    sim.reps = s.value("reps", std::uint64_t{0});
    if (sim.reps == 0) throw validation_error("sim.reps: positive integer required");
    sim.seed = s.value("seed", std::uint64_t{0});
    sim.maximal = s.value("maximal", false);
    sim.delta = s.value("delta", 0.01);
    cfg.sim = sim;
  }

  if (j.contains("exponent")) {
    const json& e = j["exponent"];
    ExponentSpec ex;
    ex.m = get_num(e, "m", "exponent");
    ex.t_lo = get_num(e, "t_lo", "exponent");
    ex.t_hi = get_num(e, "t_hi", "exponent");
    ex.tol = get_num(e, "tol", "exponent");
    ex.grid_points = e.value("grid_points", 25);
    cfg.exponent = ex;
  }

  cfg.bound_scale = j.value("bound_scale", 1.0);
  if (!(cfg.bound_scale > 0.0)) {
    throw validation_error("bound_scale: must be positive");
  }

  if (j.contains("out")) {
    cfg.out.dir = j["out"].value("dir", std::string{"."});
    cfg.out.prefix = j["out"].value("prefix", std::string{"run"});
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path));
}

}  // namespace tailbound
