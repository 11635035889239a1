// Batch front door: reads an experiment config, dispatches bound computation,
// simulation, verification or exponent estimation, and emits CSV/JSON reports.
//
// Exit codes: 0 success (bound holds / tolerance met), 1 bound violation or
// tolerance failure, 2 validation or estimation failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/serialize.hpp"

namespace {

using namespace tailbound;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;  // overrides config when nonempty
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int resolve_threads(const CommonArgs& args) {
  if (args.threads) return *args.threads;
  if (const char* env = std::getenv("TAILBOUND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 4;
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig cfg = load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out.dir = args.out_dir;
  if (args.seed && cfg.sim) cfg.sim->seed = *args.seed;
  return cfg;
}

std::filesystem::path out_path(const ExperimentConfig& cfg, const char* suffix) {
  return std::filesystem::path(cfg.out.dir) / (cfg.out.prefix + suffix);
}

BoundCurve scaled_route_bound(const ExperimentConfig& cfg) {
  BoundCurve curve = build_route_bound(cfg.problem, cfg.route,
                                       build_t_grid(cfg.t_grid));
  if (cfg.bound_scale != 1.0) {
    for (double& v : curve.values) v *= cfg.bound_scale;
    curve.label += "[scaled x" + format_sig9(cfg.bound_scale) + "]";
  }
  return curve;
}

void require_sim(const ExperimentConfig& cfg, bool verification) {
  if (!cfg.sim) throw validation_error("sim: block required for this command");
  if (verification && cfg.sim->reps < 1000) {
    throw validation_error("sim.reps: must be >= 1000 for verification use");
  }
}

int cmd_bound(const CommonArgs& args) {
  const ExperimentConfig cfg = load(args);
  const BoundCurve curve = scaled_route_bound(cfg);
  write_bound_csv(out_path(cfg, "_bound.csv"), curve);
  write_json_file(out_path(cfg, "_bound.json"), bound_to_json(curve));
  std::cout << "bound: " << curve.label << ", " << curve.t_grid.size()
            << " grid points -> " << out_path(cfg, "_bound.csv").string() << "\n";
  return 0;
}

json sim_summary(const ExperimentConfig& cfg, const std::vector<double>& samples) {
  double mean_acc = 0.0;
  for (double x : samples) mean_acc += x;
  const double mean = mean_acc / static_cast<double>(samples.size());
  double var_acc = 0.0;
  json moments = json::object();
  for (int p : {1, 2, 4, 8}) {
    double acc = 0.0;
    for (double x : samples) acc += std::pow(std::abs(x), p);
    moments[std::to_string(p)] = acc / static_cast<double>(samples.size());
  }
  for (double x : samples) var_acc += (x - mean) * (x - mean);
  return {{"reps", cfg.sim->reps},
          {"seed", cfg.sim->seed},
          {"maximal", cfg.sim->maximal},
          {"mean", mean},
          {"variance", var_acc / static_cast<double>(samples.size())},
          {"abs_moments", moments}};
}

int cmd_simulate(const CommonArgs& args) {
  const ExperimentConfig cfg = load(args);
  require_sim(cfg, false);
  const SimulationRun run{cfg.problem, cfg.sim->reps, cfg.sim->seed,
                          cfg.sim->maximal};
  const std::vector<double> samples = simulate_sn(run, resolve_threads(args));
  const TailEstimate est =
      empirical_tail(samples, build_t_grid(cfg.t_grid), cfg.sim->delta);
  write_tail_csv(out_path(cfg, "_tail.csv"), est);
  write_json_file(out_path(cfg, "_sim.json"), sim_summary(cfg, samples));
  std::cout << "simulate: " << cfg.sim->reps << " reps -> "
            << out_path(cfg, "_tail.csv").string() << "\n";
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  const ExperimentConfig cfg = load(args);
  require_sim(cfg, true);
  const BoundCurve curve = scaled_route_bound(cfg);
  const SimulationRun run{cfg.problem, cfg.sim->reps, cfg.sim->seed,
                          cfg.sim->maximal};
  const std::vector<double> samples = simulate_sn(run, resolve_threads(args));
  TailEstimate est = empirical_tail(samples, curve.t_grid, cfg.sim->delta);
  const TailReport report = verify_bound(std::move(est), curve);
  write_report_csv(out_path(cfg, "_report.csv"), report);
  write_json_file(out_path(cfg, "_report.json"),
                  report_to_json(report, cfg.sim->seed));
  if (report.pass()) {
    std::cout << "verify: pass (" << curve.label << ")\n";
    return 0;
  }
  std::cout << "verify: FAIL at " << report.violations.size()
            << " grid points, max violation "
            << format_sig9(report.max_violation) << "\n";
  return 1;
}

int cmd_exponent(const CommonArgs& args) {
  const ExperimentConfig cfg = load(args);
  require_sim(cfg, true);
  if (!cfg.exponent) throw validation_error("exponent: block required");
  for (std::size_t i = 0; i < cfg.problem.members.size(); ++i) {
    const auto* w = std::get_if<WeibullSym>(&cfg.problem.members[i].law);
    if (w == nullptr || w->m != cfg.exponent->m) {
      throw validation_error("exponent.m: member " + std::to_string(i + 1) +
                             " is not weibull_sym with the declared m");
    }
  }
  const SimulationRun run{cfg.problem, cfg.sim->reps, cfg.sim->seed,
                          cfg.sim->maximal};
  const std::vector<double> samples = simulate_sn(run, resolve_threads(args));

  // Regression table on the fit window, written before the fit so a refusal
  // still leaves the empirical evidence on disk.
  {
    std::vector<double> grid(static_cast<std::size_t>(cfg.exponent->grid_points));
    const double llo = std::log(cfg.exponent->t_lo);
    const double lhi = std::log(cfg.exponent->t_hi);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                   static_cast<double>(grid.size() - 1));
    }
    write_tail_csv(out_path(cfg, "_exponent.csv"),
                   empirical_tail(samples, std::move(grid), cfg.sim->delta));
  }

  const ExponentFit fit = estimate_tail_exponent(
      samples, cfg.exponent->t_lo, cfg.exponent->t_hi, cfg.exponent->grid_points);
  const double predicted = lower_exponent(cfg.exponent->m);
  const bool ok = std::abs(fit.slope - predicted) <= cfg.exponent->tol;
  write_json_file(out_path(cfg, "_exponent.json"),
                  {{"estimate", fit.slope},
                   {"std_error", fit.std_error},
                   {"predicted", predicted},
                   {"tol", cfg.exponent->tol},
                   {"used_points", fit.used_points},
                   {"t_lo", fit.t_lo},
                   {"t_hi", fit.t_hi},
                   {"pass", ok}});
  std::cout << "exponent: estimate " << format_sig9(fit.slope) << " (se "
            << format_sig9(fit.std_error) << "), predicted "
            << format_sig9(predicted) << " -> " << (ok ? "pass" : "FAIL")
            << "\n";
  return ok ? 0 : 1;
}

int cmd_report(const CommonArgs& args) {
  const ExperimentConfig cfg = load(args);
  bool found = false;
  const auto report_path = out_path(cfg, "_report.json");
  if (std::filesystem::exists(report_path)) {
    const TailReport report = report_from_json(read_json_file(report_path));
    std::cout << "verification: " << (report.pass() ? "pass" : "fail")
              << ", reps " << report.estimate.reps << ", band "
              << format_sig9(report.estimate.band_halfwidth)
              << ", max violation " << format_sig9(report.max_violation) << "\n";
    found = true;
  }
  const auto exp_path = out_path(cfg, "_exponent.json");
  if (std::filesystem::exists(exp_path)) {
    const json j = read_json_file(exp_path);
    std::cout << "exponent: estimate " << format_sig9(j.at("estimate"))
              << " vs predicted " << format_sig9(j.at("predicted")) << " ("
              << (j.at("pass").get<bool>() ? "pass" : "fail") << ")\n";
    found = true;
  }
  const auto bound_path = out_path(cfg, "_bound.json");
  if (std::filesystem::exists(bound_path)) {
    const BoundCurve curve = bound_from_json(read_json_file(bound_path));
    std::cout << "bound: " << curve.label << " on ["
              << format_sig9(curve.t_grid.front()) << ", "
              << format_sig9(curve.t_grid.back()) << "], "
              << curve.t_grid.size() << " points\n";
    found = true;
  }
  if (!found) {
    throw validation_error("report: no report files found under " +
                           cfg.out.dir + "/" + cfg.out.prefix + "_*");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail bounds for normalized sums of independent centered "
               "random variables, with Monte Carlo verification"};
  app.require_subcommand(1);

  CommonArgs args;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("--out", args.out_dir, "output directory override");
    sub->add_option("--seed", args.seed, "seed override");
    sub->add_option("--threads", args.threads,
                    "worker threads (must not change results)");
  };

  CLI::App* bound = app.add_subcommand("bound", "compute a bound curve");
  CLI::App* simulate = app.add_subcommand("simulate", "simulate S_n tails");
  CLI::App* verify =
      app.add_subcommand("verify", "simulate and check the bound curve");
  CLI::App* exponent =
      app.add_subcommand("exponent", "estimate the tail exponent");
  CLI::App* report = app.add_subcommand("report", "summarize emitted reports");
  for (CLI::App* sub : {bound, simulate, verify, exponent, report}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
    if (bound->parsed()) return cmd_bound(args);
    if (simulate->parsed()) return cmd_simulate(args);
    if (verify->parsed()) return cmd_verify(args);
    if (exponent->parsed()) return cmd_exponent(args);
    if (report->parsed()) return cmd_report(args);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const estimation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
