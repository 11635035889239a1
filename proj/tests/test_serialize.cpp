#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "tailbound/errors.hpp"
#include "tailbound/serialize.hpp"

using namespace tailbound;

TEST_CASE("rv specs round-trip through json") {
  const std::vector<RVSpec> specs = {
      make_rademacher("eps"),
      make_gaussian(2.5, "g"),
      make_uniform(3.0),
      make_two_point_sharp(10.0, 2.0),
      make_weibull_sym(1.5),
      make_bounded({-2.0, 1.0}, {1.0 / 3.0, 2.0 / 3.0}, "b"),
  };
  for (const RVSpec& spec : specs) {
    const RVSpec back = rv_from_json(rv_to_json(spec));
    CHECK(back.label == spec.label);
    CHECK(back.law.index() == spec.law.index());
    if (is_sum_admissible(spec)) {
      CHECK(variance(back) == doctest::Approx(variance(spec)).epsilon(1e-15));
    }
    for (double p : {1.0, 2.0, 3.5}) {
      CHECK(log_abs_moment(back, p) ==
            doctest::Approx(log_abs_moment(spec, p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("space descriptors parse from the documented schema") {
  const SpaceDescriptor lp = space_from_json(json::parse(R"({"space":"lp","p":4})"));
  CHECK(std::get<LpSpace>(lp.space).p == 4.0);

  const SpaceDescriptor gls = space_from_json(
      json::parse(R"({"space":"gls","psi":{"name":"power","exponent":0.5,"b":null}})"));
  CHECK(std::get<GlsSpace>(gls.space).psi.eval(4.0) ==
        doctest::Approx(2.0).epsilon(1e-12));

  const SpaceDescriptor bphi = space_from_json(
      json::parse(R"({"space":"bphi","phi":{"name":"quadratic","lambda0":null}})"));
  CHECK(std::get<BphiSpace>(bphi.space).phi(2.0) == 2.0);

  CHECK_THROWS_AS(space_from_json(json::parse(R"({"space":"orlicz"})")),
                  validation_error);
  CHECK_THROWS_AS(space_from_json(json::parse(R"({"space":"lp","p":0.5})")),
                  validation_error);
}

TEST_CASE("generating and young functions parse by name") {
  CHECK(psi_from_json(json::parse(R"({"name":"const","value":2.0})")).eval(7.0) ==
        2.0);
  CHECK(psi_from_json(json::parse(R"({"name":"extremal","r":3})")).extremal_r ==
        3.0);
  const GeneratingFunction margin =
      psi_from_json(json::parse(R"({"name":"margin","b":8.0,"beta":0.5})"));
  CHECK(margin.eval(4.0) == doctest::Approx(0.5).epsilon(1e-12));
  const GeneratingFunction table = psi_from_json(
      json::parse(R"({"name":"table","p":[2.0,4.0,8.0],"log_psi":[0.0,0.5,1.0]})"));
  CHECK(table.eval(4.0) == doctest::Approx(std::exp(0.5)).epsilon(1e-12));

  const YoungFunction ml =
      phi_from_json(json::parse(R"({"name":"m_L","m":3.0,"L":{"name":"one"}})"));
  CHECK(ml(2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(phi_from_json(json::parse(R"({"name":"cubic"})")),
                  validation_error);
}

TEST_CASE("bound curves and reports round-trip through json") {
  BoundCurve curve = make_bound_curve({0.0, 1.0, 2.0}, {1.4, 0.5, 0.1},
                                      Provenance::Upper, "demo");
  const BoundCurve back = bound_from_json(bound_to_json(curve));
  CHECK(back.t_grid == curve.t_grid);
  CHECK(back.values == curve.values);
  CHECK(back.provenance == curve.provenance);
  CHECK(back.label == curve.label);

  TailEstimate est;
  est.t_grid = curve.t_grid;
  est.empirical = {1.0, 0.4, 0.2};
  est.band_halfwidth = 0.01;
  est.reps = 12345;
  est.delta = 0.05;
  const TailReport report = verify_bound(est, curve);
  CHECK(!report.pass());  // 0.2 - 0.01 > 0.1 at t = 2
  const TailReport back_report = report_from_json(report_to_json(report, 7));
  CHECK(back_report.violations == report.violations);
  CHECK(back_report.max_violation ==
        doctest::Approx(report.max_violation).epsilon(1e-15));
  CHECK(back_report.estimate.empirical == report.estimate.empirical);
  CHECK(back_report.bound.values == report.bound.values);
  CHECK(back_report.pass() == report.pass());
}

TEST_CASE("experiment configs parse and validate") {
  const json cfg_json = json::parse(R"({
    "problem": {"members": [{"kind":"rademacher","params":{},"label":"eps"}], "n": 100},
    "route": "b2",
    "space_x": {"space":"bphi","phi":{"name":"quadratic","lambda0":null}},
    "t_grid": {"min":0.0,"max":4.0,"points":81},
    "sim": {"reps":1000000,"seed":42,"maximal":false,"delta":0.01},
    "out": {"dir":"scratch","prefix":"demo"}
  })");
  const ExperimentConfig cfg = config_from_json(cfg_json);
  CHECK(cfg.problem.n == 100);
  CHECK(cfg.route.route == Route::B2);
  CHECK(cfg.sim.has_value());
  CHECK(cfg.sim->reps == 1'000'000);
  CHECK(cfg.out.prefix == "demo");
  CHECK(build_t_grid(cfg.t_grid).size() == 81);

  json bad = cfg_json;
  bad["route"] = "b3";
  CHECK_THROWS_AS(config_from_json(bad), validation_error);

  json no_members = cfg_json;
  no_members.erase("problem");
  CHECK_THROWS_AS(config_from_json(no_members), validation_error);

  json zero_reps = cfg_json;
  zero_reps["sim"]["reps"] = 0;
  CHECK_THROWS_AS(config_from_json(zero_reps), validation_error);

  json bad_scale = cfg_json;
  bad_scale["bound_scale"] = -0.5;
  CHECK_THROWS_AS(config_from_json(bad_scale), validation_error);
}

TEST_CASE("t grids") {
  TGridSpec spec;
  spec.min = 1.0;
  spec.max = 3.0;
  spec.points = 5;
  CHECK(build_t_grid(spec) == std::vector<double>{1.0, 1.5, 2.0, 2.5, 3.0});
  spec.explicit_grid = {0.5, 0.75};
  CHECK(build_t_grid(spec) == std::vector<double>{0.5, 0.75});
  TGridSpec bad;
  bad.min = 2.0;
  bad.max = 1.0;
  CHECK_THROWS_AS(build_t_grid(bad), validation_error);
}

TEST_CASE("nine significant digits formatting") {
  CHECK(format_sig9(2.0) == "2");
  CHECK(format_sig9(0.011108996538242306) == "0.0111089965");
  CHECK(format_sig9(1.2694728378805637) == "1.26947284");
}

TEST_CASE("csv writers emit the documented columns") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "tailbound_serialize_test";
  fs::create_directories(dir);

  const BoundCurve curve = make_bound_curve({0.0, 1.0}, {2.0, 0.5},
                                            Provenance::Upper, "demo");
  write_bound_csv(dir / "bound.csv", curve);
  std::ifstream in(dir / "bound.csv");
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(header == "t,value,clipped,provenance");
  CHECK(row0 == "0,2,1,upper");
  CHECK(row1 == "1,0.5,0.5,upper");
  fs::remove_all(dir);
}
