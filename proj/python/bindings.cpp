// Python bindings for the core operations. Descriptors (random variables,
// spaces, generating/young functions, sum problems) cross the boundary as
// JSON strings in the same schema the CLI configs use; the tailbound python
// package wraps this with dict-based helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tailbound/conjugate.hpp"
#include "tailbound/errors.hpp"
#include "tailbound/harness.hpp"
#include "tailbound/serialize.hpp"

namespace py = pybind11;
using namespace tailbound;

namespace {

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw validation_error(std::string(what) + ": malformed JSON: " + e.what());
  }
}

RVSpec rv(const std::string& text) { return rv_from_json(parse(text, "rv")); }

SpaceDescriptor space(const std::string& text) {
  return space_from_json(parse(text, "space"));
}

SumProblem problem(const std::string& text) {
  const json j = parse(text, "problem");
  std::vector<RVSpec> members;
  for (const json& m : j.at("members")) members.push_back(rv_from_json(m));
  return make_sum_problem(std::move(members), j.value("n", 1u));
}

}  // namespace

PYBIND11_MODULE(_tailbound, m) {
  m.doc() = "tail bounds for normalized sums of independent centered random "
            "variables";

  py::register_exception<validation_error>(m, "ValidationError",
                                           PyExc_ValueError);
  py::register_exception<estimation_error>(m, "EstimationError",
                                           PyExc_RuntimeError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

  // random-variable catalog
  m.def("sample", [](const std::string& spec, std::size_t count,
                     std::uint64_t seed) { return sample(rv(spec), count, seed); },
        py::arg("rv"), py::arg("count"), py::arg("seed"));
  m.def("abs_moment",
        [](const std::string& spec, double p) { return abs_moment(rv(spec), p); });
  m.def("variance", [](const std::string& spec) { return variance(rv(spec)); });
  m.def("mgf",
        [](const std::string& spec, double lam) { return mgf(rv(spec), lam); });
  m.def("tail",
        [](const std::string& spec, double t) { return tail(rv(spec), t); });
  m.def("check_bernstein_condition",
        [](const std::vector<std::string>& specs, double nu, double kappa_c,
           int m_max) {
          std::vector<RVSpec> parsed;
          for (const auto& s : specs) parsed.push_back(rv(s));
          const BernsteinCheck c =
              check_bernstein_condition(parsed, nu, kappa_c, m_max);
          return py::make_tuple(c.ok, c.member_index, c.moment_order);
        });

  // conjugation
  m.def("nu_transform", [](const std::string& phi, double x) {
    return nu_transform(phi_from_json(parse(phi, "phi")), x);
  });
  m.def("h_star", [](const std::string& psi, double y) {
    return h_star(psi_from_json(parse(psi, "psi")), y);
  });
  m.def("g_ml_asymptotic",
        [](double m_param, double t) { return g_ml_asymptotic(m_param, t); });

  // norms and tail characteristics
  m.def("lp_norm",
        [](const std::string& spec, double p) { return lp_norm(rv(spec), p); });
  m.def("space_norm", [](const std::string& spec, const std::string& sp) {
    return space_norm(rv(spec), space(sp));
  });
  m.def("tail_characteristic", [](const std::string& sp, double t) {
    return tail_characteristic(space(sp), t);
  });
  m.def("lp_sharpness_witness", [](double p, double t) {
    const SharpnessResult r = lp_sharpness_witness(p, t);
    return py::make_tuple(r.norm, r.tail_at_t);
  });
  m.def("rosenthal_constant", &rosenthal_constant);
  m.def("is_phi_conv", [](const std::string& phi) {
    return is_phi_conv(phi_from_json(parse(phi, "phi")));
  });

  // bounds
  m.def("classical_bernstein", &classical_bernstein);
  m.def("kappa_relative",
        [](const std::string& prob, const std::string& sp) {
          const KappaRelative k = kappa_relative(problem(prob), space(sp));
          return py::make_tuple(k.value, k.infinite_member);
        });
  m.def("modified_tail_bound",
        [](const std::string& prob, const std::string& x, const std::string& y,
           double u_const, std::vector<double> t_grid) {
          const BoundCurve curve = modified_tail_bound(
              problem(prob), space(x), space(y), u_const, std::move(t_grid));
          py::dict out;
          out["t"] = curve.t_grid;
          out["value"] = curve.values;
          out["provenance"] =
              curve.provenance == Provenance::Exact ? "exact" : "upper";
          return out;
        });
  m.def("subgaussian_sum_norm", [](const std::vector<double>& norms) {
    return subgaussian_sum_norm(norms);
  });
  m.def("psi_envelope",
        [](const std::string& prob, const std::vector<double>& p_grid) {
          const PsiEnvelopePair env = psi_envelope(problem(prob), p_grid);
          py::dict out;
          std::vector<double> psi_vals, tilde_vals;
          for (double p : p_grid) psi_vals.push_back(env.psi.eval(p));
          out["p"] = p_grid;
          out["psi"] = psi_vals;
          std::vector<double> tilde_p;
          for (double p : p_grid) {
            if (p < 2.0) continue;
            tilde_p.push_back(p);
            tilde_vals.push_back(env.psi_tilde.eval(p));
          }
          out["p_tilde"] = tilde_p;
          out["psi_tilde"] = tilde_vals;
          return out;
        });
  m.def("lower_exponent", &lower_exponent);

  // harness
  m.def("simulate_sn",
        [](const std::string& prob, std::size_t reps, std::uint64_t seed,
           bool maximal, int threads) {
          return simulate_sn({problem(prob), reps, seed, maximal}, threads);
        },
        py::arg("problem"), py::arg("reps"), py::arg("seed"),
        py::arg("maximal") = false, py::arg("threads") = 1);
  m.def("empirical_tail",
        [](const std::vector<double>& samples, std::vector<double> t_grid,
           double delta) {
          const TailEstimate est =
              empirical_tail(samples, std::move(t_grid), delta);
          py::dict out;
          out["t"] = est.t_grid;
          out["empirical"] = est.empirical;
          out["band"] = est.band_halfwidth;
          return out;
        });
  m.def("estimate_tail_exponent",
        [](const std::vector<double>& samples, double t_lo, double t_hi,
           int grid_points) {
          const ExponentFit fit =
              estimate_tail_exponent(samples, t_lo, t_hi, grid_points);
          py::dict out;
          out["slope"] = fit.slope;
          out["std_error"] = fit.std_error;
          out["used_points"] = fit.used_points;
          return out;
        },
        py::arg("samples"), py::arg("t_lo"), py::arg("t_hi"),
        py::arg("grid_points") = 25);
}
