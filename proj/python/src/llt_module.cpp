#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "llt/cli.hpp"
#include "llt/integrator.hpp"
#include "llt/racks.hpp"
#include "llt/triples.hpp"

namespace py = pybind11;
using namespace llt;

namespace {

py::dict report_dict(const ValidityReport& r) {
  py::dict d;
  d["passed"] = r.passed;
  d["max_residual"] = r.max_residual;
  d["residuals"] = r.residuals;
  d["violation_count"] = r.violation_count;
  py::list violations;
  for (const auto& v : r.violations) {
    py::dict item;
    item["law"] = v.law;
    item["index"] = v.index;
    item["residual"] = v.residual;
    violations.append(item);
  }
  d["violations"] = violations;
  d["flags"] = r.flags;
  return d;
}

LocalRackModel make_model(const TripleComponents& c, double step, const std::string& scheme,
                          std::optional<double> radius) {
  ModelOptions options;
  options.faithful_rep = c.faithful_rep;
  options.diff = DiffConfig{step, diff_scheme_from_string(scheme)};
  options.radius = radius;
  return build_model(c.build(), options);
}

py::dict integrate(const TripleComponents& c, int samples, std::uint64_t seed, double step,
                   const std::string& scheme, std::optional<double> radius) {
  const auto model = make_model(c, step, scheme, radius);
  SuiteOptions options;
  options.sampling.samples = samples;
  options.sampling.seed = seed;
  const auto rep = run_integration_suite(model, options);
  py::dict d;
  d["max_roundtrip_residual"] = rep.roundtrip.max();
  d["roundtrip"] = py::dict(py::arg("theta") = rep.roundtrip.theta,
                            py::arg("action") = rep.roundtrip.action,
                            py::arg("bracket") = rep.roundtrip.bracket);
  d["laws"] = report_dict(rep.laws);
  d["sample_counts"] = rep.sample_counts;
  d["strict"] = rep.strict;
  d["h_dim"] = rep.h_dim;
  d["recovered_theta"] = rep.recovered.theta;
  d["recovered_action"] = rep.recovered.action;
  d["recovered_bracket"] = rep.recovered.bracket;
  d["a_theta_recovered"] = rep.a_theta_recovered;
  d["a_theta_expected"] = rep.a_theta_expected;
  return d;
}

}  // namespace

PYBIND11_MODULE(_llt, m) {
  m.doc() = "Lie-Leibniz triples, racks and local integration";

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ConstraintError>(m, "ConstraintError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ChartError>(m, "ChartError", PyExc_ValueError);

  py::class_<TripleComponents>(m, "TripleComponents")
      .def_readonly("name", &TripleComponents::name)
      .def_property_readonly("dim_g", [](const TripleComponents& c) { return c.algebra.dim(); })
      .def_property_readonly("dim_v", [](const TripleComponents& c) { return c.action.dim_v(); })
      .def_property_readonly("structure_constants",
                             [](const TripleComponents& c) { return c.algebra.constants(); })
      .def_property_readonly("action_matrices",
                             [](const TripleComponents& c) { return c.action.matrices(); })
      .def_readonly("theta", &TripleComponents::theta)
      .def_readonly("faithful_rep", &TripleComponents::faithful_rep)
      .def("build", &TripleComponents::build, py::arg("tol") = kDefaultTolerance)
      .def("__repr__", [](const TripleComponents& c) { return "<TripleComponents " + c.name + ">"; });

  m.def("triple_components",
        [](int dim_g, const std::vector<double>& constants, const std::vector<Mat>& action,
           const Mat& theta, const std::vector<Mat>& faithful_rep) {
          LieAlgebraData alg(dim_g, {}, constants);
          ModuleAction act(alg, static_cast<int>(theta.cols()), action);
          return TripleComponents{"python", alg, act, theta, faithful_rep};
        },
        py::arg("dim_g"), py::arg("structure_constants"), py::arg("action_matrices"),
        py::arg("theta"), py::arg("faithful_rep") = std::vector<Mat>{},
        "Raw triple data; structure_constants is the flat (i * n + j) * n + k tensor.");

  py::class_<LieLeibnizTriple>(m, "LieLeibnizTriple")
      .def_property_readonly("dim_g", &LieLeibnizTriple::dim_g)
      .def_property_readonly("dim_v", &LieLeibnizTriple::dim_v)
      .def_property_readonly("theta", &LieLeibnizTriple::theta)
      .def_property_readonly("bracket",
                             [](const LieLeibnizTriple& t) { return t.bracket().tensor(); });

  m.def("sl2_adjoint", &sl2_adjoint_components);
  m.def("scaling_family", &scaling_family_components, py::arg("lam"));
  m.def("heisenberg_ideal", &heisenberg_ideal_components);
  m.def("random_triple",
        [](std::uint64_t seed, const std::string& family, double epsilon) {
          TripleFamily f = TripleFamily::strict_from_ideal;
          if (family == "scaling_family") f = TripleFamily::scaling_family;
          else if (family == "perturbed_invalid") f = TripleFamily::perturbed_invalid;
          else if (family != "strict_from_ideal") throw StructuralError("unknown family " + family);
          RandomTripleParams params;
          params.epsilon = epsilon;
          return random_triple(seed, f, params);
        },
        py::arg("seed"), py::arg("family") = "strict_from_ideal", py::arg("epsilon") = 0.1);

  m.def("evaluate_triple",
        [](const TripleComponents& c, double tol) {
          return report_dict(evaluate_triple(c.algebra, c.action, c.theta, tol));
        },
        py::arg("components"), py::arg("tol") = kDefaultTolerance);
  m.def("is_strict", py::overload_cast<const LieLeibnizTriple&, double>(&is_strict),
        py::arg("triple"), py::arg("tol") = kDefaultTolerance);
  m.def("a_theta", &a_theta, py::arg("triple"), py::arg("a"));
  m.def("max_strictness_subalgebra",
        [](const LieLeibnizTriple& t, double tol) {
          return max_strictness_subalgebra(t, tol).matrix();
        },
        py::arg("triple"), py::arg("tol") = kDefaultTolerance,
        "Orthonormal basis of h_max as matrix columns.");

  m.def("integrate", &integrate, py::arg("components"), py::arg("samples") = 200,
        py::arg("seed") = 0, py::arg("step") = 1e-4, py::arg("scheme") = "central",
        py::arg("radius") = std::nullopt);
  m.def("recover_a_theta",
        [](const TripleComponents& c, const Vec& a, const Vec& v) {
          return recover_a_theta(make_model(c, 1e-4, "central", std::nullopt), a, v);
        },
        py::arg("components"), py::arg("a"), py::arg("v"));

  m.def("group_names", [] {
    std::vector<std::string> out;
    for (const auto& g : group_catalog()) out.push_back(g.name());
    return out;
  });
  m.def("check_conjugation_rack",
        [](const std::string& group) {
          return report_dict(check_rack(conjugation_rack(group_by_name(group))));
        },
        py::arg("group"));
  m.def("check_relaxed_s3_a3", [] {
    const auto out = augmented_rack_from_crossed_module(relaxed_s3_a3_crossed_module());
    return report_dict(out.report);
  });

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the llt command line in-process: (exit code, stdout, stderr).");
}
