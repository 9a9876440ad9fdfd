#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "emt/catalog.hpp"
#include "emt/driver.hpp"

namespace py = pybind11;
using namespace emt;

namespace {

ChartPoint to_point(const std::vector<double>& v) {
  ChartPoint x(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = v[i];
  return x;
}

py::dict profile_dict(const RadialProfile& p) {
  py::dict d;
  d["R"] = p.radii;
  d["raw_energy"] = p.raw_energy;
  d["theta"] = p.theta;
  d["boundary_term"] = p.boundary_term;
  d["bulk_term"] = p.bulk_term;
  d["identity_lhs"] = p.identity_lhs;
  d["identity_rhs"] = p.identity_rhs;
  d["residual"] = p.residual;
  if (!p.combined.empty()) d["combined"] = p.combined;
  d["violations"] = p.violations;
  d["inconclusive_radii"] = p.inconclusive_radii;
  return d;
}

}  // namespace

PYBIND11_MODULE(_emtensor, m) {
  m.doc() = "Energy-momentum tensors of bundle-valued forms on model spaces";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<ModelSpace>(m, "ModelSpace")
      .def_static("euclidean", &ModelSpace::euclidean, py::arg("dim"))
      .def_static("hyperbolic", &ModelSpace::hyperbolic, py::arg("dim"), py::arg("kappa") = 1.0)
      .def_property_readonly("dim", &ModelSpace::dim)
      .def_property_readonly("kappa", &ModelSpace::kappa)
      .def_property_readonly("is_hyperbolic", &ModelSpace::is_hyperbolic)
      .def("ball_volume", &ModelSpace::ball_volume, py::arg("radius"))
      .def("sphere_area", &ModelSpace::sphere_area, py::arg("radius"))
      .def(
          "distance",
          [](const ModelSpace& s, const std::vector<double>& a, const std::vector<double>& b) {
            return distance_jet(s, to_point(a), to_point(b)).value;
          },
          py::arg("x0"), py::arg("x"))
      .def("__repr__", [](const ModelSpace& s) { return "<ModelSpace " + s.describe() + ">"; });

  m.def(
      "geometry_bounds",
      [](const ModelSpace& s, double R, int k, double p) {
        const GeometryBounds b = geometry_bounds(s, R, k, p, s.dim());
        py::dict d;
        d["lambda_lower"] = b.lambda_lower;
        d["lambda_upper"] = b.lambda_upper;
        d["Lambda"] = b.Lambda;
        return d;
      },
      py::arg("space"), py::arg("radius"), py::arg("k"), py::arg("p"));

  m.def("examples", [] {
    std::vector<std::string> names;
    for (const ExampleField& f : catalog()) names.push_back(f.name);
    return names;
  });

  m.def(
      "example_info",
      [](const std::string& name) {
        const ExampleField& f = find_example(name);
        py::dict d;
        d["name"] = f.name;
        d["description"] = f.description;
        d["space"] = f.space.describe();
        d["k"] = f.cfg.k;
        d["p"] = f.cfg.p;
        d["tags"] = f.tag_names();
        d["center"] = std::vector<double>(f.center.data(), f.center.data() + f.center.size());
        d["radius_range"] = std::make_pair(f.radius_min, f.radius_max);
        return d;
      },
      py::arg("name"));

  m.def(
      "check_tags",
      [](const std::string& name, int points) {
        const TagCheck t = check_tags(find_example(name), points);
        py::dict d;
        d["closed"] = t.closed;
        d["coclosed"] = t.coclosed;
        d["ymh_gauge"] = t.ymh_gauge;
        d["ymh_higgs"] = t.ymh_higgs;
        return d;
      },
      py::arg("name"), py::arg("points") = 100);

  m.def(
      "theta_profile",
      [](const std::string& name, const std::vector<double>& radii, double Lambda, int radial, int angular,
         bool identity) {
        const ExampleField& f = find_example(name);
        if (!f.psi) throw UsageError("'" + name + "' has no form field");
        QuadratureSpec q;
        q.radial_nodes = radial;
        q.angular = angular;
        RadialProfile p;
        {
          py::gil_scoped_release release;
          p = theta_profile(f.cfg, f.space, f.conn, *f.psi, f.center, radii, Lambda, q, identity);
        }
        return profile_dict(p);
      },
      py::arg("example"), py::arg("radii"), py::arg("Lambda") = 0.0, py::arg("radial_nodes") = 16,
      py::arg("angular_nodes") = 8, py::arg("identity") = false);

  m.def(
      "run_json",
      [](const std::string& config) {
        const RunConfig rc = parse_config_json(config);
        validate(rc);
        Report r;
        {
          py::gil_scoped_release release;
          r = run(rc);
        }
        return report_json(r, rc.timing);
      },
      py::arg("config"), "Runs a suite from a JSON configuration and returns the JSON report.");
}
