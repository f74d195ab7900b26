#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "psn/errors.hpp"
#include "psn/norm_estimator.hpp"
#include "psn/sharp_bounds.hpp"

namespace py = pybind11;
using namespace psn;

namespace {

ClassSpec make_spec(const std::string& family, double param, const std::string& variant) {
  return ClassSpec(parse_family(family), param, parse_variant(variant));
}

py::dict bound_dict(const BoundReport& r) {
  py::dict d;
  d["family"] = std::string(to_string(r.spec.family()));
  d["param"] = r.spec.parameter();
  d["variant"] = std::string(to_string(r.spec.variant()));
  d["alpha"] = r.alpha;
  d["bound"] = r.bound;
  d["residual"] = r.residual;
  d["sign_changes"] = r.sign_changes;
  return d;
}

py::dict estimate_dict(const NormEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["argmax"] = e.argmax.value();
  d["boundary_limited"] = e.boundary_limited;
  d["on_axis"] = on_positive_real_axis(e);
  d["coarse_value"] = e.coarse_value;
  return d;
}

EstimatorOptions options(std::pair<int, int> grid, int refine) {
  EstimatorOptions o;
  o.radial = grid.first;
  o.angular = grid.second;
  o.refine = refine;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sharp pre-Schwarzian norm bounds and their numerical verification";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DomainViolation& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  m.def("alpha_root",
        [](const std::string& family, double param, const std::string& variant) {
          return bound_dict(alpha_root(make_spec(family, param, variant)));
        },
        py::arg("family"), py::arg("param"), py::arg("variant") = "starlike");

  m.def("norm_bound",
        [](const std::string& family, double param, const std::string& variant) {
          return bound_dict(norm_bound(make_spec(family, param, variant)));
        },
        py::arg("family"), py::arg("param"), py::arg("variant") = "starlike");

  m.def("estimate_extremal",
        [](const std::string& family, double param, const std::string& variant,
           std::pair<int, int> grid, int refine) {
          const auto f = extremal(make_spec(family, param, variant));
          py::gil_scoped_release release;
          const auto e = estimate_norm(f, options(grid, refine));
          py::gil_scoped_acquire acquire;
          return estimate_dict(e);
        },
        py::arg("family"), py::arg("param"), py::arg("variant") = "starlike",
        py::arg("grid") = std::pair<int, int>{256, 512}, py::arg("refine") = 3);

  m.def("estimate_koebe",
        [](std::pair<int, int> grid, int refine) {
          return estimate_dict(estimate_norm(AnalyticFunction::koebe(), options(grid, refine)));
        },
        py::arg("grid") = std::pair<int, int>{256, 512}, py::arg("refine") = 3);

  m.def("radial_profile",
        [](const std::string& family, double param, const std::string& variant, int n) {
          std::vector<std::pair<double, double>> out;
          for (const auto& s : radial_profile(extremal(make_spec(family, param, variant)), n)) {
            out.emplace_back(s.r, s.value);
          }
          return out;
        },
        py::arg("family"), py::arg("param"), py::arg("variant") = "starlike", py::arg("n") = 64);

  m.def("aux_eval",
        [](const std::string& id, const std::string& family, double param, double x,
           std::optional<double> s) {
          const auto spec = make_spec(family, param, "starlike");
          const AuxId aux = parse_aux_id(id);
          return s ? aux_eval(aux, spec, x, *s) : aux_eval(aux, spec, x);
        },
        py::arg("id"), py::arg("family"), py::arg("param"), py::arg("x"), py::arg("s") = py::none());

  m.def("aux_catalog", [] {
    std::vector<std::string> out;
    for (AuxId id : aux_catalog()) out.emplace_back(to_string(id));
    return out;
  });

  m.def("certify",
        [](const std::string& family, double param, const std::string& variant, int grid) {
          const auto r = certify(make_spec(family, param, variant), grid);
          py::list certs;
          for (const auto& c : r.certificates) {
            py::dict d;
            d["id"] = std::string(to_string(c.id));
            d["claim"] = std::string(to_string(c.claim));
            d["passed"] = c.passed;
            d["worst_margin"] = c.worst_margin;
            certs.append(d);
          }
          py::dict out;
          out["passed"] = r.passed();
          out["certificates"] = certs;
          return out;
        },
        py::arg("family"), py::arg("param"), py::arg("variant") = "starlike",
        py::arg("grid") = kSignScanPoints);

  m.def("verify",
        [](const std::string& family, double param, const std::string& variant, int samples,
           std::uint64_t seed, std::pair<int, int> grid, int refine) {
          const auto spec = make_spec(family, param, variant);
          VerifyReport r = [&] {
            py::gil_scoped_release release;
            return verify_spec(spec, samples, seed, options(grid, refine));
          }();
          py::dict out;
          out["bound"] = r.bound.bound;
          out["sharpness"] = estimate_dict(r.sharpness);
          out["sharpness_passed"] = r.sharpness_passed;
          py::list margins;
          for (const auto& mm : r.members) margins.append(mm.margin);
          out["margins"] = margins;
          out["passed"] = r.passed();
          return out;
        },
        py::arg("family"), py::arg("param"), py::arg("variant") = "starlike",
        py::arg("samples") = 10, py::arg("seed") = 42,
        py::arg("grid") = std::pair<int, int>{256, 512}, py::arg("refine") = 3);
}
