#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "tadic/compatible_map.hpp"
#include "tadic/ergodicity.hpp"
#include "tadic/error.hpp"
#include "tadic/lipschitz.hpp"
#include "tadic/monomial.hpp"
#include "tadic/report.hpp"
#include "tadic/sphere.hpp"
#include "tadic/vanderput.hpp"

namespace py = pybind11;
using namespace tadic;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ergodicity checks for 1-Lipschitz maps of the 2-adic integers";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<Truncated2Adic>(m, "Truncated2Adic")
      .def(py::init<std::uint64_t, unsigned>(), py::arg("residue"), py::arg("precision"))
      .def_property_readonly("residue", &Truncated2Adic::residue)
      .def_property_readonly("precision", &Truncated2Adic::precision)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__repr__", [](const Truncated2Adic& x) {
        return "Truncated2Adic(" + std::to_string(x.residue()) + ", " +
               std::to_string(x.precision()) + ")";
      });
  m.def("t2_pow", [](Truncated2Adic x, std::uint64_t e) { return pow(x, e); });
  m.def("val2", [](Truncated2Adic x) {
    const Valuation v = val2(x);
    return py::make_tuple(v.exact() ? "Exact" : "AtLeast", v.value);
  });
  m.def("inv_odd", &inv_odd);
  m.def("reduce", &reduce);

  py::class_<CompatibleMap>(m, "CompatibleMap")
      .def("__call__", &CompatibleMap::eval, py::arg("x"), py::arg("k"))
      .def_property_readonly("max_precision", &CompatibleMap::max_precision)
      .def_property_readonly("is_polynomial", &CompatibleMap::is_polynomial)
      .def("describe", &CompatibleMap::describe)
      .def("__repr__", [](const CompatibleMap& f) { return "<CompatibleMap " + f.describe() + ">"; });

  m.def("parse_map", [](const std::string& text) { return map_from_text(text); });
  m.def("canonical", [](const std::string& text) { return to_string(parse_map(text)); },
        "Canonical printed form of a map expression");
  m.def("affine", &affine, py::arg("c0"), py::arg("c1"));
  m.def("polynomial", &polynomial, py::arg("coeffs"));
  m.def("perturbed_monomial", &perturbed_monomial, py::arg("s"), py::arg("r"), py::arg("u"));
  m.def("table_map", &table_map, py::arg("k_max"), py::arg("values"));

  m.def("floor_log2", &floor_log2);
  m.def("chi", [](std::uint64_t mm, std::uint64_t x, unsigned k) {
    return chi(mm, Truncated2Adic(x, k));
  });
  m.def("vdp_B", [](const CompatibleMap& f, std::uint64_t mm, unsigned k) {
    return vdp_B(f, mm, k).residue();
  });
  m.def("vdp_b", [](const CompatibleMap& f, std::uint64_t mm, unsigned k) -> py::object {
    const auto b = vdp_b(f, mm, k);
    if (!b) return py::none();
    return py::int_(b->residue());
  });
  m.def("reconstruct", [](const CompatibleMap& f, std::uint64_t x, unsigned level, unsigned k) {
    return reconstruct(f, x, level, k).residue();
  });
  m.def("check_compatibility", [](const CompatibleMap& f, unsigned level) -> py::object {
    const auto bad = check_compatibility(f, level);
    if (!bad) return py::none();
    return py::make_tuple(bad->m, bad->B.residue());
  });

  m.def("cycle_structure",
        [](const CompatibleMap& f, unsigned k) { return to_python(to_json(cycle_structure(f, k))); });
  m.def("oracle_is_transitive", &oracle_is_transitive);
  m.def("oracle_is_bijective", &oracle_is_bijective);
  m.def("oracle_ergodic",
        [](const CompatibleMap& f, unsigned depth) { return to_python(to_json(oracle_ergodic(f, depth))); });
  m.def("check_measure_preserving", [](const CompatibleMap& f, unsigned k_max) {
    return to_python(to_json(check_measure_preserving(f, k_max)));
  });
  m.def("vdp_ergodicity_criterion", [](const CompatibleMap& f, unsigned level) {
    return to_python(to_json(vdp_ergodicity_criterion(f, level)));
  });
  m.def("alternate_condition2", &alternate_condition2);
  m.def("larin_polynomial",
        [](const CompatibleMap& f) { return to_python(to_json(larin_polynomial(f))); });

  py::class_<SphereSpec>(m, "SphereSpec")
      .def(py::init<unsigned, std::int64_t>(), py::arg("r"), py::arg("a"))
      .def_property_readonly("r", &SphereSpec::r)
      .def_property_readonly("a", &SphereSpec::a)
      .def_property_readonly("base_point", &SphereSpec::base_point);
  m.def("sphere_points_mod", &sphere_points_mod);
  m.def("check_invariance", &check_invariance);
  m.def("conjugate", &conjugate);
  m.def("sphere_ergodicity_criterion", [](const CompatibleMap& f, const SphereSpec& s, unsigned level) {
    return to_python(to_json(sphere_ergodicity_criterion(f, s, level)));
  });
  m.def("oracle_sphere_ergodic", [](const CompatibleMap& f, const SphereSpec& s, unsigned t_max) {
    return to_python(to_json(oracle_sphere_ergodic(f, s, t_max)));
  });

  m.def("monomial_decide", [](std::uint64_t s, unsigned r, const CompatibleMap& u) {
    return to_python(to_json(monomial_decide(PerturbedMonomial(s, r, u))));
  });
  m.def("invariance_congruence", [](std::uint64_t s, unsigned r, const CompatibleMap& u) {
    return invariance_congruence(PerturbedMonomial(s, r, u));
  });
  m.def("expansion_g", [](std::uint64_t s, unsigned r, const CompatibleMap& u, std::uint64_t x,
                          unsigned k) {
    return expansion_g(PerturbedMonomial(s, r, u), Truncated2Adic(x, k)).residue();
  });
}
