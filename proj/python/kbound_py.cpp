#include "kbound/cli.hpp"
#include "kbound/errors.hpp"
#include "kbound/serialize.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace kbound;

// Rat <-> fractions.Fraction. On input int and "p/q" strings are accepted too.
namespace pybind11::detail {
template <>
struct type_caster<mpq_class> {
    PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));

    bool load(handle src, bool) {
        if (!src || PyBool_Check(src.ptr())) return false;
        if (PyUnicode_Check(src.ptr())) {
            value = parse_rat(src.cast<std::string>());  // InputError -> ValueError
            return true;
        }
        if (PyLong_Check(src.ptr())) {
            value = mpq_class(mpz_class(py::str(src).cast<std::string>()));
            return true;
        }
        object fraction = module_::import("fractions").attr("Fraction");
        if (!isinstance(src, fraction)) return false;
        value = make_rat(mpz_class(py::str(src.attr("numerator")).cast<std::string>()),
                         mpz_class(py::str(src.attr("denominator")).cast<std::string>()));
        return true;
    }

    static handle cast(const mpq_class& q, return_value_policy, handle) {
        auto big = [](const mpz_class& z) {
            return reinterpret_steal<object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
        };
        object fraction = module_::import("fractions").attr("Fraction");
        return fraction(big(q.get_num()), big(q.get_den())).release();
    }
};
}  // namespace pybind11::detail

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) {
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

DivClass class_or_anticanonical(const SurfaceModel& s, const std::optional<std::vector<Rat>>& coords) {
    if (!coords) return -s.canonical;
    if (coords->size() != s.rank) throw InputError("class must have " + std::to_string(s.rank) + " coordinates");
    return DivClass(*coords);
}

PointModel point_model(const SurfaceModel& s, const py::object& point) {
    if (point.is_none()) return blow_up(s, GeneralPoint{});
    return blow_up(s, explicit_point_from_json(from_py(point), s.rank + 1));
}

}  // namespace

PYBIND11_MODULE(_kbound, m) {
    m.doc() = "Exact divisor invariants on surfaces and delta-invariant lower bounds";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ModelError>(m, "ModelError", PyExc_RuntimeError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_AssertionError);

    m.def("surface", [](const std::string& spec) { return to_py(json(load_surface(spec))); },
          py::arg("spec"), "Surface model as a dict; spec is a built-in name or a surface file.");

    m.def("zariski",
          [](const std::string& spec, const std::vector<Rat>& coords) {
              SurfaceModel s = load_surface(spec);
              return to_py(json(zariski_decompose(class_or_anticanonical(s, coords), s)));
          },
          py::arg("spec"), py::arg("cls"));

    m.def("s_invariant",
          [](const std::string& spec, const std::vector<Rat>& ample, const std::vector<Rat>& ray) {
              SurfaceModel s = load_surface(spec);
              return s_invariant(class_or_anticanonical(s, ample), class_or_anticanonical(s, ray), s);
          },
          py::arg("spec"), py::arg("ample"), py::arg("ray"), "S(L; E) along the ray L - tE on the surface itself.");

    m.def("point_invariants",
          [](const std::string& spec, std::optional<std::vector<Rat>> ample, py::object point) {
              SurfaceModel s = load_surface(spec);
              return to_py(json(point_invariants(point_model(s, point), class_or_anticanonical(s, ample))));
          },
          py::arg("spec"), py::arg("ample") = py::none(), py::arg("point") = py::none(),
          "eps, eta, tau, S and the volume profiles over a point (general, or explicit strict transforms).");

    m.def("delta_bound",
          [](const std::string& spec, std::optional<std::vector<Rat>> ample, py::object point, bool rho1) {
              SurfaceModel s = load_surface(spec);
              PointModel pm = point_model(s, point);
              DivClass l = class_or_anticanonical(s, ample);
              return to_py(json(rho1 ? corollary_rho1_bound(s, l, pm) : surface_delta_bound(s, l, pm)));
          },
          py::arg("spec"), py::arg("ample") = py::none(), py::arg("point") = py::none(), py::arg("rho1") = false);

    m.def("lift_dimension",
          [](int n, const Rat& ln, const Rat& eps, const Rat& tau) { return to_py(json(lift_dimension(n, ln, eps, tau))); },
          py::arg("n"), py::arg("ln"), py::arg("eps"), py::arg("tau"));

    m.def("hypersurface_verdict", [](int n, int r) { return to_py(json(hypersurface_verdict({n, r}))); },
          py::arg("n"), py::arg("r"));

    m.def("threefold_verdict",
          [](int index, int degree, std::optional<std::map<int, Rat>> eps_table) {
              ThreefoldQuery q;
              q.index = index;
              q.degree = degree;
              if (eps_table)
                  for (const auto& [d, e] : *eps_table) q.eps_table[d] = e;
              return to_py(json(threefold_verdict(q)));
          },
          py::arg("index"), py::arg("degree"), py::arg("eps_table") = py::none());

    m.def("k3_tau_bound", [](long d, const Rat& c, long max_m) { return to_py(json(k3_tau_bound(d, c, max_m))); },
          py::arg("d"), py::arg("c"), py::arg("max_m"));

    m.def("verify_lemma",
          [](const std::string& kind, int cases, std::uint64_t seed) {
              LemmaKind k;
              if (kind == "center-pt")
                  k = LemmaKind::CenterPoint;
              else if (kind == "center-div")
                  k = LemmaKind::CenterDivisor;
              else
                  throw InputError("kind must be center-pt or center-div");
              py::list rows;
              for (const LemmaCase& c : run_lemma_suite(k, cases, seed))
                  rows.append(py::make_tuple(c.seed, c.check.lhs, c.check.rhs, c.check.equality));
              return rows;
          },
          py::arg("kind"), py::arg("cases"), py::arg("seed") = 0, "(seed, lhs, rhs, equality) per case.");

    m.def("cli",
          [](const std::vector<std::string>& args) {
              std::vector<const char*> argv{"fano_cli"};
              for (const auto& a : args) argv.push_back(a.c_str());
              std::ostringstream out, err;
              int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
              return py::make_tuple(status, out.str(), err.str());
          },
          py::arg("args"), "Runs the command line in-process: (exit status, stdout, stderr).");
}
