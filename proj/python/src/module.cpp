#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kgsym/noether.hpp"
#include "kgsym/parallel.hpp"
#include "kgsym/parse.hpp"
#include "kgsym/reduction.hpp"

namespace py = pybind11;
using namespace kgsym;

namespace {

Coord coord(const std::string& c) {
  if (c == "t") return Coord::T;
  if (c == "x") return Coord::X;
  if (c == "y") return Coord::Y;
  throw py::value_error("coordinate must be 't', 'x' or 'y'");
}

EpsPolicy policy(const std::string& eps) {
  if (eps == "both") return EpsPolicy::Both;
  if (eps == "+1") return EpsPolicy::Plus;
  if (eps == "-1") return EpsPolicy::Minus;
  throw py::value_error("eps must be '+1', '-1' or 'both'");
}

VectorField vector(const std::vector<std::string>& xi, const std::string& eta) {
  if (xi.size() != 3) throw py::value_error("vector needs three components (xi_t, xi_x, xi_y)");
  return {parse(xi[0]), parse(xi[1]), parse(xi[2]), eta.empty() ? Expr() : parse(eta)};
}

Report verify(const std::string& suite, const std::string& table, const std::filesystem::path& dir,
              const std::string& eps) {
  ScopedEpsPolicy p(policy(eps));
  py::gil_scoped_release nogil;
  if (suite == "catalog") return verify_catalog(dir);
  if (suite == "brackets") return verify_brackets(dir);
  if (suite == "subalgebras") return verify_subalgebras(dir);
  if (suite == "potentials") return verify_potentials_table(table, dir);
  if (suite == "invariants") return verify_table3_invariants(dir);
  if (suite == "noether") return verify_noether_claims(dir);
  if (suite == "conservation") return verify_conservation_table(dir);
  if (suite == "reductions") return verify_reductions();
  if (suite == "wave") return wave_and_constant_checks();
  throw py::value_error("unknown suite '" + suite + "'");
}

}  // namespace

PYBIND11_MODULE(_kgsym, m) {
  m.doc() = "Exact symmetry checks for the Klein-Gordon equation on flat 3-space";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);
  py::register_exception<DataError>(m, "DataError", PyExc_OSError);

  py::class_<Expr>(m, "Expr")
      .def(py::init(&parse), py::arg("text"))
      .def(py::init<long>())
      .def("__str__", &Expr::str)
      .def("__repr__", [](const Expr& e) { return "Expr('" + e.str() + "')"; })
      .def("__hash__", [](const Expr& e) { return std::hash<std::string>{}(e.str()); })
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def("__pow__", &Expr::pow)
      .def("is_zero", [](const Expr& e, const std::string& eps) { return is_zero(e, policy(eps)); },
           py::arg("eps") = "both")
      .def("diff", [](const Expr& e, const std::string& c) { return diff(e, coord(c)); })
      .def("total_diff", [](const Expr& e, const std::string& c) { return total_diff(e, coord(c)); })
      .def("instantiate_eps", &instantiate_eps, py::arg("sign"));

  py::enum_<Status>(m, "Status").value("PASS", Status::Pass).value("FAIL", Status::Fail).value("FLAGGED", Status::Flagged);

  py::class_<CheckRecord>(m, "CheckRecord")
      .def_readonly("id", &CheckRecord::id)
      .def_readonly("location", &CheckRecord::location)
      .def_readonly("status", &CheckRecord::status)
      .def_readonly("residual", &CheckRecord::residual)
      .def_readonly("note", &CheckRecord::note)
      .def("__repr__", [](const CheckRecord& r) {
        return "<CheckRecord " + r.id + " " + std::string(to_string(r.status)) + ">";
      });

  py::class_<Report>(m, "Report")
      .def_readonly("suite", &Report::suite)
      .def_readonly("records", &Report::records)
      .def("count", &Report::count)
      .def("ok", &Report::ok)
      .def("__len__", [](const Report& r) { return r.records.size(); });

  m.def("parse", &parse, py::arg("text"));
  m.def("set_jobs", &set_jobs, py::arg("n"));
  m.def("default_data_dir", &default_data_dir);

  m.def("catalog", [] {
    py::list out;
    for (const auto& c : catalog())
      out.append(py::dict(py::arg("generator") = "X" + std::to_string(c.index),
                          py::arg("xi") = py::make_tuple(c.field.xi_t, c.field.xi_x, c.field.xi_y),
                          py::arg("kind") = std::string(to_string(c.cls.kind)), py::arg("psi") = *c.cls.psi));
    return out;
  });

  m.def(
      "classify",
      [](const std::vector<std::string>& xi) {
        const CollineationClass c = classify_collineation(vector(xi, ""), MetricSpec::flat());
        return py::make_tuple(std::string(to_string(c.kind)), c.psi ? py::cast(*c.psi) : py::none());
      },
      py::arg("vector"));

  m.def(
      "constraint_residual",
      [](const std::vector<std::string>& xi, const std::string& psi, const std::string& potential) {
        return constraint_residual(vector(xi, ""), parse(psi), PotentialSpec::parse(potential));
      },
      py::arg("vector"), py::arg("psi"), py::arg("potential"));

  m.def(
      "invariance_residual",
      [](const std::vector<std::string>& xi, const std::string& potential, const std::string& eta) {
        const VectorField X = vector(xi, eta);
        const PotentialSpec V = PotentialSpec::parse(potential);
        SymmetryCandidate S = SymmetryCandidate::of(X);
        const CollineationClass c = classify_collineation(X, MetricSpec::flat());
        if (eta.empty() && c.psi) {
          const UCoefficient uc = determine_u_coefficient(X, *c.psi, V);
          if (uc.kind == UCoefficient::Kind::Found) S.u_coeff = uc.term;
        }
        return lie_invariance_residual(S, V);
      },
      py::arg("vector"), py::arg("potential"), py::arg("eta") = "",
      "Residual of the second prolongation on solutions; without eta the u-term of a special conformal vector is "
      "chosen automatically.");

  m.def(
      "conserved_vector",
      [](const std::vector<std::string>& xi, const std::string& potential) {
        const PotentialSpec V = PotentialSpec::parse(potential);
        const Lagrangian L = lagrangian(V);
        const SymmetryCandidate S = noether_symmetry(vector(xi, ""), V);
        const auto f = solve_gauge(S, L);
        if (!f) throw MathError("not a Noether symmetry: no gauge function fits");
        const ConservedVector T = conserved_vector(S, L, *f);
        return py::make_tuple(T.T[0], T.T[1], T.T[2]);
      },
      py::arg("vector"), py::arg("potential"));

  m.def(
      "reduce",
      [](const std::string& ansatz, const std::string& potential) {
        return reduce_residual(Ansatz::parse(ansatz), PotentialSpec::parse(potential)).reduced;
      },
      py::arg("ansatz"), py::arg("potential"));

  m.def("verify", &verify, py::arg("suite"), py::arg("table") = "", py::arg("data_dir") = default_data_dir(),
        py::arg("eps") = "both");
}
