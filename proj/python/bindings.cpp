#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "liebv/catalog.hpp"
#include "liebv/cochain.hpp"
#include "liebv/errors.hpp"
#include "liebv/glie.hpp"
#include "liebv/io.hpp"
#include "liebv/linalg.hpp"
#include "liebv/scenarios.hpp"

namespace py = pybind11;
using namespace liebv;

namespace {

py::object fraction(const Scalar& q) {
  // leaked on purpose: must not be released after the interpreter is gone
  static py::object* cls = new py::object(py::module_::import("fractions").attr("Fraction"));
  return (*cls)(to_string(q));
}

Scalar scalar_of(const py::handle& h) {
  if (py::isinstance<py::int_>(h) || py::isinstance<py::str>(h)) return parse_scalar(py::str(h));
  py::object f = py::module_::import("fractions").attr("Fraction")(h);
  return parse_scalar(py::str(f));
}

py::list matrix_rows(const SparseMatrix& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    py::list row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.append(fraction(m.at(r, c)));
    rows.append(row);
  }
  return rows;
}

py::list dense_vec(const SparseVec& v, std::size_t n) {
  py::list out;
  for (std::size_t i = 0; i < n; ++i) out.append(fraction(coeff(v, i)));
  return out;
}

py::list report_checks(const Report& r) {
  py::list out;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["passed"] = c.passed;
    d["detail"] = c.detail;
    d["witness"] = c.witness;
    out.append(d);
  }
  return out;
}

Restriction restriction_of(const std::string& s) {
  if (s == "full") return Restriction::full;
  if (s == "q") return Restriction::q;
  if (s == "q1") return Restriction::q1;
  if (s == "sl") return Restriction::sl;
  throw py::value_error("restriction must be full, q, q1 or sl");
}

}  // namespace

PYBIND11_MODULE(_liebv, m) {
  m.doc() = "exact shifted Lie bialgebras and Chevalley-Eilenberg cohomology";

  // translators are tried newest first, so the base class goes in first
  py::register_exception<Error>(m, "LiebvError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NotSemisimpleError>(m, "NotSemisimpleError", PyExc_ArithmeticError);

  py::class_<Bialgebra>(m, "Bialgebra")
      .def_readonly("name", &Bialgebra::name)
      .def_readonly("shift", &Bialgebra::shift)
      .def_property_readonly("dim", &Bialgebra::dim)
      .def_property_readonly("names",
                             [](const Bialgebra& b) {
                               std::vector<std::string> out;
                               for (const auto& e : b.algebra.basis()) out.push_back(e.name);
                               return out;
                             })
      .def_property_readonly("degrees",
                             [](const Bialgebra& b) {
                               std::vector<int> out;
                               for (const auto& e : b.algebra.basis()) out.push_back(e.degree);
                               return out;
                             })
      .def("__eq__", [](const Bialgebra& a, const Bialgebra& b) { return same_structure(a, b); })
      .def("__repr__", [](const Bialgebra& b) {
        return "<Bialgebra '" + b.name + "' dim " + std::to_string(b.dim()) + ">";
      });

  m.def("version", &version_string);
  m.def("parse_algebra", &parse_algebra, py::arg("text"));
  m.def("load_algebra", &load_algebra, py::arg("path"));
  m.def("emit_algebra", &emit_algebra, py::arg("b"));
  m.def("fingerprint", &fingerprint, py::arg("b"));
  m.def("validate", [](const Bialgebra& b) { return report_checks(validate_structures(b)); }, py::arg("b"));
  m.def("is_involutive", &involutivity_check, py::arg("b"));

  m.def(
      "standard_bialgebra",
      [](int mm, int nn, const std::string& r) { return standard_bialgebra(mm, nn, restriction_of(r)); },
      py::arg("m"), py::arg("n"), py::arg("restriction") = "full");
  m.def(
      "standard_bialgebra_dims",
      [](const GradedDims& dims, const std::string& r) { return standard_bialgebra(dims, restriction_of(r)); },
      py::arg("dims"), py::arg("restriction") = "full");
  m.def("theta_bialgebra", &theta_bialgebra, py::arg("n"), py::arg("theta"));
  m.def(
      "frobenius_loop",
      [](int w, int order) { return frobenius_loop(FrobeniusAlgebra::matrix_algebra(w), order); },
      py::arg("w"), py::arg("order"));
  m.def("dual_bialgebra", &dual_bialgebra, py::arg("b"));
  m.def(
      "double_roundtrip",
      [](const Bialgebra& b) { return manin_to_bialgebra(double_of_bialgebra(b)); }, py::arg("b"));

  m.def(
      "cohomology",
      [](const Bialgebra& b, int lo, int hi, int s_max) {
        CEAlgebra ce(b);
        Truncation t;
        t.deg_lo = lo;
        t.deg_hi = hi;
        t.s_max = s_max;
        CohomologyTable h;
        {
          py::gil_scoped_release nogil;
          h = cohomology(ce, t);
        }
        std::map<std::pair<int, int>, std::size_t> out;
        for (const auto& blk : h.blocks) out[{blk.key.degree, *blk.key.s}] = blk.betti;
        return out;
      },
      py::arg("b"), py::arg("deg_lo"), py::arg("deg_hi"), py::arg("s_max"));

  m.def(
      "delta_on_generators", [](const Bialgebra& b) { return matrix_rows(delta_on_generators(b)); },
      py::arg("b"));
  m.def(
      "eigenvalues",
      [](const Bialgebra& b) {
        py::list out;
        for (const auto& e : eigen_split(delta_on_generators(b)))
          out.append(py::make_tuple(fraction(e.eigenvalue), e.eigenspace.dim()));
        return out;
      },
      py::arg("b"));

  m.def(
      "rank_kernel",
      [](const std::vector<std::vector<py::object>>& rows) {
        std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
        std::vector<SparseMatrix::Entry> e;
        for (std::size_t r = 0; r < nr; ++r) {
          if (rows[r].size() != nc) throw py::value_error("ragged matrix");
          for (std::size_t c = 0; c < nc; ++c) {
            Scalar v = scalar_of(rows[r][c]);
            if (v != 0) e.push_back({r, c, v});
          }
        }
        RankKernel rk = rank_kernel(SparseMatrix::from_entries(nr, nc, e));
        py::list kernel;
        for (const auto& v : rk.kernel.vectors) kernel.append(dense_vec(v, nc));
        return py::make_tuple(rk.rank, kernel);
      },
      py::arg("rows"));

  m.def(
      "scenario_algebra",
      [](const std::string& kind, const GradedDims& dims, int n, const std::vector<int>& theta, int dim_w,
         int order) {
        if (kind == "rcom") return rcom(dims).bialgebra;
        if (kind == "rcom-l1") return rcom_quotient_l1(dims).bialgebra;
        if (kind == "rcom-theta") return rcom_quotient_theta(n, theta).bialgebra;
        if (kind == "rpcom") return rpcom(dim_w, order).bialgebra;
        throw py::value_error("unknown scenario kind " + kind);
      },
      py::arg("kind"), py::arg("dims") = GradedDims{}, py::arg("n") = 0, py::arg("theta") = std::vector<int>{},
      py::arg("dim_w") = 0, py::arg("order") = 0);
  m.def(
      "run_scenario_json",
      [](const std::string& kind, const GradedDims& dims, int n, const std::vector<int>& theta, int dim_w,
         int order) {
        Scenario s;
        if (kind == "rcom") s = rcom(dims);
        else if (kind == "rcom-l1") s = rcom_quotient_l1(dims);
        else if (kind == "rcom-theta") s = rcom_quotient_theta(n, theta);
        else if (kind == "rpcom") s = rpcom(dim_w, order);
        else throw py::value_error("unknown scenario kind " + kind);
        Report r;
        {
          py::gil_scoped_release nogil;
          r = run_scenario(s);
        }
        return report_json(r, fingerprint(s.bialgebra));
      },
      py::arg("kind"), py::arg("dims") = GradedDims{}, py::arg("n") = 0, py::arg("theta") = std::vector<int>{},
      py::arg("dim_w") = 0, py::arg("order") = 0);
}
