// Python bindings. Rationals cross the boundary as fractions.Fraction (ints
// and "num/den" strings are accepted on input, floats are rejected), Laurent
// polynomials as {exponent: Fraction} and Fock vectors as {partition tuple: Fraction}.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "zhukit/binomial_matrices.hpp"
#include "zhukit/cli.hpp"
#include "zhukit/formal.hpp"
#include "zhukit/lemmas.hpp"
#include "zhukit/ospace.hpp"
#include "zhukit/vertex.hpp"
#include "zhukit/zhu.hpp"

namespace py = pybind11;
using namespace zhukit;

namespace {

Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) throw py::type_error("floats are not exact; pass a Fraction, int or 'num/den'");
  if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
  return Rational::parse(py::str(h).cast<std::string>());
}

py::object to_fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.to_fraction_string());
}

LaurentPoly to_poly(const py::dict& d) {
  LaurentPoly p;
  for (const auto& [e, c] : d) p.add_term(e.cast<Exponent>(), to_rational(c));
  return p;
}

py::dict from_poly(const LaurentPoly& p) {
  py::dict d;
  for (const auto& [e, c] : p) d[py::int_(e)] = to_fraction(c);
  return d;
}

FockVector to_fock(const py::dict& d) {
  FockVector v;
  for (const auto& [k, c] : d) {
    Partition p = k.cast<Partition>();
    std::sort(p.begin(), p.end(), std::greater<>());
    for (int part : p)
      if (part < 1) throw py::value_error("partition parts must be >= 1");
    v.add_term(p, to_rational(c));
  }
  return v;
}

py::dict from_fock(const FockVector& v) {
  py::dict d;
  for (const auto& [p, c] : v) d[py::tuple(py::cast(p))] = to_fraction(c);
  return d;
}

std::vector<std::vector<py::object>> from_matrix(const RationalMatrix& m) {
  std::vector<std::vector<py::object>> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r].push_back(to_fraction(m(r, c)));
  return out;
}

RationalMatrix to_matrix(const std::vector<std::vector<py::object>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw py::value_error("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_rational(rows[r][c]);
  }
  return m;
}

std::vector<Rational> to_rationals(const std::vector<py::object>& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(to_rational(x));
  return out;
}

ZhuIndex make_index(long T, long delta, const py::object& n, const py::object& m, const py::object& p) {
  const auto grade = [T](const py::object& g) { return ZhuIndex::parse_grade(to_rational(g).to_string(), T); };
  ZhuIndex idx{T, delta, grade(n), grade(m), std::nullopt};
  if (!p.is_none()) idx.p = grade(p);
  idx.validate();
  return idx;
}

py::list from_report(const Report& r) {
  py::list out;
  for (const auto& c : r.results) {
    py::dict d;
    d["check"] = c.check;
    d["params"] = c.params;
    d["status"] = std::string(to_string(c.status));
    d["witness"] = c.witness;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_zhukit, m) {
  m.doc() = "Exact Laurent-polynomial and vertex-algebra computations";

  py::register_exception<CutoffError>(m, "CutoffError");
  py::register_exception<PreconditionError>(m, "PreconditionError");

  m.def("binom", [](const py::object& q, long k) { return to_fraction(binom(to_rational(q), k)); }, py::arg("q"),
        py::arg("k"));

  m.def(
      "o_generator",
      [](Exponent N, const py::object& Q, Exponent q, Exponent j) {
        return from_poly(o_generator(OSpaceSpec{N, to_rational(Q), q}, j));
      },
      py::arg("N"), py::arg("Q"), py::arg("q"), py::arg("j"));
  m.def(
      "reduce_mod_o",
      [](const py::dict& f, Exponent N, const py::object& Q, Exponent q) {
        return from_poly(reduce_mod_o(to_poly(f), OSpaceSpec{N, to_rational(Q), q}).canonical);
      },
      py::arg("f"), py::arg("N"), py::arg("Q"), py::arg("q"));
  m.def(
      "member_o",
      [](const py::dict& f, Exponent N, const py::object& Q, Exponent q) {
        return member_o(to_poly(f), OSpaceSpec{N, to_rational(Q), q});
      },
      py::arg("f"), py::arg("N"), py::arg("Q"), py::arg("q"));
  m.def(
      "phi",
      [](Exponent N, const py::object& gamma, const py::dict& f) {
        return from_poly(phi(N, to_rational(gamma), to_poly(f)));
      },
      py::arg("N"), py::arg("gamma"), py::arg("f"));

  m.def("det_exact", [](const std::vector<std::vector<py::object>>& rows) {
    return to_fraction(det_exact(to_matrix(rows)));
  });
  m.def(
      "build_A", [](const std::vector<py::object>& xs, long b) { return from_matrix(build_A(to_rationals(xs), b)); },
      py::arg("xs"), py::arg("b"));
  m.def(
      "det_closed_form",
      [](const std::vector<py::object>& xs, long b) { return to_fraction(det_closed_form(to_rationals(xs), b)); },
      py::arg("xs"), py::arg("b"));
  m.def(
      "build_Gamma",
      [](long T, long N, long q, const std::vector<py::object>& Qs) {
        return from_matrix(build_Gamma(T, N, q, to_rationals(Qs)));
      },
      py::arg("T"), py::arg("N"), py::arg("q"), py::arg("Qs"));

  m.def(
      "mu",
      [](long T, long delta, const py::object& n, const py::object& m_, long alpha, long beta, long r, Exponent i) {
        return from_poly(mu(make_index(T, delta, n, m_, py::none()), alpha, beta, r, i));
      },
      py::arg("T"), py::arg("delta"), py::arg("n"), py::arg("m"), py::arg("alpha"), py::arg("beta"), py::arg("r"),
      py::arg("i"));
  m.def(
      "pi",
      [](long T, long delta, const py::object& n, const py::object& p, const py::object& m_, long alpha, long beta) {
        return from_poly(pi(make_index(T, delta, n, m_, p), alpha, beta));
      },
      py::arg("T"), py::arg("delta"), py::arg("n"), py::arg("p"), py::arg("m"), py::arg("alpha"), py::arg("beta"));

  m.def(
      "star",
      [](const py::dict& a, const py::dict& b, long T, const py::object& n, const py::object& p, const py::object& m_,
         long cutoff) {
        const Heisenberg V(cutoff);
        return from_fock(star(V, make_index(T, 0, n, m_, p), to_fock(a), to_fock(b)));
      },
      py::arg("a"), py::arg("b"), py::arg("T"), py::arg("n"), py::arg("p"), py::arg("m"), py::arg("cutoff") = 16);
  m.def(
      "mode",
      [](const py::dict& a, std::int64_t j, const py::dict& b, long cutoff) {
        const Heisenberg V(cutoff);
        return from_fock(V.mode(to_fock(a), j, to_fock(b)));
      },
      py::arg("a"), py::arg("j"), py::arg("b"), py::arg("cutoff") = 16);

  m.def("lemma_names", &lemma_names);
  m.def("vertex_check_names", &v_lemma_names);
  m.def("formal_check_names", &formal_check_names);
  m.def(
      "verify_lemma",
      [](const std::string& name, const std::string& grid) {
        return from_report(verify_lemma(name, LemmaGrid::preset(grid)));
      },
      py::arg("name"), py::arg("grid") = "small");
  m.def(
      "verify_vertex",
      [](const std::string& name, const std::string& grid) {
        return from_report(verify_v_lemma(name, VertexGrid::preset(grid)));
      },
      py::arg("name"), py::arg("grid") = "small");
  m.def(
      "verify_formal",
      [](const std::string& name, const std::string& grid) {
        return from_report(verify_formal(name, FormalGrid::preset(grid)));
      },
      py::arg("name"), py::arg("grid") = "small");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command in-process; returns (exit code, stdout, stderr).");
}
