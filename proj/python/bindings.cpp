#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kacforge/abelian.hpp"
#include "kacforge/approx_props.hpp"
#include "kacforge/corpus.hpp"
#include "kacforge/errors.hpp"
#include "kacforge/io.hpp"
#include "kacforge/rep_theory.hpp"

namespace py = pybind11;
using namespace kacforge;

namespace {

py::dict invariants_dict(const MatchedPair &mp, std::uint64_t seed) {
  const KacAlgebra a(mp);
  const auto inv = invariant_groups(a, enumerate_irreps(a, seed));
  py::dict d;
  d["intrinsic_order"] = inv.intrinsic.order();
  d["intrinsic_name"] = inv.intrinsic_name;
  d["intrinsic_matches"] = inv.intrinsic_matches;
  d["spectrum_order"] = inv.spectrum.order();
  d["spectrum_name"] = inv.spectrum_name;
  d["spectrum_matches"] = inv.spectrum_matches;
  return d;
}

} // namespace

PYBIND11_MODULE(_kacforge, m) {
  m.doc() = "Finite bicrossed-product Kac algebras";

  // Library errors surface as one Python exception type; the kind is the prefix.
  static py::exception<Error> error(m, "KacforgeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const Error &e) {
      error((e.kind() + ": " + e.what()).c_str());
    }
  });

  py::class_<FiniteGroup>(m, "FiniteGroup")
      .def_property_readonly("order", &FiniteGroup::order)
      .def_property_readonly("identity", &FiniteGroup::identity)
      .def("mul", &FiniteGroup::mul)
      .def("inv", &FiniteGroup::inv)
      .def("label", &FiniteGroup::label)
      .def("find_label", &FiniteGroup::find_label)
      .def("is_abelian", &FiniteGroup::is_abelian)
      .def("element_order", &FiniteGroup::element_order)
      .def("center", [](const FiniteGroup &g) { return conjugacy_and_center(g).center; })
      .def("abelianization", [](const FiniteGroup &g) { return abelian_invariants(g).name(); })
      .def("__repr__", [](const FiniteGroup &g) { return "<FiniteGroup " + group_name(g) + ">"; });

  m.def("cyclic_group", &cyclic_group);
  m.def("symmetric_group", &symmetric_group);
  m.def("special_linear_group", &special_linear_group, py::arg("n"), py::arg("p"));
  m.def("is_isomorphic", [](const FiniteGroup &a, const FiniteGroup &b) { return is_isomorphic_small(a, b); });
  m.def("group_name", &group_name);
  m.def("load_group", [](const std::string &path) { return load_group(path).group; });

  m.def(
      "abelian_invariants",
      [](int n, const std::vector<std::vector<long long>> &relators) {
        const auto a = abelian_invariants(Presentation{n, relators});
        return py::make_tuple(a.invariant_factors, a.free_rank);
      },
      py::arg("n_generators"), py::arg("relators"),
      "Invariant factors and free rank of Z^n modulo the relator rows.");

  py::class_<MatchedPair>(m, "MatchedPair")
      .def_property_readonly("gamma", &MatchedPair::gamma)
      .def_property_readonly("g", &MatchedPair::g)
      .def("alpha", &MatchedPair::alpha, py::arg("r"), py::arg("x"))
      .def("beta", &MatchedPair::beta, py::arg("x"), py::arg("r"))
      .def("alpha_trivial", &MatchedPair::alpha_trivial)
      .def("beta_trivial", &MatchedPair::beta_trivial)
      .def("violation", &MatchedPair::violation)
      .def("__repr__", [](const MatchedPair &mp) {
        return "<MatchedPair |Gamma|=" + std::to_string(mp.n_gamma()) + " |G|=" + std::to_string(mp.n_g()) + ">";
      });

  m.def("load_pair", [](const std::string &path) { return load_pair(path).pair; },
        "A matched pair from a file, or a built-in one named 'corpus:<name>'.");
  m.def("derive_actions", [](const FiniteGroup &h, const std::vector<Elem> &gamma, const std::vector<Elem> &g) {
    return derive_actions(h, generated_subgroup(h, gamma), generated_subgroup(h, g));
  });

  m.def(
      "check_axioms",
      [](const MatchedPair &mp) {
        std::vector<py::tuple> out;
        for (const auto &r : check_axioms(KacAlgebra(mp)).results)
          out.push_back(py::make_tuple(r.name, r.max_deviation, r.witness));
        return out;
      },
      "(name, max deviation, witness) for every Kac algebra identity.");
  m.def("algebra_dim", [](const MatchedPair &mp) { return KacAlgebra(mp).dim(); });

  m.def(
      "irrep_dims",
      [](const MatchedPair &mp, std::uint64_t seed) {
        std::vector<int> dims;
        for (const auto &c : enumerate_irreps(KacAlgebra(mp), seed).canonical)
          dims.push_back(c.dim);
        return dims;
      },
      py::arg("pair"), py::arg("seed") = kDefaultSeed);
  m.def("invariant_groups", &invariants_dict, py::arg("pair"), py::arg("seed") = kDefaultSeed);
  m.def(
      "audit",
      [](const MatchedPair &mp, std::uint64_t seed) {
        const KacAlgebra a(mp);
        const auto au = audit_fusion(a, enumerate_irreps(a, seed));
        std::vector<py::tuple> out;
        for (const auto &e : au.entries)
          out.push_back(py::make_tuple(to_string(e.status), e.claim, e.detail));
        return py::make_tuple(au.oracle_agreement, out);
      },
      py::arg("pair"), py::arg("seed") = kDefaultSeed);

  m.def(
      "chebyshev_values",
      [](int n, const std::string &t, int cutoff) {
        std::vector<std::string> out;
        for (const auto &v : chebyshev_state(n, parse_rational(t), cutoff).values)
          out.push_back(to_string(v));
        return out;
      },
      py::arg("n"), py::arg("t"), py::arg("cutoff"), "P_k(t)/P_k(N) as exact fractions.");

  m.def(
      "run",
      [](const std::string &command, const std::vector<std::string> &inputs,
         const std::map<std::string, std::string> &options, std::uint64_t seed, bool structured) {
        Command c;
        c.name = command;
        const auto space = command.find(' ');
        if (space != std::string::npos) {
          c.name = command.substr(0, space);
          c.sub = command.substr(space + 1);
        }
        c.inputs = inputs;
        c.options = options;
        RunConfig cfg;
        cfg.seed = seed;
        const auto report = run_pipeline(c, cfg);
        return py::make_tuple(report.exit_code(), structured ? report.to_json() : report.to_text());
      },
      py::arg("command"), py::arg("inputs") = std::vector<std::string>{},
      py::arg("options") = std::map<std::string, std::string>{}, py::arg("seed") = kDefaultSeed,
      py::arg("structured") = false, "Runs a pipeline command; returns (exit code, report).");
}
