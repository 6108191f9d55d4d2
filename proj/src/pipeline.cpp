#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "kacforge/errors.hpp"
#include "kacforge/io.hpp"

namespace kacforge {

namespace {

FailureKind classify(const Error &e) {
  // Numerical identities and integrality checks breach a tolerance; everything
  // else is an input that does not satisfy a structural invariant.
  static const std::set<std::string> numeric = {"NonIntegral",      "IdentityViolated",
                                                "PeterWeylMismatch", "AxiomViolation",
                                                "ExtractionFailed", "SeedDegenerate"};
  return numeric.count(e.kind()) ? FailureKind::tolerance : FailureKind::validation;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Runner {
  const Command &cmd;
  const RunConfig &cfg;
  Report report;

  ReportEntry &pass(const std::string &module, std::string name, std::string detail = {}) {
    return report.add(module, {Status::pass, FailureKind::none, std::move(name), std::move(detail), {}, {}});
  }
  ReportEntry &fail(const std::string &module, std::string name, std::string witness,
                    FailureKind kind, std::string detail = {}) {
    if (witness.empty())
      witness = "(no witness)";
    return report.add(module, {Status::fail, kind, std::move(name), std::move(detail), std::move(witness), {}});
  }
  ReportEntry &check(const std::string &module, bool ok, std::string name, std::string detail,
                     std::string witness, FailureKind kind = FailureKind::validation) {
    return ok ? pass(module, std::move(name), std::move(detail))
              : fail(module, std::move(name), std::move(witness), kind, std::move(detail));
  }
  /// Residual check: PASS when `residual` stays below `tol`.
  ReportEntry &within(const std::string &module, std::string name, double residual, double tol,
                      std::string detail = {}) {
    auto &e = check(module, residual < tol, std::move(name), std::move(detail),
                    "residual " + sci(residual) + " >= tolerance " + sci(tol), FailureKind::tolerance);
    e.residuals.emplace_back("max", residual);
    return e;
  }

  template <class F> bool guarded(const std::string &module, const std::string &name, F &&f) {
    try {
      f();
      return true;
    } catch (const Error &e) {
      fail(module, name, e.what(), classify(e), e.kind());
    } catch (const std::exception &e) {
      fail(module, name, e.what(), FailureKind::validation, "error");
    }
    return false;
  }

  std::string option(const std::string &key, const std::string &fallback) const {
    const auto it = cmd.options.find(key);
    return it == cmd.options.end() ? fallback : it->second;
  }
  int int_option(const std::string &key, int fallback) const {
    const auto s = option(key, "");
    if (s.empty())
      return fallback;
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size())
        return v;
    } catch (const std::exception &) {
    }
    throw ParseError("option --" + key + ": expected an integer, got '" + s + "'");
  }

  const std::string &input(std::size_t i, const char *what) const {
    if (cmd.inputs.size() <= i)
      throw ValidationError(cmd.name + ": missing input (" + std::string(what) + ")");
    return cmd.inputs[i];
  }

  LoadedPair pair(std::size_t i) {
    auto p = load_pair(input(i, "matched-pair file"), cfg.caps);
    pass("io", "load " + p.path,
         "|Gamma| = " + std::to_string(p.pair.n_gamma()) + ", |G| = " + std::to_string(p.pair.n_g()) +
             " (" + p.provenance + ")");
    return p;
  }

  void require_small(const MatchedPair &mp) {
    const long long d = static_cast<long long>(mp.n_gamma()) * mp.n_g();
    if (d > cfg.caps.algebra_dim)
      throw SizeBound("algebra dimension " + std::to_string(d) + " exceeds the cap " +
                      std::to_string(cfg.caps.algebra_dim));
  }

  // ---- commands -------------------------------------------------------------

  void validate() {
    if (cmd.inputs.empty())
      throw ValidationError("validate: no input files");
    for (const auto &path : cmd.inputs) {
      guarded("io", "validate " + path, [&] {
        const auto in = parse_inputs({path}, cfg);
        for (const auto &g : in.groups)
          pass("io", "group " + path,
               "order " + std::to_string(g.group.order()) + ", " +
                   (g.group.is_abelian() ? "abelian" : "nonabelian") + ", " +
                   std::string(to_string(g.group.source())));
        for (const auto &p : in.pairs) {
          const auto &mp = p.pair;
          pass("io", "matched pair " + path,
               "|Gamma| = " + std::to_string(mp.n_gamma()) + ", |G| = " + std::to_string(mp.n_g()) +
                   ", alpha " + (mp.alpha_trivial() ? "trivial" : "nontrivial") + ", beta " +
                   (mp.beta_trivial() ? "trivial" : "nontrivial"));
          const auto fs = orbits_fixed_sets(mp);
          for (const auto &orbit : fs.orbits.orbits) {
            const auto rel = check_magic_relations(mp, orbit);
            check("matched_pair", rel.ok(), path + ": magic relations on orbit of " + mp.gamma().label(orbit.front()),
                  std::to_string(orbit.size()) + " points", rel.ok() ? "" : rel.failures.front());
          }
        }
        for (const auto &r : in.rings) {
          const auto rc = check_ring(r.ring);
          check("crossed_product", rc.ok(), "ring " + path,
                r.ring.name + ", " + std::to_string(r.ring.size()) + " labels" +
                    (r.ring.truncated ? " (truncated)" : ""),
                rc.ok() ? "" : rc.failures.front());
        }
        for (const auto &m : in.measures) {
          Rational mass = 0;
          for (const auto &w : m.measure.weights)
            mass += w;
          pass("approx_props", "measure " + path,
               "on " + m.group_path + " of order " + std::to_string(m.group.order()) +
                   ", mass " + to_string(mass));
        }
        if (in.groups.empty() && in.pairs.empty() && in.rings.empty() && in.measures.empty())
          pass("io", "config " + path, "seed " + std::to_string(in.config.seed));
      });
    }
  }

  void build() {
    const auto p = pair(0);
    const KacAlgebra a(p.pair);
    const auto rep = check_axioms(a);
    for (const auto &r : rep.results) {
      auto &e = within("kac_algebra", r.name, r.max_deviation, cfg.tolerances.axiom);
      if (!r.witness.empty())
        e.witness = r.witness;
    }
    const auto gs = group_subalgebra_check(a);
    const int group_like = static_cast<int>(std::count(gs.group_like.begin(), gs.group_like.end(), true));
    check("kac_algebra", gs.unit_ok && gs.multiplicative_ok && gs.coproduct_formula_ok,
          "group subalgebra u_Gamma",
          std::to_string(group_like) + " of " + std::to_string(gs.group_like.size()) + " u_gamma group-like",
          "unit/multiplicativity/coproduct formula failed");
    const auto fs = orbits_fixed_sets(p.pair);
    for (const auto &orbit : fs.orbits.orbits) {
      const auto rel = check_magic_relations(p.pair, orbit);
      check("matched_pair", rel.ok(), "magic relations on orbit of " + p.pair.gamma().label(orbit.front()),
            std::to_string(orbit.size()) + " points", rel.ok() ? "" : rel.failures.front());
    }
    if (const auto dump = option("dump", ""); !dump.empty()) {
      std::ofstream out(dump);
      if (!out)
        throw ValidationError("cannot write " + dump);
      out << dump_structure(a);
      pass("kac_algebra", "structure constants written", dump);
    }
  }

  IrrepCatalog catalog_for(const MatchedPair &mp, const KacAlgebra &a) {
    require_small(mp);
    return enumerate_irreps(a, cfg.seed);
  }

  void irreps() {
    const auto p = pair(0);
    const KacAlgebra a(p.pair);
    const auto cat = catalog_for(p.pair, a);
    const long long target = static_cast<long long>(p.pair.n_gamma()) * p.pair.n_g();
    std::string dims;
    for (const auto &c : cat.canonical)
      dims += (dims.empty() ? "" : ", ") + std::to_string(c.dim);
    check("rep_theory", cat.dim_squares == target, "Peter-Weyl",
          "sum dim^2 = " + std::to_string(cat.dim_squares) + " = |Gamma||G| = " + std::to_string(target) +
              "; dims {" + dims + "}",
          "sum dim^2 = " + std::to_string(cat.dim_squares) + " != " + std::to_string(target),
          FailureKind::tolerance);
    check("rep_theory", cat.coefficient_rank == a.dim(), "matrix coefficients span",
          "rank " + std::to_string(cat.coefficient_rank),
          "rank " + std::to_string(cat.coefficient_rank) + " != " + std::to_string(a.dim()),
          FailureKind::tolerance);
    for (const auto &c : cat.canonical) {
      const double defect = std::max(unitarity_defect(a, c), coaction_defect(a, c));
      within("rep_theory", c.label, defect, cfg.tolerances.equality, "dim " + std::to_string(c.dim));
    }
    std::string map;
    const auto &cands = cat.candidates.candidates;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      map += cands[i].rep.label + " = ";
      for (std::size_t k = 0; k < cat.equivalence_map[i].size(); ++k)
        map += (k ? " + irr" : "irr") + std::to_string(cat.equivalence_map[i][k]);
      map += "\n";
    }
    pass("rep_theory", "candidate decomposition", map);
  }

  void fusion() {
    const auto &path = input(0, "pair or ring file");
    Inputs in;
    if (path.rfind("corpus:", 0) == 0) {
      in.pairs.push_back(load_pair(path, cfg.caps));
    } else {
      in = parse_inputs({path}, cfg);
    }
    for (const auto &r : in.rings) {
      const auto rc = check_ring(r.ring);
      check("crossed_product", rc.ok(), "ring laws " + r.ring.name, std::to_string(r.ring.size()) + " labels",
            rc.ok() ? "" : rc.failures.front());
      std::string table;
      for (int x = 0; x < r.ring.size(); ++x)
        for (int y = 0; y < r.ring.size(); ++y) {
          table += r.ring.labels[x] + " (x) " + r.ring.labels[y] + " = ";
          if (!r.ring.defined(x, y)) {
            table += "(beyond cutoff)\n";
            continue;
          }
          bool first = true;
          for (const auto &[z, m] : r.ring.product(x, y)) {
            table += (first ? "" : " + ") + (m > 1 ? std::to_string(m) + " " : "") + r.ring.labels[z];
            first = false;
          }
          table += "\n";
        }
      pass("crossed_product", "fusion table", table);
    }
    for (const auto &p : in.pairs) {
      pass("io", "load " + p.path, p.provenance);
      const KacAlgebra a(p.pair);
      const auto cat = catalog_for(p.pair, a);
      const int k = static_cast<int>(cat.canonical.size());
      std::string table;
      bool dims_ok = true;
      std::string witness;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          const auto prod = tensor_product(a, cat.canonical[i], cat.canonical[j]);
          table += "irr" + std::to_string(i) + " (x) irr" + std::to_string(j) + " =";
          int total = 0;
          bool first = true;
          for (int z = 0; z < k; ++z) {
            const int m = mor_dim_haar(a, cat.canonical[z], prod, cfg.tolerances.integer_residual);
            if (m == 0)
              continue;
            total += m * cat.canonical[z].dim;
            table += std::string(first ? " " : " + ") + (m > 1 ? std::to_string(m) + " " : "") + "irr" +
                     std::to_string(z);
            first = false;
          }
          table += "\n";
          if (total != prod.dim && dims_ok) {
            dims_ok = false;
            witness = "irr" + std::to_string(i) + " (x) irr" + std::to_string(j) + ": summands have dim " +
                      std::to_string(total) + ", product has " + std::to_string(prod.dim);
          }
        }
      check("rep_theory", dims_ok, "fusion dimensions add up", std::to_string(k) + " irreducibles", witness,
            FailureKind::tolerance);
      pass("rep_theory", "fusion table", table);
    }
  }

  void invariants_of(const KacAlgebra &a, const IrrepCatalog &cat) {
    const auto inv = invariant_groups(a, cat);
    const std::string got_i = inv.intrinsic_name + " (order " + std::to_string(inv.intrinsic.order()) + ")";
    const std::string want_i =
        group_name(inv.intrinsic_model) + " (order " + std::to_string(inv.intrinsic_model.order()) + ")";
    check("rep_theory", inv.intrinsic_matches, "Int(G) = Sp(G) x|_alpha Gamma^beta",
          "Int " + got_i + ", formula " + want_i, "Int " + got_i + " is not isomorphic to " + want_i);
    const std::string got_s = inv.spectrum_name + " (order " + std::to_string(inv.spectrum.order()) + ")";
    const std::string want_s =
        group_name(inv.spectrum_model) + " (order " + std::to_string(inv.spectrum_model.order()) + ")";
    check("rep_theory", inv.spectrum_matches, "chi(G) = G^alpha |x_beta Sp(Gamma)",
          "spectrum " + got_s + ", formula " + want_s, "spectrum " + got_s + " is not isomorphic to " + want_s);
    check("rep_theory", inv.group_like_ok, "intrinsic elements are group-like",
          std::to_string(inv.intrinsic_elements.size()) + " unitaries", "Delta(u) != u (x) u");
  }

  void invariants() {
    const auto p = pair(0);
    const KacAlgebra a(p.pair);
    invariants_of(a, catalog_for(p.pair, a));
  }

  void deform() {
    const auto p = pair(0);
    if (!p.recipe)
      throw ValidationError("deform: " + p.path + " is not a deformation recipe");
    const auto &base = p.recipe->base;
    pass("matched_pair", "crossed homomorphism",
         "base |Gamma| = " + std::to_string(base.n_gamma()) + ", |G| = " + std::to_string(base.n_g()));
    const auto &mp = p.pair;
    check("matched_pair", !mp.violation(), "deformed matched pair",
          "|Gamma| = " + std::to_string(mp.n_gamma()) + ", |G| = " + std::to_string(mp.n_g()) + ", alpha " +
              (mp.alpha_trivial() ? "trivial" : "nontrivial") + ", beta " +
              (mp.beta_trivial() ? "trivial" : "nontrivial"),
          mp.violation().value_or(""));
    const KacAlgebra a(mp);
    const auto rep = check_axioms(a);
    double worst = 0;
    std::string witness;
    for (const auto &r : rep.results)
      if (r.max_deviation > worst) {
        worst = r.max_deviation;
        witness = r.name + ": " + r.witness;
      }
    within("kac_algebra", "axioms on the deformation", worst, cfg.tolerances.axiom,
           std::to_string(rep.results.size()) + " identities")
        .witness = worst < cfg.tolerances.axiom ? "" : witness;
    invariants_of(a, catalog_for(mp, a));
  }

  void crossed() {
    const auto p = pair(0);
    require_small(p.pair);
    const auto c = crossed_instance(p.pair, cfg.seed);
    const auto &ring = c.ring.ring;
    const auto rc = check_ring(ring);
    check("crossed_product", rc.ok(), "crossed fusion ring laws", std::to_string(ring.size()) + " labels",
          rc.ok() ? "" : rc.failures.front());
    const auto av = action_violation(c.ring.base, c.ring.action);
    check("crossed_product", !av, "Gamma acts by ring automorphisms", "", av.value_or(""));

    const int nb = c.ring.base.size();
    const int n = ring.size();
    if (n <= int_option("max-labels", 24)) {
      std::string witness;
      long long checked = 0;
      for (int x = 0; x < n && witness.empty(); ++x)
        for (int y = 0; y < n && witness.empty(); ++y) {
          const auto prod =
              tensor_product(c.algebra, crossed_corep(c, x / nb, x % nb), crossed_corep(c, y / nb, y % nb));
          for (int z = 0; z < n; ++z) {
            const int m = mor_dim_haar(c.algebra, crossed_corep(c, z / nb, z % nb), prod,
                                       cfg.tolerances.integer_residual);
            ++checked;
            if (m != ring.N(x, y, z)) {
              witness = "N(" + ring.labels[x] + ", " + ring.labels[y] + ", " + ring.labels[z] + ") = " +
                        std::to_string(ring.N(x, y, z)) + " but dim Mor = " + std::to_string(m);
              break;
            }
          }
        }
      check("crossed_product", witness.empty(), "crossed multiplicities = dim Mor in the algebra",
            std::to_string(checked) + " triples", witness, FailureKind::tolerance);
    }

    const int samples = int_option("samples", 10);
    std::vector<int> labels(n), dims(n);
    for (int x = 0; x < n; ++x) {
      labels[x] = x;
      dims[x] = static_cast<int>(std::lround(ring.dims[x]));
    }
    Rng rng(cfg.seed);
    LemmaReport worst;
    for (int s = 0; s < samples; ++s) {
      const auto a = random_dual_element(labels, dims, rng);
      const auto r = check_lemma_fourier(c, a, 1.0); // judged below against the configured tolerance
      worst.transform_deviation = std::max(worst.transform_deviation, r.transform_deviation);
      worst.norm_deviation = std::max(worst.norm_deviation, r.norm_deviation);
      worst.parseval_deviation = std::max(worst.parseval_deviation, r.parseval_deviation);
    }
    const double tol = cfg.tolerances.axiom;
    auto &e = check("crossed_product", worst.pass(tol), "Fourier decomposition",
                    std::to_string(samples) + " seeded dual elements",
                    "deviation above " + sci(tol), FailureKind::tolerance);
    e.residuals = {{"transform", worst.transform_deviation},
                   {"sobolev-0 norm", worst.norm_deviation},
                   {"parseval", worst.parseval_deviation}};

    const auto ci = crossed_invariant_groups(c);
    const auto &inv = ci.computed;
    check("crossed_product", ci.intrinsic_matches, "Int = Int(G) x| Gamma",
          "Int " + inv.intrinsic_name + " (order " + std::to_string(inv.intrinsic.order()) + "), formula " +
              group_name(ci.intrinsic_model),
          "not isomorphic to " + group_name(ci.intrinsic_model));
    check("crossed_product", ci.spectrum_matches, "chi = chi(G)^alpha x Sp(Gamma)",
          "spectrum " + inv.spectrum_name + " (order " + std::to_string(inv.spectrum.order()) + "), formula " +
              group_name(ci.spectrum_model),
          "not isomorphic to " + group_name(ci.spectrum_model));
  }

  void audit() {
    const auto p = pair(0);
    const KacAlgebra a(p.pair);
    const auto cat = catalog_for(p.pair, a);
    const auto au = audit_fusion(a, cat, cfg.caps.audit_unknowns);
    check("rep_theory", au.oracle_agreement, "Mor dimension oracles agree",
          std::to_string(au.triples_checked) + " triples checked, " + std::to_string(au.triples_skipped) +
              " above the solver cap",
          au.oracle_failures.empty() ? "" : au.oracle_failures.front(), FailureKind::tolerance);
    for (const auto &e : au.entries) {
      ReportEntry r;
      r.status = e.status == AuditStatus::agree ? Status::audit_agree : Status::audit_disagree;
      r.name = e.claim;
      if (e.status == AuditStatus::disagree)
        r.witness = e.detail;
      else
        r.detail = e.detail;
      report.add("audit", std::move(r));
    }
  }

  void shadow() {
    const std::string sub = cmd.sub.empty() ? (cmd.inputs.empty() ? "" : cmd.inputs.front()) : cmd.sub;
    if (sub == "chebyshev") {
      const int n = int_option("N", 3);
      const int cutoff = int_option("cutoff", 10);
      const auto state = chebyshev_state(n, parse_rational(option("t", "2")), cutoff);
      std::string values;
      for (std::size_t k = 0; k < state.values.size(); ++k)
        values += (k ? ", " : "") + to_string(state.values[k]);
      pass("approx_props", "P_k(t)/P_k(N) at N=" + std::to_string(n) + ", t=" + option("t", "2"), values);
      check("approx_props", state.strictly_decreasing_from_one(), "strictly decreasing, starting at 1",
            "k = 0.." + std::to_string(cutoff), "sequence is not strictly decreasing");
      if (const auto eps = option("eps", ""); !eps.empty()) {
        const auto k = state.c0_profile(std::stod(eps));
        pass("approx_props", "c0 profile at eps=" + eps,
             k ? "below eps from k = " + std::to_string(*k) : "not below eps up to the cutoff");
      }
    } else if (sub == "tv") {
      const auto &first = input(cmd.sub.empty() ? 1 : 0, "measure file");
      const auto &second = input(cmd.sub.empty() ? 2 : 1, "measure file");
      const auto m1 = load_measure(first, cfg.caps), m2 = load_measure(second, cfg.caps);
      if (!(m1.group == m2.group))
        throw ValidationError("tv: measures live on different groups");
      pass("approx_props", "tv distance", to_string(tv_distance(m1.measure, m2.measure)));
    } else if (sub == "obstruction") {
      const auto g = load_group(input(cmd.sub.empty() ? 1 : 0, "group file"), cfg.caps);
      const auto rep = rel_T_obstruction(g.group, int_option("denominator", 4), int_option("samples", 200),
                                         cfg.seed);
      check("approx_props", rep.certified(), "tv(mu, delta_e) = 2 whenever mu(e) = 0",
            std::to_string(rep.grid_checked) + " grid, " + std::to_string(rep.mixed_checked) + " mixed, " +
                std::to_string(rep.sampled) + " sampled measures; minimum " + to_string(rep.worst_distance),
            rep.failures.empty() ? "minimum " + to_string(rep.worst_distance) : rep.failures.front());
    } else if (sub == "pushforward") {
      const std::size_t base = cmd.sub.empty() ? 1 : 0;
      const auto m = load_measure(input(base, "measure file"), cfg.caps);
      const auto p = load_pair(input(base + 1, "matched-pair file"), cfg.caps);
      if (!(m.group == p.pair.g()))
        throw ValidationError("pushforward: the measure does not live on G of the pair");
      const auto gamma_label = option("gamma", "");
      std::optional<Elem> r = gamma_label.empty() ? std::optional<Elem>(p.pair.gamma().identity())
                                                  : p.pair.gamma().find_label(gamma_label);
      if (!r)
        throw ValidationError("pushforward: no element '" + gamma_label + "' in Gamma");
      const auto out = pushforward(m.measure, *r, p.pair);
      std::string w;
      for (int x = 0; x < p.pair.n_g(); ++x)
        if (out.weights[x] != 0)
          w += p.pair.g().label(x) + ": " + to_string(out.weights[x]) + "\n";
      pass("approx_props", "alpha_" + p.pair.gamma().label(*r) + " mu", w);
    } else {
      throw ValidationError("shadow: unknown subcommand '" + sub + "' (chebyshev, tv, obstruction, pushforward)");
    }
  }
};

} // namespace

Report run_pipeline(const Command &cmd, const RunConfig &config) {
  static const std::set<std::string> known = {"validate", "build",   "irreps", "fusion", "invariants",
                                              "deform",   "crossed", "audit",  "shadow"};
  if (!known.count(cmd.name))
    throw ValidationError("unknown command '" + cmd.name + "'");
  Runner run{cmd, config, {}};
  run.report.command = cmd.name + (cmd.sub.empty() ? "" : " " + cmd.sub);
  run.report.inputs = cmd.inputs;
  run.report.seed = config.seed;
  const std::string module = cmd.name == "shadow" ? "approx_props" : "io";
  run.guarded(module, cmd.name, [&] {
    config.validate();
    if (cmd.name == "validate")
      run.validate();
    else if (cmd.name == "build")
      run.build();
    else if (cmd.name == "irreps")
      run.irreps();
    else if (cmd.name == "fusion")
      run.fusion();
    else if (cmd.name == "invariants")
      run.invariants();
    else if (cmd.name == "deform")
      run.deform();
    else if (cmd.name == "crossed")
      run.crossed();
    else if (cmd.name == "audit")
      run.audit();
    else
      run.shadow();
  });
  return run.report;
}

} // namespace kacforge
