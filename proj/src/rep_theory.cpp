#include "kacforge/rep_theory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <tuple>
#include <unordered_map>

#include "kacforge/abelian.hpp"
#include "kacforge/errors.hpp"

namespace kacforge {

namespace {

constexpr double kZero = 1e-14;

using SparseVec = std::vector<std::pair<int, cplx>>;

SparseVec nonzeros(const AlgebraElement &x) {
  SparseVec out;
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > kZero)
      out.emplace_back(i, x[i]);
  return out;
}

double max_abs(const std::unordered_map<long long, cplx> &m) {
  double worst = 0;
  for (const auto &[k, v] : m)
    worst = std::max(worst, std::abs(v));
  return worst;
}

// Coefficient slices: slices[b] lists (i, j, coef) with coef the b-coordinate of w_ij.
std::vector<std::vector<std::tuple<int, int, cplx>>> slices(const KacAlgebra &a,
                                                            const Corepresentation &w) {
  std::vector<std::vector<std::tuple<int, int, cplx>>> out(a.dim());
  for (int i = 0; i < w.dim; ++i)
    for (int j = 0; j < w.dim; ++j)
      for (const auto &[b, c] : nonzeros(w.at(i, j)))
        out[b].emplace_back(i, j, c);
  return out;
}

} // namespace

double coaction_defect(const KacAlgebra &a, const Corepresentation &w) {
  const long long d = a.dim();
  std::vector<SparseVec> nz(w.entries.size());
  for (std::size_t k = 0; k < nz.size(); ++k)
    nz[k] = nonzeros(w.entries[k]);
  auto entry = [&](int i, int j) -> const SparseVec & { return nz[static_cast<std::size_t>(i) * w.dim + j]; };
  double worst = 0;
  for (int i = 0; i < w.dim; ++i)
    for (int j = 0; j < w.dim; ++j) {
      std::unordered_map<long long, cplx> diff;
      for (const auto &[b, c] : entry(i, j))
        for (const auto &[b1, b2] : a.coproduct(b))
          diff[b1 * d + b2] += c;
      for (int k = 0; k < w.dim; ++k)
        for (const auto &[p, c] : entry(i, k))
          for (const auto &[q, e] : entry(k, j))
            diff[p * d + q] -= c * e;
      worst = std::max(worst, max_abs(diff));
    }
  return worst;
}

double unitarity_defect(const KacAlgebra &a, const Corepresentation &w) {
  double worst = 0;
  const AlgebraElement one = a.unit();
  std::vector<AlgebraElement> adj(w.entries.size());
  for (std::size_t k = 0; k < adj.size(); ++k)
    adj[k] = a.adjoint(w.entries[k]);
  auto star = [&](int i, int j) -> const AlgebraElement & { return adj[static_cast<std::size_t>(i) * w.dim + j]; };
  for (int i = 0; i < w.dim; ++i)
    for (int j = 0; j < w.dim; ++j) {
      AlgebraElement rows = a.zero(), cols = a.zero();
      for (int k = 0; k < w.dim; ++k) {
        rows += a.multiply(w.at(i, k), star(j, k));
        cols += a.multiply(star(k, i), w.at(k, j));
      }
      if (i == j) {
        rows -= one;
        cols -= one;
      }
      worst = std::max({worst, rows.cwiseAbs().maxCoeff(), cols.cwiseAbs().maxCoeff()});
    }
  return worst;
}

AlgebraElement character(const Corepresentation &w) {
  AlgebraElement chi = AlgebraElement::Zero(w.entries.empty() ? 0 : w.entries[0].size());
  for (int i = 0; i < w.dim; ++i)
    chi += w.at(i, i);
  return chi;
}

Corepresentation tensor_product(const KacAlgebra &a, const Corepresentation &u,
                                const Corepresentation &w) {
  Corepresentation out;
  out.label = u.label + " (x) " + w.label;
  out.dim = u.dim * w.dim;
  out.unitary = u.unitary && w.unitary;
  out.entries.resize(static_cast<std::size_t>(out.dim) * out.dim);
  for (int i = 0; i < u.dim; ++i)
    for (int j = 0; j < u.dim; ++j)
      for (int k = 0; k < w.dim; ++k)
        for (int l = 0; l < w.dim; ++l)
          out.at(i * w.dim + k, j * w.dim + l) = a.multiply(u.at(i, j), w.at(k, l));
  return out;
}

Corepresentation compress(const Corepresentation &w, const CMatrix &p, std::string label) {
  Corepresentation out;
  out.label = std::move(label);
  out.dim = static_cast<int>(p.cols());
  out.unitary = w.unitary;
  const auto zero = AlgebraElement::Zero(w.entries[0].size());
  out.entries.assign(static_cast<std::size_t>(out.dim) * out.dim, zero);
  for (int i = 0; i < w.dim; ++i)
    for (int j = 0; j < w.dim; ++j) {
      const auto &e = w.at(i, j);
      if (e.cwiseAbs().maxCoeff() < kZero)
        continue;
      for (int s = 0; s < out.dim; ++s)
        for (int t = 0; t < out.dim; ++t) {
          const cplx c = std::conj(p(i, s)) * p(j, t);
          if (std::abs(c) > kZero)
            out.at(s, t) += c * e;
        }
    }
  return out;
}

Corepresentation unit_corep(const KacAlgebra &a) { return {"1", 1, {a.unit()}, true}; }

Corepresentation orbit_corep(const KacAlgebra &a, const std::vector<Elem> &orbit) {
  const auto &mp = a.pair();
  Corepresentation v;
  v.label = "V(" + mp.gamma().label(orbit.front()) + ")";
  v.dim = static_cast<int>(orbit.size());
  v.entries.assign(static_cast<std::size_t>(v.dim) * v.dim, a.zero());
  for (int i = 0; i < v.dim; ++i)
    for (int x = 0; x < mp.n_g(); ++x) {
      const Elem s = mp.beta(x, orbit[i]);
      const auto j = std::find(orbit.begin(), orbit.end(), s) - orbit.begin();
      if (j == v.dim)
        throw ValidationError("orbit is not beta-stable");
      v.at(i, static_cast<int>(j))[a.basis(orbit[i], x)] = 1.0;
    }
  return v;
}

Corepresentation irrep_corep(const KacAlgebra &a, const MatrixIrrep &x) {
  const auto &mp = a.pair();
  Corepresentation v;
  v.label = "v" + std::to_string(x.label);
  v.dim = x.dim;
  v.entries.assign(static_cast<std::size_t>(v.dim) * v.dim, a.zero());
  for (int i = 0; i < v.dim; ++i)
    for (int j = 0; j < v.dim; ++j)
      for (int g = 0; g < mp.n_g(); ++g)
        v.at(i, j)[a.basis(mp.gamma().identity(), g)] = x.matrices[g](i, j);
  return v;
}

CandidateSet build_candidates(const KacAlgebra &a, std::uint64_t seed) {
  const auto &mp = a.pair();
  CandidateSet c;
  c.orbits = orbits_fixed_sets(mp).orbits.orbits;
  c.table = character_table(mp.g(), seed);
  c.irreps = matrix_irreps(mp.g(), c.table, seed);
  for (const auto &o : c.orbits)
    c.orbit_reps.push_back(orbit_corep(a, o));
  for (const auto &x : c.irreps)
    c.irrep_reps.push_back(irrep_corep(a, x));
  for (std::size_t o = 0; o < c.orbits.size(); ++o)
    for (std::size_t x = 0; x < c.irreps.size(); ++x)
      c.candidates.push_back({static_cast<int>(o), static_cast<int>(x),
                              tensor_product(a, c.orbit_reps[o], c.irrep_reps[x])});
  return c;
}

int mor_dim_haar(const KacAlgebra &a, const Corepresentation &u, const Corepresentation &w,
                 double tol) {
  if (!u.unitary || !w.unitary)
    throw ValidationError("character pairing needs unitary corepresentations");
  const cplx v = a.haar(a.multiply(a.adjoint(character(u)), character(w)));
  const double rounded = std::round(v.real());
  const double residual = std::max(std::abs(v.real() - rounded), std::abs(v.imag()));
  if (residual > tol)
    throw NonIntegral("h(chi(u)* chi(w)) = " + std::to_string(v.real()) + " + " +
                      std::to_string(v.imag()) + "i is not an integer");
  return static_cast<int>(rounded);
}

MorSpace mor_dim_solver(const KacAlgebra &a, const Corepresentation &u, const Corepresentation &w,
                        double tol) {
  const int du = u.dim, dw = w.dim, n = du * dw;
  const auto su = slices(a, u), sw = slices(a, w);
  // M = (sum conj(U_b) U_b^T) (x) I + I (x) (sum W_b* W_b) - C - C*,  C = sum conj(U_b) (x) W_b
  CMatrix uu = CMatrix::Zero(du, du), ww = CMatrix::Zero(dw, dw), cross = CMatrix::Zero(n, n);
  for (int b = 0; b < a.dim(); ++b) {
    for (const auto &[i, j, c] : su[b])
      for (const auto &[k, l, e] : su[b])
        if (j == l)
          uu(i, k) += std::conj(c) * e;
    for (const auto &[i, j, c] : sw[b])
      for (const auto &[k, l, e] : sw[b])
        if (i == k)
          ww(j, l) += std::conj(c) * e;
    for (const auto &[i, j, c] : su[b])
      for (const auto &[k, l, e] : sw[b])
        cross(i * dw + k, j * dw + l) += std::conj(c) * e;
  }
  CMatrix m = -cross - cross.adjoint();
  for (int i = 0; i < du; ++i)
    for (int j = 0; j < du; ++j)
      for (int k = 0; k < dw; ++k)
        m(i * dw + k, j * dw + k) += uu(i, j);
  for (int i = 0; i < du; ++i)
    m.block(i * dw, i * dw, dw, dw) += ww;

  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  MorSpace out;
  out.gap = std::numeric_limits<double>::infinity();
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  for (int k = 0; k < n; ++k) {
    if (es.eigenvalues()[k] < tol * scale) {
      const auto v = es.eigenvectors().col(k);
      CMatrix t(dw, du);
      for (int j = 0; j < du; ++j)
        for (int l = 0; l < dw; ++l)
          t(l, j) = v[j * dw + l];
      out.basis.push_back(t);
    } else {
      out.gap = std::min(out.gap, es.eigenvalues()[k]);
    }
  }
  out.dim = static_cast<int>(out.basis.size());
  return out;
}

namespace {

// Splits w into irreducible pieces via eigenspaces of a random self-adjoint
// element of End(w).
void decompose(const KacAlgebra &a, const Corepresentation &w, Rng &rng,
               std::vector<Corepresentation> &pieces, int depth = 0) {
  const auto end = mor_dim_solver(a, w, w);
  if (end.dim <= 1) {
    pieces.push_back(w);
    return;
  }
  if (depth > 8)
    throw PeterWeylMismatch("decomposition of " + w.label + " does not terminate");
  CMatrix h = CMatrix::Zero(w.dim, w.dim);
  for (const auto &t : end.basis)
    h += cplx(rng.symmetric(), rng.symmetric()) * t;
  h = (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const auto &ev = es.eigenvalues();
  const double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int start = 0;
  for (int k = 1; k <= w.dim; ++k) {
    if (k < w.dim && ev[k] - ev[k - 1] < 1e-6 * spread)
      continue;
    const CMatrix p = es.eigenvectors().middleCols(start, k - start);
    auto sub = compress(w, p, w.label + "[" + std::to_string(pieces.size()) + "]");
    decompose(a, sub, rng, pieces, depth + 1);
    start = k;
  }
}

int numeric_rank(const CMatrix &m, double tol = 1e-8) {
  Eigen::ColPivHouseholderQR<CMatrix> qr(m);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

} // namespace

IrrepCatalog enumerate_irreps(const KacAlgebra &a, std::uint64_t seed) {
  IrrepCatalog cat;
  cat.candidates = build_candidates(a, seed);
  Rng rng(seed ^ 0x5eedULL);
  for (const auto &cand : cat.candidates.candidates) {
    std::vector<Corepresentation> pieces;
    cat.end_dims.push_back(mor_dim_solver(a, cand.rep, cand.rep).dim);
    decompose(a, cand.rep, rng, pieces);
    std::vector<int> ids;
    for (auto &piece : pieces) {
      int id = -1;
      for (std::size_t c = 0; c < cat.canonical.size() && id < 0; ++c)
        if (cat.canonical[c].dim == piece.dim && mor_dim_haar(a, piece, cat.canonical[c]) == 1)
          id = static_cast<int>(c);
      if (id < 0) {
        id = static_cast<int>(cat.canonical.size());
        piece.label = "irr" + std::to_string(id) + " <" + piece.label + ">";
        cat.canonical.push_back(std::move(piece));
      }
      ids.push_back(id);
    }
    cat.equivalence_map.push_back(std::move(ids));
  }
  for (const auto &c : cat.canonical)
    cat.dim_squares += static_cast<long long>(c.dim) * c.dim;
  const long long expected = a.dim();
  if (cat.dim_squares != expected)
    throw PeterWeylMismatch("sum of squared dimensions is " + std::to_string(cat.dim_squares) +
                            ", expected " + std::to_string(expected));
  CMatrix span(a.dim(), cat.dim_squares);
  int col = 0;
  for (const auto &c : cat.canonical)
    for (const auto &e : c.entries)
      span.col(col++) = e;
  cat.coefficient_rank = numeric_rank(span);
  if (cat.coefficient_rank != a.dim())
    throw PeterWeylMismatch("coefficients of the irreducibles span a subspace of dimension " +
                            std::to_string(cat.coefficient_rank));
  return cat;
}

FormulaValue fusion_closed_form(const KacAlgebra &a, const CandidateSet &c, int gamma_orbit,
                                  int x, int r_orbit, int s_orbit, double tol) {
  const auto &mp = a.pair();
  const auto b = b_sets(mp);
  const auto &og = c.orbits[gamma_orbit];
  double total = 0, imag = 0;
  for (Elem s1 : c.orbits[s_orbit])
    for (Elem r1 : c.orbits[r_orbit]) {
      const Elem t = mp.gamma().mul(r1, s1);
      if (std::find(og.begin(), og.end(), t) == og.end())
        continue;
      cplx integral = 0;
      for (Elem g : b[r1][s1])
        integral += std::conj(c.table.value(x, g));
      integral /= static_cast<double>(mp.n_g());
      total += integral.real();
      imag += integral.imag();
    }
  FormulaValue v;
  v.value = total;
  v.rounded = static_cast<int>(std::lround(total));
  v.residual = std::max(std::abs(total - v.rounded), std::abs(imag));
  if (v.residual > tol)
    throw NonIntegral("fusion formula value " + std::to_string(total) + " is not an integer");
  return v;
}

std::string to_string(AuditStatus s) {
  return s == AuditStatus::agree ? "AUDIT-AGREE" : "AUDIT-DISAGREE";
}

namespace {

std::string matrix_text(const CMatrix &t) {
  std::string out = "[";
  for (int i = 0; i < t.rows(); ++i) {
    out += i ? "; " : "";
    for (int j = 0; j < t.cols(); ++j) {
      char buf[64];
      const cplx z = t(i, j);
      if (std::abs(z.imag()) < 1e-9)
        std::snprintf(buf, sizeof buf, "%s%.6g", j ? " " : "", z.real() + 0.0);
      else
        std::snprintf(buf, sizeof buf, "%s%.6g%+.6gi", j ? " " : "", z.real(), z.imag());
      out += buf;
    }
  }
  return out + "]";
}

// Scales an intertwiner so that its largest entry is real and positive with unit modulus.
CMatrix normalize_phase(const CMatrix &t) {
  Eigen::Index r = 0, c = 0;
  t.cwiseAbs().maxCoeff(&r, &c);
  return t / t(r, c);
}

} // namespace

FusionAudit audit_fusion(const KacAlgebra &a, const IrrepCatalog &catalog, int unknown_cap) {
  FusionAudit audit;
  const auto &cs = catalog.candidates;
  const auto &cands = cs.candidates;
  const int nc = static_cast<int>(cands.size());

  // Irreducibility and pairwise distinctness of the candidates.
  for (int i = 0; i < nc; ++i) {
    const int e = catalog.end_dims[i];
    if (e != 1)
      audit.entries.push_back({AuditStatus::disagree, "candidate " + cands[i].rep.label + " is irreducible",
                               "dim End = " + std::to_string(e)});
  }
  int equal_pairs = 0;
  for (int i = 0; i < nc; ++i)
    for (int j = i + 1; j < nc; ++j) {
      const auto &u = cands[i].rep, &w = cands[j].rep;
      if (u.dim != w.dim || catalog.end_dims[i] != 1 || catalog.end_dims[j] != 1)
        continue;
      const int h = mor_dim_haar(a, u, w);
      if (h == 0)
        continue;
      ++equal_pairs;
      const auto mor = mor_dim_solver(a, u, w);
      audit.entries.push_back(
          {AuditStatus::disagree, "candidates " + u.label + " and " + w.label + " are distinct",
           "dim Mor = " + std::to_string(h) + ", intertwiner " +
               (mor.basis.empty() ? std::string("none") : matrix_text(normalize_phase(mor.basis[0])))});
    }
  if (equal_pairs == 0)
    audit.entries.push_back({AuditStatus::agree, "candidates are pairwise distinct",
                             std::to_string(nc) + " candidates"});

  // Triples: dim Mor(c1, c2 (x) c3) by the solver against the character pairing.
  for (int i = 0; i < nc; ++i)
    for (int j = 0; j < nc; ++j)
      for (int k = 0; k < nc; ++k) {
        const auto &c1 = cands[i].rep, &c2 = cands[j].rep, &c3 = cands[k].rep;
        if (c1.dim * c2.dim * c3.dim > unknown_cap) {
          ++audit.triples_skipped;
          continue;
        }
        const auto t = tensor_product(a, c2, c3);
        const int solver = mor_dim_solver(a, c1, t).dim;
        const int haar = mor_dim_haar(a, c1, t);
        ++audit.triples_checked;
        if (solver != haar) {
          audit.oracle_agreement = false;
          audit.oracle_failures.push_back("Mor(" + c1.label + ", " + t.label + "): solver " +
                                          std::to_string(solver) + ", character " +
                                          std::to_string(haar));
        }
      }

  // The quoted fusion formula against the solver on V^gamma (x) v^x versus V^r (x) V^s.
  const int no = static_cast<int>(cs.orbits.size()), nx = static_cast<int>(cs.irreps.size());
  int formula_ok = 0, formula_bad = 0;
  for (int g = 0; g < no; ++g)
    for (int x = 0; x < nx; ++x)
      for (int r = 0; r < no; ++r)
        for (int s = 0; s < no; ++s) {
          const auto &lhs = cands[cs.find(g, x)].rep;
          const auto rhs = tensor_product(a, cs.orbit_reps[r], cs.orbit_reps[s]);
          if (lhs.dim * rhs.dim > unknown_cap)
            continue;
          const int oracle = mor_dim_solver(a, lhs, rhs).dim;
          const auto f = fusion_closed_form(a, cs, g, x, r, s);
          if (f.rounded == oracle) {
            ++formula_ok;
          } else {
            ++formula_bad;
            audit.entries.push_back({AuditStatus::disagree,
                                     "fusion formula for Mor(" + lhs.label + ", " + rhs.label + ")",
                                     "formula " + std::to_string(f.rounded) + ", solver " +
                                         std::to_string(oracle)});
          }
        }
  if (formula_bad == 0)
    audit.entries.push_back({AuditStatus::agree, "fusion formula",
                             std::to_string(formula_ok) + " evaluations match the solver"});

  // Flip bijections: V^o (x) v^x ~ v^x' (x) V^o' with a unique (x', o').
  int flips_found = 0, flips_bad = 0;
  for (int o = 0; o < no; ++o)
    for (int x = 0; x < nx; ++x) {
      const auto &u = cands[cs.find(o, x)].rep;
      std::vector<std::pair<int, int>> hits;
      for (int o2 = 0; o2 < no; ++o2)
        for (int x2 = 0; x2 < nx; ++x2) {
          if (cs.irrep_reps[x2].dim * cs.orbit_reps[o2].dim != u.dim)
            continue;
          const auto w = tensor_product(a, cs.irrep_reps[x2], cs.orbit_reps[o2]);
          if (mor_dim_haar(a, u, w) == 1 && catalog.end_dims[cs.find(o, x)] == 1)
            hits.emplace_back(x2, o2);
        }
      if (hits.size() == 1) {
        ++flips_found;
      } else {
        ++flips_bad;
        audit.entries.push_back({AuditStatus::disagree, "unique flip for " + u.label,
                                 std::to_string(hits.size()) + " matches"});
      }
    }
  if (flips_bad == 0)
    audit.entries.push_back({AuditStatus::agree, "flip bijections",
                             std::to_string(flips_found) + " unique flips found"});
  return audit;
}

std::string group_name(const FiniteGroup &g) {
  if (g.is_abelian())
    return abelian_structure(g).name();
  const int n = g.order();
  if (n == 6)
    return "S3";
  if (n == 8)
    return is_isomorphic_small(g, quaternion_group()) ? "Q8" : "D4";
  if (n == 24 && is_isomorphic_small(g, symmetric_group(4)))
    return "S4";
  if (n == 12 && is_isomorphic_small(g, alternating_group(4)))
    return "A4";
  if (n % 2 == 0 && n <= kIsomorphismCap && is_isomorphic_small(g, dihedral_group(n / 2)))
    return "D" + std::to_string(n / 2);
  if (n % 6 == 0 && n <= kIsomorphismCap &&
      is_isomorphic_small(g, direct_product(symmetric_group(3), cyclic_group(n / 6))))
    return "S3 x Z/" + std::to_string(n / 6);
  return "order " + std::to_string(n);
}

InvariantGroups invariant_groups(const KacAlgebra &a, const IrrepCatalog &catalog) {
  const auto &mp = a.pair();
  InvariantGroups out;

  // Intrinsic group: the one-dimensional irreducibles under multiplication.
  for (const auto &c : catalog.canonical)
    if (c.dim == 1)
      out.intrinsic_elements.push_back(c.entries[0]);
  auto &elems = out.intrinsic_elements;
  const int ni = static_cast<int>(elems.size());
  auto locate = [&](const AlgebraElement &x) {
    for (int k = 0; k < ni; ++k)
      if ((elems[k] - x).cwiseAbs().maxCoeff() < 1e-8)
        return k;
    throw ValidationError("one-dimensional corepresentations are not closed under tensor products");
  };
  {
    const int e = locate(a.unit());
    std::swap(elems[0], elems[e]);
    std::vector<Elem> table(static_cast<std::size_t>(ni) * ni);
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < ni; ++j)
        table[static_cast<std::size_t>(i) * ni + j] = locate(a.multiply(elems[i], elems[j]));
    out.intrinsic = FiniteGroup::from_flat_table(ni, std::move(table), {}, GroupSource::derived);
    for (const auto &u : elems)
      if ((a.comultiply(u) - a.tensor(u, u)).cwiseAbs().maxCoeff() > 1e-9)
        out.group_like_ok = false;
  }

  // Spectrum: functionals phi(u_r d_g) = mu(r) [g = g0], kept when multiplicative and *-preserving.
  const auto spg = dual_group(mp.gamma());
  const int e = spg.exponent;
  for (int g0 = 0; g0 < mp.n_g(); ++g0)
    for (int c = 0; c < static_cast<int>(spg.characters.size()); ++c) {
      const auto &k = spg.characters[c];
      auto phi = [&](int b) { return a.g_of(b) == g0 ? k[a.gamma_of(b)] : -1; };
      bool ok = true;
      for (int x = 0; x < a.dim() && ok; ++x) {
        const int px = phi(x);
        const int ps = phi(a.star(x));
        ok = (px < 0) == (ps < 0) && (px < 0 || (px + ps) % e == 0);
        for (int y = 0; y < a.dim() && ok; ++y) {
          const int xy = a.mul(x, y);
          const int lhs = xy < 0 ? -1 : phi(xy);
          const int py = phi(y);
          const int rhs = px < 0 || py < 0 ? -1 : (px + py) % e;
          ok = lhs == rhs;
        }
      }
      if (ok)
        out.spectrum_points.emplace_back(g0, c);
    }
  {
    const auto &pts = out.spectrum_points;
    const int ns = static_cast<int>(pts.size());
    auto values = [&](int i) {
      AlgebraElement v = a.zero();
      for (int b = 0; b < a.dim(); ++b)
        if (a.g_of(b) == pts[i].first)
          v[b] = spg.value(pts[i].second, a.gamma_of(b));
      return v;
    };
    std::vector<AlgebraElement> vals(ns);
    for (int i = 0; i < ns; ++i)
      vals[i] = values(i);
    auto find = [&](const AlgebraElement &v) {
      for (int i = 0; i < ns; ++i)
        if ((vals[i] - v).cwiseAbs().maxCoeff() < 1e-9)
          return i;
      throw ValidationError("characters are not closed under convolution");
    };
    std::vector<Elem> table(static_cast<std::size_t>(ns) * ns);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j) {
        AlgebraElement conv = a.zero();
        for (int b = 0; b < a.dim(); ++b)
          for (const auto &[b1, b2] : a.coproduct(b))
            conv[b] += vals[i][b1] * vals[j][b2];
        table[static_cast<std::size_t>(i) * ns + j] = find(conv);
      }
    std::vector<std::string> labels;
    for (const auto &[g0, c] : pts)
      labels.push_back("(" + mp.g().label(g0) + ", mu" + std::to_string(c) + ")");
    // The counit (e, trivial) must be the identity element.
    out.spectrum = FiniteGroup::from_flat_table(ns, std::move(table), labels, GroupSource::derived);
  }

  // Independent models from the fixed-point subgroups and the dual groups.
  const auto fs = orbits_fixed_sets(mp);
  const auto spG = dual_group(mp.g());
  {
    const auto &q = fs.gamma_beta;
    std::vector<std::vector<Elem>> action;
    for (Elem r : q.embedding) {
      std::vector<Elem> perm;
      const Elem rinv = mp.gamma().inv(r);
      for (const auto &w : spG.characters) {
        std::vector<int> moved(w.size());
        for (int g = 0; g < mp.n_g(); ++g)
          moved[g] = w[mp.alpha(rinv, g)];
        perm.push_back(spG.find(moved));
      }
      action.push_back(std::move(perm));
    }
    out.intrinsic_model = semidirect_product(spG.group, q.group, action);
  }
  {
    const auto &q = fs.g_alpha;
    std::vector<std::vector<Elem>> action;
    for (Elem g : q.embedding) {
      std::vector<Elem> perm;
      for (const auto &mu : spg.characters) {
        std::vector<int> moved(mu.size());
        for (int r = 0; r < mp.n_gamma(); ++r)
          moved[r] = mu[mp.beta(g, r)];
        perm.push_back(spg.find(moved));
      }
      action.push_back(std::move(perm));
    }
    out.spectrum_model = semidirect_product(spg.group, q.group, action);
  }
  out.intrinsic_matches = is_isomorphic_small(out.intrinsic, out.intrinsic_model);
  out.spectrum_matches = is_isomorphic_small(out.spectrum, out.spectrum_model);
  out.intrinsic_name = group_name(out.intrinsic);
  out.spectrum_name = group_name(out.spectrum);
  return out;
}

Corepresentation push_forward(const AlgebraMorphism &rho, const Corepresentation &w) {
  Corepresentation out;
  out.label = "rho(" + w.label + ")";
  out.dim = w.dim;
  out.unitary = w.unitary;
  for (const auto &e : w.entries)
    out.entries.push_back(rho.matrix * e);
  return out;
}

Branching branching_sets(const AlgebraMorphism &rho, const IrrepCatalog &source,
                         const IrrepCatalog &target, int y) {
  if (auto why = morphism_violation(rho))
    throw NotAMorphism(*why);
  Branching out;
  const auto &vy = target.canonical.at(y);
  for (std::size_t x = 0; x < source.canonical.size(); ++x) {
    const int m = mor_dim_solver(*rho.target, vy, push_forward(rho, source.canonical[x])).dim;
    if (m > 0) {
      out.sources.push_back(static_cast<int>(x));
      out.multiplicities.push_back(m);
    }
  }
  return out;
}

KazhdanPair kazhdan_combine(const KazhdanPair &p1, const KazhdanPair &p2) {
  if (!(p1.delta > 0) || !(p2.delta > 0))
    throw ValidationError("Kazhdan constants must be positive");
  KazhdanPair out{p1.set, std::min(p1.delta, p2.delta)};
  for (const auto &s : p2.set)
    if (std::find(out.set.begin(), out.set.end(), s) == out.set.end())
      out.set.push_back(s);
  return out;
}

} // namespace kacforge
