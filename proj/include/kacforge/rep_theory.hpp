#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kacforge/characters.hpp"
#include "kacforge/config.hpp"
#include "kacforge/kac_algebra.hpp"

namespace kacforge {

/// A finite-dimensional corepresentation w with Delta(w_ij) = sum_k w_ik (x) w_kj.
struct Corepresentation {
  std::string label;
  int dim = 0;
  std::vector<AlgebraElement> entries; // row-major, dim x dim
  bool unitary = true;

  const AlgebraElement &at(int i, int j) const { return entries[static_cast<std::size_t>(i) * dim + j]; }
  AlgebraElement &at(int i, int j) { return entries[static_cast<std::size_t>(i) * dim + j]; }
};

double coaction_defect(const KacAlgebra &a, const Corepresentation &w);
/// max of |sum_k w_ik w_jk* - d_ij 1| and |sum_k w_ki* w_kj - d_ij 1|.
double unitarity_defect(const KacAlgebra &a, const Corepresentation &w);
AlgebraElement character(const Corepresentation &w);
/// (u (x) w)_{(i,k),(j,l)} = u_ij w_kl.
Corepresentation tensor_product(const KacAlgebra &a, const Corepresentation &u,
                                const Corepresentation &w);
/// Conjugation by a matrix with orthonormal columns: (P* w P).
Corepresentation compress(const Corepresentation &w, const CMatrix &p, std::string label);

Corepresentation unit_corep(const KacAlgebra &a);
/// V^o with entries V_rs = u_r alpha(1_{A_{r,s}}), indexed by the orbit points in order.
Corepresentation orbit_corep(const KacAlgebra &a, const std::vector<Elem> &orbit);
/// v^x = (id (x) alpha)(u^x).
Corepresentation irrep_corep(const KacAlgebra &a, const MatrixIrrep &x);

struct Candidate {
  int orbit = 0;
  int irrep = 0;
  Corepresentation rep; // V^o (x) v^x
};

struct CandidateSet {
  std::vector<std::vector<Elem>> orbits;
  CharacterTable table;
  std::vector<MatrixIrrep> irreps;
  std::vector<Corepresentation> orbit_reps; // V^o
  std::vector<Corepresentation> irrep_reps; // v^x
  std::vector<Candidate> candidates;        // orbit-major
  int find(int orbit, int irrep) const { return orbit * static_cast<int>(irrep_reps.size()) + irrep; }
};

CandidateSet build_candidates(const KacAlgebra &a, std::uint64_t seed = kDefaultSeed);

/// h(chi(u)* chi(w)) rounded. Throws NonIntegral past `tol`, ValidationError on
/// non-unitary input.
int mor_dim_haar(const KacAlgebra &a, const Corepresentation &u, const Corepresentation &w,
                 double tol = 1e-6);

struct MorSpace {
  int dim = 0;
  std::vector<CMatrix> basis; // orthonormal in the Hilbert-Schmidt sense, each w.dim x u.dim
  double gap = 0;             // smallest eigenvalue kept out of the nullspace
};

/// Intertwiners T with (T (x) 1) u = w (T (x) 1), i.e. T U_b = W_b T for every
/// basis coefficient b, from the nullspace of sum_b K_b* K_b.
MorSpace mor_dim_solver(const KacAlgebra &a, const Corepresentation &u, const Corepresentation &w,
                        double tol = 1e-8);

struct IrrepCatalog {
  CandidateSet candidates;
  std::vector<Corepresentation> canonical;
  /// Per candidate, canonical ids of its irreducible summands (with repetition).
  std::vector<std::vector<int>> equivalence_map;
  std::vector<int> end_dims; // dim End(candidate)
  long long dim_squares = 0;
  int coefficient_rank = 0;
};

/// Decomposes every candidate through a seeded random self-adjoint element of its
/// endomorphism algebra and deduplicates by h(chi* chi). Throws PeterWeylMismatch
/// unless sum dim^2 = |Gamma| |G|.
IrrepCatalog enumerate_irreps(const KacAlgebra &a, std::uint64_t seed = kDefaultSeed);

struct FormulaValue {
  double value = 0;
  int rounded = 0;
  double residual = 0;
};

/// sum_{s' in sG, r' in rG} |{t in gammaG : t = r's'}| (1/|G|) sum_{g in B_{r',s'}} conj chi_x(g),
/// with gamma, r, s given as orbit indices.
FormulaValue fusion_closed_form(const KacAlgebra &a, const CandidateSet &c, int gamma_orbit,
                                  int x, int r_orbit, int s_orbit, double tol = 1e-6);

enum class AuditStatus { agree, disagree };
std::string to_string(AuditStatus s);

struct AuditEntry {
  AuditStatus status = AuditStatus::agree;
  std::string claim;
  std::string detail;
};

struct FusionAudit {
  /// Solver and character methods agree on every triple examined.
  bool oracle_agreement = true;
  int triples_checked = 0;
  int triples_skipped = 0; // above the unknown-count cap
  std::vector<std::string> oracle_failures;
  std::vector<AuditEntry> entries;
};

/// Never throws on a mathematical disagreement: the solver/character comparison
/// is the hard check, the quoted claims are logged.
FusionAudit audit_fusion(const KacAlgebra &a, const IrrepCatalog &catalog, int unknown_cap = 256);

struct InvariantGroups {
  FiniteGroup intrinsic;
  FiniteGroup spectrum;
  std::vector<AlgebraElement> intrinsic_elements; // group-like unitaries
  std::vector<std::pair<Elem, int>> spectrum_points; // (g0, index into Sp(Gamma))
  FiniteGroup intrinsic_model; // Sp(G) x|_alpha Gamma^beta
  FiniteGroup spectrum_model;  // G^alpha |x_beta Sp(Gamma)
  bool intrinsic_matches = false;
  bool spectrum_matches = false;
  bool group_like_ok = true; // Delta(u) = u (x) u for every intrinsic element
  std::string intrinsic_name, spectrum_name;
};

InvariantGroups invariant_groups(const KacAlgebra &a, const IrrepCatalog &catalog);

/// "Z/2 x Z/6" for abelian groups, otherwise a name found by small isomorphism
/// tests ("S3", "D7", ...) or "order n".
std::string group_name(const FiniteGroup &g);

struct Branching {
  std::vector<int> sources;       // canonical ids x of the source with Mor(v^y, rho(u^x)) != 0
  std::vector<int> multiplicities; // dim Mor(v^y, rho(u^x)) per entry of `sources`
};

/// Applies rho entrywise to a corepresentation of its source.
Corepresentation push_forward(const AlgebraMorphism &rho, const Corepresentation &w);
/// N_y for the canonical irrep y of the target. Throws NotAMorphism.
Branching branching_sets(const AlgebraMorphism &rho, const IrrepCatalog &source,
                         const IrrepCatalog &target, int y);

struct KazhdanPair {
  std::vector<std::string> set;
  double delta = 0;
};
/// (E1 u E2, min(d1, d2)). Throws ValidationError for a non-positive delta.
KazhdanPair kazhdan_combine(const KazhdanPair &p1, const KazhdanPair &p2);

} // namespace kacforge
