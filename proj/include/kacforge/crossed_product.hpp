#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kacforge/abelian.hpp"
#include "kacforge/rep_theory.hpp"

namespace kacforge {

/// A based ring with finitely many (or truncated) labels.
struct FusionRing {
  std::string name;
  std::vector<std::string> labels;
  int unit = 0;
  std::vector<int> dual;
  std::vector<double> dims;
  /// Sparse multiplicities: fusion[x * n + y] = [(z, N(x,y,z))].
  std::vector<std::vector<std::pair<int, int>>> fusion;
  /// Pairs whose product leaves the truncation window; N is undefined there.
  std::vector<char> overflow;
  bool truncated = false;
  bool silent = false; // overflowing products return their in-range part

  int size() const { return static_cast<int>(labels.size()); }
  /// N(x, y, z). Throws TruncationOverflow on an undefined product.
  int N(int x, int y, int z) const;
  const std::vector<std::pair<int, int>> &product(int x, int y) const;
  bool defined(int x, int y) const { return !overflow[static_cast<std::size_t>(x) * size() + y]; }
  std::optional<int> find(const std::string &label) const;
};

/// Labels = group elements, x (x) y = xy.
FusionRing group_ring(const FiniteGroup &g);
/// Irr(G) with N(x,y,z) = <chi_x chi_y, chi_z> from the character table.
FusionRing representation_ring(const FiniteGroup &g, const CharacterTable &t);
/// Labels 0..cutoff with k (x) l = |k-l| + ... + (k+l) and dims P_k(N) from
/// P_{k+1} = N P_k - P_{k-1}. Products past the cutoff throw TruncationOverflow
/// unless `silent_truncation`, which drops the out-of-range summands.
FusionRing free_orthogonal_ring(int n, int cutoff, bool silent_truncation = false);
/// P_0 .. P_cutoff at N = n, exactly.
std::vector<BigInt> free_orthogonal_dims(int n, int cutoff);

struct RingCheck {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// Unit and dual laws, associativity, Frobenius reciprocity and (untruncated)
/// multiplicativity of dims, over every defined product.
RingCheck check_ring(const FusionRing &r);

/// gamma -> permutation of the labels of a ring, act[gamma][x] = alpha_gamma(x).
struct RingAction {
  FiniteGroup group;
  std::vector<std::vector<int>> act;
};
RingAction trivial_action(const FiniteGroup &gamma, const FusionRing &r);
/// Empty when the action is a homomorphism into fusion-ring automorphisms.
std::optional<std::string> action_violation(const FusionRing &r, const RingAction &a);

struct CrossedFusionRing {
  FusionRing base;
  RingAction action;
  FusionRing ring; // label (gamma, x) at index gamma * |base| + x
  int label(Elem gamma, int x) const { return gamma * base.size() + x; }
};

/// N'((r,x),(s,y),(t,z)) = [t = rs] N(alpha_{s^-1}(x), y, z) and
/// dual(gamma.x) = gamma^-1 . alpha_gamma(dual x). Throws ActionNotCompatible.
CrossedFusionRing crossed_ring(const FusionRing &base, const RingAction &action);

/// A crossed product C(G) x| Gamma realized as a bicrossed product with trivial beta.
struct CrossedInstance {
  KacAlgebra algebra;
  IrrepCatalog catalog;
  CrossedFusionRing ring; // over representation_ring(G)
};

/// Gamma acts on Irr(G) by alpha_gamma(x) = class of chi_x o alpha_{gamma^-1}.
/// Throws ValidationError unless beta is trivial.
CrossedInstance crossed_instance(const MatchedPair &mp, std::uint64_t seed = kDefaultSeed);
/// Gamma <= G acting on G by conjugation.
CrossedInstance conj_action_builder(const FiniteGroup &g, std::span<const Elem> gamma,
                                    std::uint64_t seed = kDefaultSeed);

/// The corepresentation u^{gamma.x} = (1 (x) u_gamma)(id (x) alpha)(u^x).
Corepresentation crossed_corep(const CrossedInstance &c, Elem gamma, int x);

using LengthFunction = std::vector<double>;

/// Empty when l(unit) = 0, l(dual x) = l(x) and l(x) <= l(y) + l(z) whenever N(y,z,x) > 0.
std::optional<std::string> length_violation(const FusionRing &r, const LengthFunction &l);
/// Word length on a finite group with respect to `generators` (closed under inverses).
LengthFunction word_length(const FiniteGroup &g, std::span<const Elem> generators);
/// l_alpha(x) = max over gamma of l(alpha_gamma(x)). Throws OrbitInfinite when the
/// base ring is truncated and the action moves a label.
LengthFunction invariantize(const FusionRing &base, const RingAction &action, const LengthFunction &l);
/// l0(gamma.x) = l_Gamma(gamma) + l(x); invariantizes l first when asked.
LengthFunction length_l0(const CrossedFusionRing &c, const LengthFunction &l_gamma,
                         const LengthFunction &l, bool invariantize_first = false);

/// Finitely supported element of the discrete dual: one square block per label.
struct DualElement {
  std::map<int, CMatrix> blocks;
  DualElement &operator+=(const DualElement &other);
};
DualElement unit_projection(); // p_unit with the trivial irrep at label 0

/// F(a)(g) = sum_x dim(x) Tr(u^x(g) a_x), returned as a function on G.
std::vector<cplx> fourier_transform(const DualElement &a, const std::vector<MatrixIrrep> &irreps);
/// a_x = mean over g of F(g) u^x(g)*.
DualElement fourier_inverse(const std::vector<cplx> &f, const std::vector<MatrixIrrep> &irreps);
/// ||a||_0^2 = sum_x dim(x) Tr(a_x* a_x).
double sobolev0_norm_squared(const DualElement &a, const std::vector<int> &dims);

/// Seeded random element supported on `labels`, blocks sized by `dims`.
DualElement random_dual_element(const std::vector<int> &labels, const std::vector<int> &dims, Rng &rng);

struct LemmaReport {
  double transform_deviation = 0; // F(a) against sum_gamma u_gamma alpha(F_G(a_gamma))
  double norm_deviation = 0;      // ||a||_0^2 against sum_gamma ||a_gamma||_0^2
  double parseval_deviation = 0;  // ||a||_0^2 against h(F(a)* F(a))
  bool pass(double tol = 1e-9) const {
    return transform_deviation < tol && norm_deviation < tol && parseval_deviation < tol;
  }
};

/// `a` is indexed by crossed labels. F(a) is computed directly from the crossed
/// corepresentations in the algebra and compared with the Lemma's right-hand sides.
/// Throws IdentityViolated past `tol`.
LemmaReport check_lemma_fourier(const CrossedInstance &c, const DualElement &a, double tol = 1e-9);
/// F(a) in the crossed algebra, directly from u^{gamma.x}.
AlgebraElement crossed_fourier(const CrossedInstance &c, const DualElement &a);

struct RdReport {
  std::vector<double> ratios; // ||F(a)||_op / (P(k) ||a||_0) per sample
  double max_ratio = 0;
  bool pass = true;
};

/// Samples a supported in length bands [k, k+1) and compares the operator norm of
/// left multiplication by F(a) with P(k) ||a||_0, P given by its coefficients.
RdReport rd_inequality_sample(const CrossedInstance &c, const LengthFunction &l0,
                              const std::vector<double> &poly, int samples, std::uint64_t seed);

struct CrossedInvariants {
  InvariantGroups computed;
  FiniteGroup intrinsic_model; // Gamma x| Int(G)
  FiniteGroup spectrum_model;  // chi(G)^alpha x Sp(Gamma)
  bool intrinsic_matches = false;
  bool spectrum_matches = false;
};
CrossedInvariants crossed_invariant_groups(const CrossedInstance &c);

} // namespace kacforge
