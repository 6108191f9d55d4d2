#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kacforge/matched_pair.hpp"

namespace kacforge {

using AlgebraElement = Eigen::VectorXcd; // coefficients on the basis u_gamma delta_g
using TensorElement = Eigen::VectorXcd;  // coefficients on basis pairs, index b1 * dim + b2

/// The Kac algebra C(G) x| Gamma of a matched pair on the basis u_gamma delta_g,
/// basis index gamma |G| + g. All structure constants are 0 or 1:
///   (u_r d_g)(u_s d_h) = [alpha_{s^-1}(g) = h] u_{rs} d_h
///   (u_r d_g)*         = u_{r^-1} d_{alpha_r(g)}
///   Delta(u_r d_g)     = sum_{ab = g} u_r d_a (x) u_{beta_a(r)} d_b
///   eps(u_r d_g) = [g = e],  h(u_r d_g) = [r = e] / |G|
///   S(u_r d_g)         = u_{s^-1} d_{alpha_s(g^-1)},  s = beta_g(r)
class KacAlgebra {
public:
  KacAlgebra() = default;
  explicit KacAlgebra(MatchedPair mp);

  const MatchedPair &pair() const noexcept { return mp_; }
  int dim() const noexcept { return dim_; }
  int basis(Elem gamma, Elem g) const { return gamma * mp_.n_g() + g; }
  Elem gamma_of(int b) const { return b / mp_.n_g(); }
  Elem g_of(int b) const { return b % mp_.n_g(); }
  std::string basis_label(int b) const;

  /// Product of two basis elements, or -1 when it vanishes.
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * dim_ + b]; }
  int star(int b) const { return star_[b]; }
  int antipode(int b) const { return antipode_[b]; }
  const std::vector<std::pair<int, int>> &coproduct(int b) const { return coproduct_[b]; }
  int counit(int b) const { return counit_[b]; }
  /// |G| h(b), an integer.
  int haar_scaled(int b) const { return haar_scaled_[b]; }

  // Linear extensions to complex elements.
  AlgebraElement zero() const { return AlgebraElement::Zero(dim_); }
  AlgebraElement unit() const;
  AlgebraElement basis_element(int b) const;
  AlgebraElement multiply(const AlgebraElement &x, const AlgebraElement &y) const;
  AlgebraElement adjoint(const AlgebraElement &x) const;
  AlgebraElement apply_antipode(const AlgebraElement &x) const;
  TensorElement comultiply(const AlgebraElement &x) const;
  TensorElement tensor(const AlgebraElement &x, const AlgebraElement &y) const;
  std::complex<double> haar(const AlgebraElement &x) const;
  std::complex<double> counit(const AlgebraElement &x) const;

  /// u_gamma = sum_g u_gamma delta_g and alpha(F) = sum_g F(g) delta_g.
  AlgebraElement group_element(Elem gamma) const;
  AlgebraElement function(const std::vector<std::complex<double>> &f) const;

private:
  MatchedPair mp_;
  int dim_ = 0;
  std::vector<int> mul_, star_, antipode_, counit_, haar_scaled_;
  std::vector<std::vector<std::pair<int, int>>> coproduct_;
};

struct AxiomResult {
  std::string name;
  double max_deviation = 0;
  std::string witness; // empty when the identity holds
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  double tolerance = 1e-9;
  bool pass() const;
  const AxiomResult *find(const std::string &name) const;
};

/// Exhaustive exact check over the basis of associativity, unit, star,
/// coassociativity, Delta as a *-homomorphism, counit, antipode, S^2 = id,
/// Haar state, bi-invariance, traciality and positivity.
AxiomReport check_axioms(const KacAlgebra &a);
/// Throws AxiomViolation naming the first failing identity and its witness.
void assert_axioms(const KacAlgebra &a);

/// Linear map between Kac algebras given on basis elements.
struct AlgebraMorphism {
  const KacAlgebra *source = nullptr;
  const KacAlgebra *target = nullptr;
  Eigen::MatrixXcd matrix; // target.dim() x source.dim()
};

/// Empty when the map is a unital *-homomorphism intertwining the coproducts.
std::optional<std::string> morphism_violation(const AlgebraMorphism &rho);

/// rho(u_gamma delta_g) = u_gamma delta_{g0} if g = embedding[g0], else 0.
/// `sub` is the algebra of (Gamma, G0) for a subgroup G0 of G.
AlgebraMorphism restriction_morphism(const KacAlgebra &full, const KacAlgebra &sub,
                                     const std::vector<Elem> &embedding);
/// rho = identity.
AlgebraMorphism identity_morphism(const KacAlgebra &a);
/// rho = counit onto the one-dimensional algebra `trivial`.
AlgebraMorphism counit_morphism(const KacAlgebra &a, const KacAlgebra &trivial);

/// dim {a : (id (x) rho) Delta(a) = a (x) 1}, by exact rational rank.
/// Throws NotAMorphism.
int coset_space_dimension(const AlgebraMorphism &rho);

/// The pair (Gamma, ker beta) with alpha restricted, plus the embedding of ker beta in G.
std::pair<MatchedPair, std::vector<Elem>> kernel_of_beta_pair(const MatchedPair &mp);

struct GroupSubalgebraReport {
  bool unit_ok = true;           // u_e = 1
  bool multiplicative_ok = true; // u_r u_s = u_{rs}
  bool coproduct_formula_ok = true; // Delta(u_g) = sum_r u_g alpha(v_{g,r}) (x) u_r
  std::vector<bool> group_like; // per gamma: Delta(u_gamma) = u_gamma (x) u_gamma
};
GroupSubalgebraReport group_subalgebra_check(const KacAlgebra &a);

/// Deterministic text dump of the product and coproduct structure constants.
std::string dump_structure(const KacAlgebra &a);

} // namespace kacforge
