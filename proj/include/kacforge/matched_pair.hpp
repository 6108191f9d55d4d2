#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kacforge/groups.hpp"

namespace kacforge {

/// A finite matched pair (Gamma, G) with gamma g = alpha_gamma(g) beta_g(gamma).
/// alpha is a left action of Gamma on G, beta a right action of G on Gamma:
///   alpha_r(gh) = alpha_r(g) alpha_{beta_g(r)}(h),
///   beta_g(rs)  = beta_{alpha_s(g)}(r) beta_g(s).
class MatchedPair {
public:
  MatchedPair() = default;

  /// Validates every relation exhaustively. Throws ValidationError naming the
  /// violated relation with a witness.
  static MatchedPair make(FiniteGroup gamma, FiniteGroup g, std::vector<Elem> alpha,
                          std::vector<Elem> beta);
  /// No validation; used to build negative controls.
  static MatchedPair make_unchecked(FiniteGroup gamma, FiniteGroup g, std::vector<Elem> alpha,
                                    std::vector<Elem> beta);
  /// Pair with beta trivial and alpha an action by automorphisms.
  static MatchedPair from_left_action(FiniteGroup gamma, FiniteGroup g, std::vector<Elem> alpha);
  /// Pair with alpha trivial and beta a right action by automorphisms.
  static MatchedPair from_right_action(FiniteGroup gamma, FiniteGroup g, std::vector<Elem> beta);

  const FiniteGroup &gamma() const noexcept { return gamma_; }
  const FiniteGroup &g() const noexcept { return g_; }
  int n_gamma() const noexcept { return gamma_.order(); }
  int n_g() const noexcept { return g_.order(); }

  /// alpha_r(x)
  Elem alpha(Elem r, Elem x) const { return alpha_[static_cast<std::size_t>(r) * g_.order() + x]; }
  /// beta_x(r)
  Elem beta(Elem x, Elem r) const { return beta_[static_cast<std::size_t>(x) * gamma_.order() + r]; }
  const std::vector<Elem> &alpha_table() const noexcept { return alpha_; }
  const std::vector<Elem> &beta_table() const noexcept { return beta_; }

  bool alpha_trivial() const;
  bool beta_trivial() const;

  /// Empty when valid, otherwise a description of the first violated relation.
  std::optional<std::string> violation() const;

private:
  FiniteGroup gamma_, g_;
  std::vector<Elem> alpha_, beta_;
};

/// Factorization H = G Gamma with Gamma and G given as element lists of H.
/// Subgroups are re-indexed with the identity first, then ascending ambient index.
/// Throws NotMatched when Gamma and G intersect nontrivially or |Gamma||G| != |H|.
MatchedPair derive_actions(const FiniteGroup &h, std::span<const Elem> gamma,
                           std::span<const Elem> g);

/// Group on Gamma x G with (r,g)(s,h) = (beta_h(r) s, g alpha_r(h)); (r,g) has
/// index r |G| + g. Gamma sits in it as {(r,e)}, G as {(e,g)}.
FiniteGroup zappa_szep(const MatchedPair &mp);

struct OrbitSpace {
  std::vector<std::vector<Elem>> orbits; // orbit of the identity first, points ascending
  std::vector<int> orbit_of;
  std::vector<std::vector<Elem>> stabilizers; // per r in Gamma, G_r = {g : beta_g(r) = r}
};

struct FixedSets {
  OrbitSpace orbits;
  Subgroup gamma_beta; // Gamma^beta
  Subgroup g_alpha;    // G^alpha
};

FixedSets orbits_fixed_sets(const MatchedPair &mp);

/// A_{r,s} = {g : beta_g(r) = s}.
struct IndicatorSet {
  Elem r = 0, s = 0;
  std::vector<Elem> members;
};

/// Rows and columns indexed by the orbit's points in the given order.
std::vector<std::vector<IndicatorSet>> magic_unitary(const MatchedPair &mp,
                                                     std::span<const Elem> orbit);

/// Exact check of the five magic-unitary relations of an orbit. Each entry is
/// empty when the relation holds, otherwise a witness.
struct MagicRelations {
  std::vector<std::string> failures; // "relation k: ..." entries
  bool ok() const { return failures.empty(); }
};
MagicRelations check_magic_relations(const MatchedPair &mp, std::span<const Elem> orbit);

/// B_{r,s} = {g : beta_{alpha_s(g)}(r) = r and beta_g(s) = s}, indexed [r][s].
std::vector<std::vector<std::vector<Elem>>> b_sets(const MatchedPair &mp);

// ---- deformations by crossed homomorphisms ------------------------------

/// Witness string when chi : G -> Gamma violates chi(gh) = chi(g) chi(alpha_{chi(g)^-1}(h)).
std::optional<std::string> crossed_hom_violation_G(const MatchedPair &mp0,
                                                   std::span<const Elem> chi);
/// Witness string when chi : Gamma -> G violates chi(rs) = chi(beta_{chi(s)^-1}(r)) chi(s).
std::optional<std::string> crossed_hom_violation_Gamma(const MatchedPair &mp0,
                                                       std::span<const Elem> chi);

/// (Gamma, G_chi) with g*h = g alpha_{chi(g)}(h) and
/// beta_g(gamma) = chi(alpha_gamma(g))^-1 gamma chi(g). Needs beta trivial.
/// G_chi keeps the element indices of G. Throws NotCrossedHom.
MatchedPair deform_by_chi_G(const MatchedPair &mp0, std::span<const Elem> chi);

/// (Gamma_chi, G) with r*s = beta_{chi(s)}(r) s and
/// alpha_gamma(g) = chi(gamma) g chi(beta_g(gamma))^-1. Needs alpha trivial.
MatchedPair deform_by_chi_Gamma(const MatchedPair &mp0, std::span<const Elem> chi);

/// Input to a deformation: a base pair and the crossed homomorphism.
struct DeformationRecipe {
  MatchedPair base;
  std::vector<Elem> chi;
};

/// From a pair with beta trivial and a subgroup Lambda of Gamma: the pair
/// (Gamma, Lambda x G) with alpha_gamma(r, g) = (r, alpha_gamma(g)) and chi(r, g) = r.
/// Element (r, g) of Lambda x G has index r_sub |G| + g.
DeformationRecipe lambda_recipe(const MatchedPair &mp0, std::span<const Elem> lambda);

/// From a quotient map q : Gamma0 -> G: the pair (Gamma0 x G, G) with
/// beta_g(gamma, h) = (gamma, g^-1 h g), alpha trivial and chi(gamma, h) = q(gamma).
/// Element (gamma, h) has index gamma |G| + h.
DeformationRecipe quotient_recipe(const FiniteGroup &gamma0, const FiniteGroup &g,
                                  std::span<const Elem> q);

/// The pair obtained from a subgroup acting by conjugation (beta trivial):
/// alpha_gamma(g) = gamma g gamma^-1.
MatchedPair conjugation_pair(const FiniteGroup &g, std::span<const Elem> gamma);

} // namespace kacforge
