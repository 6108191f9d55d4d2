#pragma once

#include <string>
#include <vector>

#include "kacforge/matched_pair.hpp"

namespace kacforge::corpus {

/// Sign of a permutation group element, read from its cycle label.
int permutation_sign(const FiniteGroup &g, Elem x, int degree);

/// Elements of a permutation group with the given cycle labels.
std::vector<Elem> elements(const FiniteGroup &g, const std::vector<std::string> &labels,
                           int degree);

MatchedPair s3_z2_z3();   // Gamma = <(1 2)>, G = <(1 2 3)>: beta trivial, alpha inversion
MatchedPair s3_z3_z2();   // Gamma = <(1 2 3)>, G = <(1 2)>: alpha trivial
MatchedPair s4_s3_z4();   // Gamma = Stab(4), G = <(1 2 3 4)>: both nontrivial
MatchedPair s4_z4_s3();   // Gamma = <(1 2 3 4)>, G = Stab(4)
MatchedPair a4_z3_v4();   // Gamma = <(1 2 3)>, G = V4
MatchedPair trivial_gamma(const FiniteGroup &g); // Gamma = {e}

/// Gamma = S3 acting on Z/7 by the sign; beta trivial.
MatchedPair s3_on_z7();
/// The Lambda = <(1 2)> recipe on s3_on_z7 and its deformation (order-14 G side).
DeformationRecipe lambda_recipe_s3_z7();
MatchedPair lambda_deformed();
/// Gamma0 = G = S3 with q = id, and its deformation (Gamma_chi of order 36).
DeformationRecipe quotient_recipe_s3();
MatchedPair quotient_deformed();

/// (S3)_{Z/3}: Z/3 = <(1 2 3)> acting on S3 by conjugation.
MatchedPair s3_conj_z3();

struct NamedPair {
  std::string name;
  MatchedPair pair;
};
/// Every pair used by the acceptance suite.
std::vector<NamedPair> all_pairs();

} // namespace kacforge::corpus
