#include "kacforge/corpus.hpp"

#include "kacforge/errors.hpp"

namespace kacforge::corpus {

int permutation_sign(const FiniteGroup &g, Elem x, int degree) {
  const Permutation p = parse_cycles(g.label(x), degree);
  std::vector<char> seen(degree, 0);
  int sign = 1;
  for (int i = 0; i < degree; ++i) {
    if (seen[i])
      continue;
    int len = 0;
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0)
      sign = -sign;
  }
  return sign;
}

std::vector<Elem> elements(const FiniteGroup &g, const std::vector<std::string> &labels,
                           int degree) {
  std::vector<Elem> out;
  for (const auto &l : labels) {
    const auto canonical = format_cycles(parse_cycles(l, degree));
    const auto x = g.find_label(canonical);
    if (!x)
      throw ValidationError("no element " + l + " in the group");
    out.push_back(*x);
  }
  return out;
}

namespace {

MatchedPair from_generators(int degree, const std::vector<std::string> &gamma_gens,
                            const std::vector<std::string> &g_gens) {
  const auto h = symmetric_group(degree);
  const auto a = generated_subgroup(h, elements(h, gamma_gens, degree));
  const auto b = generated_subgroup(h, elements(h, g_gens, degree));
  return derive_actions(h, a, b);
}

} // namespace

MatchedPair s3_z2_z3() { return from_generators(3, {"(1 2)"}, {"(1 2 3)"}); }
MatchedPair s3_z3_z2() { return from_generators(3, {"(1 2 3)"}, {"(1 2)"}); }
MatchedPair s4_s3_z4() { return from_generators(4, {"(1 2)", "(1 2 3)"}, {"(1 2 3 4)"}); }
MatchedPair s4_z4_s3() { return from_generators(4, {"(1 2 3 4)"}, {"(1 2)", "(1 2 3)"}); }

MatchedPair a4_z3_v4() {
  const auto h = alternating_group(4);
  const auto a = generated_subgroup(h, elements(h, {"(1 2 3)"}, 4));
  const auto b = generated_subgroup(h, elements(h, {"(1 2)(3 4)", "(1 3)(2 4)"}, 4));
  return derive_actions(h, a, b);
}

MatchedPair trivial_gamma(const FiniteGroup &g) {
  std::vector<Elem> alpha(g.order());
  for (int x = 0; x < g.order(); ++x)
    alpha[x] = x;
  return MatchedPair::from_left_action(trivial_group(), g, std::move(alpha));
}

MatchedPair s3_on_z7() {
  const auto s3 = symmetric_group(3);
  const auto z7 = cyclic_group(7);
  std::vector<Elem> alpha(static_cast<std::size_t>(6) * 7);
  for (int r = 0; r < 6; ++r)
    for (int x = 0; x < 7; ++x)
      alpha[r * 7 + x] = permutation_sign(s3, r, 3) > 0 ? x : (7 - x) % 7;
  return MatchedPair::from_left_action(s3, z7, std::move(alpha));
}

DeformationRecipe lambda_recipe_s3_z7() {
  const auto mp0 = s3_on_z7();
  const auto lambda = generated_subgroup(mp0.gamma(), elements(mp0.gamma(), {"(1 2)"}, 3));
  return lambda_recipe(mp0, lambda);
}

MatchedPair lambda_deformed() {
  const auto recipe = lambda_recipe_s3_z7();
  return deform_by_chi_G(recipe.base, recipe.chi);
}

DeformationRecipe quotient_recipe_s3() {
  const auto s3 = symmetric_group(3);
  std::vector<Elem> q(s3.order());
  for (int x = 0; x < s3.order(); ++x)
    q[x] = x;
  return quotient_recipe(s3, s3, q);
}

MatchedPair quotient_deformed() {
  const auto recipe = quotient_recipe_s3();
  return deform_by_chi_Gamma(recipe.base, recipe.chi);
}

MatchedPair s3_conj_z3() {
  const auto s3 = symmetric_group(3);
  return conjugation_pair(s3, generated_subgroup(s3, elements(s3, {"(1 2 3)"}, 3)));
}

std::vector<NamedPair> all_pairs() {
  return {
      {"S3; Z/2, Z/3", s3_z2_z3()},
      {"S3; Z/3, Z/2", s3_z3_z2()},
      {"S4; S3, Z/4", s4_s3_z4()},
      {"S4; Z/4, S3", s4_z4_s3()},
      {"A4; Z/3, V4", a4_z3_v4()},
      {"Lambda-deformed S3 on Z/7", lambda_deformed()},
      {"quotient-deformed S3", quotient_deformed()},
      {"(S3)_{Z/3} by conjugation", s3_conj_z3()},
      {"trivial Gamma over S3", trivial_gamma(symmetric_group(3))},
  };
}

} // namespace kacforge::corpus
