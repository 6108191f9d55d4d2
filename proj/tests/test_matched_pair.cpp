#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kacforge/corpus.hpp"
#include "kacforge/errors.hpp"

using namespace kacforge;

TEST_CASE("derive actions on S3") {
  auto s3 = symmetric_group(3);
  auto a = corpus::elements(s3, {"(1 2 3)"}, 3);
  auto t = corpus::elements(s3, {"(1 2)"}, 3);
  auto mp = corpus::s3_z3_z2();
  CHECK(mp.alpha_trivial());
  CHECK(!mp.beta_trivial());
  // Gamma = {e, (123), (132)}, G = {e, (12)} in embedding order.
  const Elem r = *mp.gamma().find_label("(1 2 3)");
  const Elem x = *mp.g().find_label("(1 2)");
  CHECK(mp.gamma().label(mp.beta(x, r)) == "(1 3 2)");
  // Independent oracle: (123)(12) = (12)(132) by permutation composition.
  CHECK(s3.mul(a[0], t[0]) == s3.mul(t[0], *s3.find_label("(1 3 2)")));

  auto mp2 = corpus::s3_z2_z3();
  CHECK(mp2.beta_trivial());
  CHECK(!mp2.alpha_trivial());
  const Elem s = *mp2.gamma().find_label("(1 2)");
  const Elem c = *mp2.g().find_label("(1 2 3)");
  CHECK(mp2.alpha(s, c) == mp2.g().inv(c));

  auto mp3 = corpus::s4_s3_z4();
  CHECK(!mp3.alpha_trivial());
  CHECK(!mp3.beta_trivial());

  CHECK_THROWS_AS(derive_actions(s3, generated_subgroup(s3, a), generated_subgroup(s3, a)),
                  NotMatched);
  CHECK_THROWS_AS(derive_actions(s3, generated_subgroup(s3, t), std::vector<Elem>{s3.identity()}),
                  NotMatched);
}

TEST_CASE("Zappa-Szep round trip") {
  for (const auto &[name, mp] : corpus::all_pairs()) {
    CAPTURE(name);
    auto h = zappa_szep(mp);
    CHECK(h.order() == mp.n_gamma() * mp.n_g());
    std::vector<Elem> gs, ks;
    for (int r = 0; r < mp.n_gamma(); ++r)
      gs.push_back(r * mp.n_g() + mp.g().identity());
    for (int x = 0; x < mp.n_g(); ++x)
      ks.push_back(mp.gamma().identity() * mp.n_g() + x);
    auto back = derive_actions(h, gs, ks);
    CHECK(back.alpha_table() == mp.alpha_table());
    CHECK(back.beta_table() == mp.beta_table());
    // beta trivial iff G normal, alpha trivial iff Gamma normal.
    CHECK(mp.beta_trivial() == is_normal(h, ks));
    CHECK(mp.alpha_trivial() == is_normal(h, gs));
  }
  CHECK(is_isomorphic_small(zappa_szep(corpus::s3_z3_z2()), symmetric_group(3)));
  CHECK(is_isomorphic_small(zappa_szep(corpus::s4_s3_z4()), symmetric_group(4)));
}

TEST_CASE("orbits and fixed sets") {
  auto mp = corpus::s3_z3_z2();
  auto fs = orbits_fixed_sets(mp);
  CHECK(fs.orbits.orbits.size() == 2);
  CHECK(fs.orbits.orbits[1].size() == 2);
  CHECK(fs.gamma_beta.group.order() == 1);
  CHECK(fs.g_alpha.group.order() == 2);

  for (const auto &[name, p] : corpus::all_pairs()) {
    CAPTURE(name);
    auto f = orbits_fixed_sets(p);
    for (const auto &orbit : f.orbits.orbits) {
      for (Elem r : orbit)
        CHECK(orbit.size() * f.orbits.stabilizers[r].size() == static_cast<std::size_t>(p.n_g()));
      // Burnside: average number of fixed points on one orbit is 1.
      int fixed = 0;
      for (int x = 0; x < p.n_g(); ++x)
        for (Elem r : orbit)
          fixed += p.beta(x, r) == r;
      CHECK(fixed == p.n_g());
      CHECK(check_magic_relations(p, orbit).ok());
    }
  }
}

TEST_CASE("magic unitary and B sets") {
  auto mp = corpus::s3_z3_z2();
  auto fs = orbits_fixed_sets(mp);
  auto mu = magic_unitary(mp, fs.orbits.orbits[1]);
  const Elem t = *mp.g().find_label("(1 2)");
  CHECK(mu[0][0].members == std::vector<Elem>{mp.g().identity()});
  CHECK(mu[0][1].members == std::vector<Elem>{t});
  CHECK(mu[1][0].members == std::vector<Elem>{t});
  auto single = magic_unitary(mp, fs.orbits.orbits[0]);
  CHECK(single[0][0].members.size() == 2);

  auto b = b_sets(mp);
  const Elem a = *mp.gamma().find_label("(1 2 3)");
  CHECK(b[a][a] == std::vector<Elem>{mp.g().identity()});
  CHECK(b[mp.gamma().identity()][mp.gamma().identity()].size() == 2);
  auto bt = b_sets(corpus::s3_z2_z3());
  for (const auto &row : bt)
    for (const auto &cell : row)
      CHECK(cell.size() == 3);
}

TEST_CASE("deformation by chi : G -> Gamma") {
  auto recipe = corpus::lambda_recipe_s3_z7();
  auto d = deform_by_chi_G(recipe.base, recipe.chi);
  CHECK(d.g().order() == 14);
  auto z7 = cyclic_group(7), z2 = cyclic_group(2);
  std::vector<Elem> neg(7);
  for (int i = 0; i < 7; ++i)
    neg[i] = (7 - i) % 7;
  CHECK(is_isomorphic_small(d.g(), semidirect_product(z7, z2, {{0, 1, 2, 3, 4, 5, 6}, neg})));
  CHECK(!d.beta_trivial());
  // beta_{(r,g)}(gamma) = r^-1 gamma r.
  for (int x = 0; x < d.n_g(); ++x)
    for (int r = 0; r < d.n_gamma(); ++r) {
      const Elem lam = recipe.chi[x];
      CHECK(d.beta(x, r) == d.gamma().conj(r, lam));
    }
  // chi = e leaves the pair unchanged.
  std::vector<Elem> unit(recipe.base.n_g(), recipe.base.gamma().identity());
  auto same = deform_by_chi_G(recipe.base, unit);
  CHECK(same.g() == recipe.base.g());
  CHECK(same.beta_table() == recipe.base.beta_table());

  // A central Lambda gives trivial beta.
  auto z7pair = corpus::s3_on_z7();
  auto central = lambda_recipe(z7pair, std::vector<Elem>{z7pair.gamma().identity()});
  CHECK(deform_by_chi_G(central.base, central.chi).beta_trivial());

  auto bad = recipe.chi;
  bad[1] = *recipe.base.gamma().find_label("(1 2 3)");
  CHECK_THROWS_AS(deform_by_chi_G(recipe.base, bad), NotCrossedHom);
}

TEST_CASE("deformation by chi : Gamma -> G") {
  auto recipe = corpus::quotient_recipe_s3();
  auto d = deform_by_chi_Gamma(recipe.base, recipe.chi);
  CHECK(d.n_gamma() == 36);
  CHECK(!d.alpha_trivial());
  CHECK(!d.beta_trivial());
  const auto &s3 = d.g();
  // (r,g)(s,h) = (rs, q(s)^-1 g q(s) h)
  for (int a = 0; a < 36; ++a)
    for (int b = 0; b < 36; ++b) {
      const int r = a / 6, g = a % 6, s = b / 6, h = b % 6;
      CHECK(d.gamma().mul(a, b) == s3.mul(r, s) * 6 + s3.mul(s3.conj(g, s), h));
    }
  std::vector<Elem> unit(recipe.base.n_gamma(), recipe.base.g().identity());
  auto same = deform_by_chi_Gamma(recipe.base, unit);
  CHECK(same.gamma() == recipe.base.gamma());
}

TEST_CASE("corrupted tables are rejected") {
  auto mp = corpus::s4_s3_z4();
  auto beta = mp.beta_table();
  std::swap(beta[mp.n_gamma() + 1], beta[mp.n_gamma() + 2]);
  CHECK(MatchedPair::make_unchecked(mp.gamma(), mp.g(), mp.alpha_table(), beta).violation());
  CHECK_THROWS_AS(MatchedPair::make(mp.gamma(), mp.g(), mp.alpha_table(), beta), ValidationError);
}
