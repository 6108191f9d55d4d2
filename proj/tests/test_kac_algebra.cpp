#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kacforge/config.hpp"
#include "kacforge/corpus.hpp"
#include "kacforge/errors.hpp"
#include "kacforge/kac_algebra.hpp"

using namespace kacforge;

TEST_CASE("axioms hold on every corpus pair") {
  for (const auto &[name, mp] : corpus::all_pairs()) {
    CAPTURE(name);
    KacAlgebra a(mp);
    CHECK(a.dim() == mp.n_gamma() * mp.n_g());
    const auto report = check_axioms(a);
    for (const auto &r : report.results) {
      CAPTURE(r.name);
      CAPTURE(r.witness);
      CHECK(r.max_deviation == 0.0);
    }
    CHECK(report.pass());
    CHECK_NOTHROW(assert_axioms(a));
  }
}

TEST_CASE("coproduct of u_a for (S3; Z/3, Z/2)") {
  KacAlgebra a(corpus::s3_z3_z2());
  const auto &mp = a.pair();
  const Elem r = *mp.gamma().find_label("(1 2 3)");
  const Elem r2 = *mp.gamma().find_label("(1 3 2)");
  const Elem e = mp.g().identity();
  const Elem t = *mp.g().find_label("(1 2)");
  // Independent expansion: u_a = u_a d_e + u_a d_t, and d_e, d_t act on u_a from the
  // left with (1 2)(1 2 3)(1 2) = (1 3 2).
  auto d = [&](Elem x) {
    std::vector<std::complex<double>> f(mp.n_g(), 0.0);
    f[x] = 1.0;
    return a.function(f);
  };
  const TensorElement expected =
      a.tensor(a.multiply(a.group_element(r), d(e)), a.group_element(r)) +
      a.tensor(a.multiply(a.group_element(r), d(t)), a.group_element(r2));
  CHECK((a.comultiply(a.group_element(r)) - expected).norm() < 1e-12);

  const auto rep = group_subalgebra_check(a);
  CHECK(rep.unit_ok);
  CHECK(rep.multiplicative_ok);
  CHECK(rep.coproduct_formula_ok);
  CHECK(rep.group_like[mp.gamma().identity()]);
  CHECK(!rep.group_like[r]);

  // Gamma^beta trivial: only u_e is group-like in the beta-trivial direction.
  KacAlgebra b(corpus::s3_z2_z3());
  const auto rb = group_subalgebra_check(b);
  for (bool g : rb.group_like)
    CHECK(g);
}

TEST_CASE("element operations agree with structure constants") {
  KacAlgebra a(corpus::s4_s3_z4());
  Rng rng(7);
  auto random = [&] {
    AlgebraElement x = a.zero();
    for (int i = 0; i < a.dim(); ++i)
      x[i] = {rng.symmetric(), rng.symmetric()};
    return x;
  };
  const auto x = random(), y = random();
  CHECK((a.multiply(a.unit(), x) - x).norm() < 1e-12);
  CHECK((a.adjoint(a.multiply(x, y)) - a.multiply(a.adjoint(y), a.adjoint(x))).norm() < 1e-10);
  CHECK(a.haar(a.multiply(a.adjoint(x), x)).real() > 0);
  CHECK(std::abs(a.haar(a.multiply(x, y)) - a.haar(a.multiply(y, x))) < 1e-10);
  CHECK(std::abs(a.counit(a.multiply(x, y)) - a.counit(x) * a.counit(y)) < 1e-10);
  CHECK((a.apply_antipode(a.apply_antipode(x)) - x).norm() < 1e-12);
  CHECK(std::abs(a.haar(a.unit()) - 1.0) < 1e-12);
  CHECK(dump_structure(a) == dump_structure(KacAlgebra(corpus::s4_s3_z4())));
}

TEST_CASE("corrupted beta is caught with a witness") {
  auto mp = corpus::s4_s3_z4();
  auto beta = mp.beta_table();
  std::swap(beta[mp.n_gamma() + 1], beta[mp.n_gamma() + 2]);
  KacAlgebra bad(MatchedPair::make_unchecked(mp.gamma(), mp.g(), mp.alpha_table(), beta));
  const auto report = check_axioms(bad);
  CHECK(!report.pass());
  const auto *co = report.find("coassociativity");
  REQUIRE(co != nullptr);
  CHECK(co->max_deviation > 0);
  CHECK(!co->witness.empty());
  CHECK_THROWS_AS(assert_axioms(bad), AxiomViolation);
}

TEST_CASE("coset space dimensions") {
  for (const auto &[name, mp] : corpus::all_pairs()) {
    if (mp.n_gamma() * mp.n_g() > 48)
      continue;
    CAPTURE(name);
    KacAlgebra a(mp);
    CHECK(coset_space_dimension(identity_morphism(a)) == 1);
    KacAlgebra one(corpus::trivial_gamma(trivial_group()));
    CHECK(coset_space_dimension(counit_morphism(a, one)) == a.dim());

    auto [sub_pair, embedding] = kernel_of_beta_pair(mp);
    KacAlgebra sub(sub_pair);
    const auto rho = restriction_morphism(a, sub, embedding);
    CHECK(!morphism_violation(rho));
    CHECK(coset_space_dimension(rho) * sub_pair.n_g() == mp.n_g());
  }
  // A map that is not multiplicative is rejected.
  KacAlgebra a(corpus::s3_z3_z2());
  auto rho = identity_morphism(a);
  rho.matrix(0, 0) = 2.0;
  CHECK_THROWS_AS(coset_space_dimension(rho), NotAMorphism);
}
