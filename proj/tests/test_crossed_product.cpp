#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kacforge/corpus.hpp"
#include "kacforge/crossed_product.hpp"
#include "kacforge/errors.hpp"

using namespace kacforge;

namespace {

CrossedInstance s3_z3() {
  const auto s3 = symmetric_group(3);
  return conj_action_builder(s3, generated_subgroup(s3, corpus::elements(s3, {"(1 2 3)"}, 3)));
}

std::vector<int> all_labels(const FusionRing &r) {
  std::vector<int> v(r.size());
  for (int i = 0; i < r.size(); ++i)
    v[i] = i;
  return v;
}

} // namespace

TEST_CASE("fusion rings satisfy the ring laws") {
  const auto s3 = symmetric_group(3);
  const auto t = character_table(s3);
  CHECK(check_ring(group_ring(s3)).ok());
  const auto rep = representation_ring(s3, t);
  CHECK(check_ring(rep).ok());
  // 2 (x) 2 = 1 + sgn + 2
  const int two = 2;
  CHECK(rep.dims[two] == 2);
  for (int z = 0; z < 3; ++z)
    CHECK(rep.N(two, two, z) == 1);
  const auto a5 = representation_ring(alternating_group(5), character_table(alternating_group(5)));
  CHECK(check_ring(a5).ok());

  const auto fo = free_orthogonal_ring(3, 6);
  CHECK(check_ring(fo).ok());
  CHECK(fo.N(2, 3, 1) == 1);
  CHECK(fo.N(2, 3, 2) == 0);
  CHECK_THROWS_AS(fo.N(4, 5, 1), TruncationOverflow);
  const auto silent = free_orthogonal_ring(3, 6, true);
  CHECK(silent.N(4, 5, 1) == 1);
  // Exact recursion and agreement with the stored dims.
  const auto d = free_orthogonal_dims(3, 30);
  for (int k = 2; k <= 30; ++k)
    CHECK(d[k] == 3 * d[k - 1] - d[k - 2]);
  CHECK(d[5] == 144);
  for (int k = 0; k <= 6; ++k)
    CHECK(fo.dims[k] == d[k].convert_to<double>());
  // dim is multiplicative on products inside the window.
  for (int k = 0; k <= 3; ++k)
    for (int l = 0; l <= 3; ++l) {
      double s = 0;
      for (const auto &[z, m] : fo.product(k, l))
        s += m * fo.dims[z];
      CHECK(s == doctest::Approx(fo.dims[k] * fo.dims[l]));
    }
}

TEST_CASE("crossed fusion rings") {
  const auto s3 = symmetric_group(3);
  const auto rep = representation_ring(s3, character_table(s3));
  const auto c1 = crossed_ring(rep, trivial_action(trivial_group(), rep));
  CHECK(c1.ring.fusion == rep.fusion);

  const auto c = s3_z3();
  // Conjugation fixes every class function.
  for (const auto &p : c.ring.action.act)
    for (int x = 0; x < static_cast<int>(p.size()); ++x)
      CHECK(p[x] == x);
  CHECK(check_ring(c.ring.ring).ok());
  for (int x = 0; x < c.ring.ring.size(); ++x)
    CHECK(c.ring.ring.N(x, c.ring.ring.dual[x], c.ring.ring.unit) == 1);

  // Nontrivial action: Z/2 inverting Z/3 swaps the two nontrivial characters.
  const auto inv = crossed_instance(corpus::s3_z2_z3());
  const auto &act = inv.ring.action.act;
  CHECK(act[1][1] == 2);
  CHECK(act[1][2] == 1);
  CHECK(check_ring(inv.ring.ring).ok());
  // Crossed multiplicities agree with Mor dimensions computed in the algebra.
  const auto &g = inv.algebra.pair().gamma();
  const int nb = inv.ring.base.size();
  for (int a = 0; a < inv.ring.ring.size(); ++a)
    for (int b = 0; b < inv.ring.ring.size(); ++b) {
      const auto prod = tensor_product(inv.algebra, crossed_corep(inv, a / nb, a % nb),
                                       crossed_corep(inv, b / nb, b % nb));
      for (int z = 0; z < inv.ring.ring.size(); ++z)
        CHECK(inv.ring.ring.N(a, b, z) ==
              mor_dim_haar(inv.algebra, crossed_corep(inv, z / nb, z % nb), prod));
    }
  (void)g;

  // A permutation that breaks fusion is rejected.
  RingAction bad = trivial_action(cyclic_group(2), rep);
  std::swap(bad.act[1][0], bad.act[1][1]);
  CHECK_THROWS_AS(crossed_ring(rep, bad), ActionNotCompatible);
}

TEST_CASE("length functions") {
  const auto c = s3_z3();
  const auto &g = c.ring.action.group;
  const auto lg = word_length(g, std::vector<Elem>{1});
  const LengthFunction zero(c.ring.base.size(), 0.0);
  const auto l0 = length_l0(c.ring, lg, zero);
  for (int r = 0; r < g.order(); ++r)
    for (int x = 0; x < c.ring.base.size(); ++x)
      CHECK(l0[c.ring.label(r, x)] == lg[r]);
  CHECK(l0[c.ring.ring.unit] == 0);
  CHECK(!length_violation(c.ring.ring, l0));

  // Free orthogonal base with l(k) = k and trivial action of Z/4.
  const auto fo = free_orthogonal_ring(3, 8);
  LengthFunction lk(fo.size());
  for (int k = 0; k < fo.size(); ++k)
    lk[k] = k;
  CHECK(!length_violation(fo, lk));
  const auto z4 = cyclic_group(4);
  const auto cfo = crossed_ring(fo, trivial_action(z4, fo));
  const auto l1 = length_l0(cfo, word_length(z4, std::vector<Elem>{1}), lk, true);
  CHECK(l1[cfo.label(2, 3)] == 5);
  CHECK(!length_violation(cfo.ring, l1));
  LengthFunction bad = lk;
  bad[4] = 100;
  CHECK(length_violation(fo, bad));

  // Invariantization with a moving action on a truncated ring has no finite window.
  RingAction moving = trivial_action(cyclic_group(2), fo);
  std::swap(moving.act[1][1], moving.act[1][2]);
  CHECK_THROWS_AS(invariantize(fo, moving, lk), OrbitInfinite);
}

TEST_CASE("Fourier transform on classical groups") {
  for (const auto &g : {symmetric_group(3), quaternion_group(), symmetric_group(4)}) {
    const auto t = character_table(g);
    const auto irreps = matrix_irreps(g, t);
    for (std::size_t i = 0; i < irreps.size(); ++i)
      CHECK(irreps[i].label == static_cast<int>(i));
    std::vector<int> dims, labels;
    for (const auto &u : irreps) {
      dims.push_back(u.dim);
      labels.push_back(u.label);
    }
    const auto f1 = fourier_transform(unit_projection(), irreps);
    for (const auto &v : f1)
      CHECK(std::abs(v - 1.0) < 1e-12);
    DualElement ident;
    for (const auto &u : irreps)
      ident.blocks.emplace(u.label, CMatrix::Identity(u.dim, u.dim));
    const auto peak = fourier_transform(ident, irreps);
    for (int x = 0; x < g.order(); ++x)
      CHECK(std::abs(peak[x] - (x == g.identity() ? double(g.order()) : 0.0)) < 1e-9);

    Rng rng(11);
    for (int s = 0; s < 5; ++s) {
      const auto a = random_dual_element(labels, dims, rng);
      const auto b = random_dual_element(labels, dims, rng);
      const auto f = fourier_transform(a, irreps);
      const auto back = fourier_inverse(f, irreps);
      for (const auto &[x, m] : a.blocks)
        CHECK((back.blocks.at(x) - m).cwiseAbs().maxCoeff() < 1e-9);
      auto sum = a;
      sum += b;
      const auto fs = fourier_transform(sum, irreps), fb = fourier_transform(b, irreps);
      double mean = 0, lin = 0;
      for (int x = 0; x < g.order(); ++x) {
        mean += std::norm(f[x]) / g.order();
        lin = std::max(lin, std::abs(fs[x] - f[x] - fb[x]));
      }
      CHECK(lin < 1e-9);
      CHECK(sobolev0_norm_squared(a, dims) == doctest::Approx(mean).epsilon(1e-10));
    }
    CHECK(sobolev0_norm_squared(unit_projection(), dims) == 1);
    DualElement one_block;
    one_block.blocks.emplace(static_cast<int>(irreps.size()) - 1,
                             CMatrix::Identity(dims.back(), dims.back()));
    CHECK(sobolev0_norm_squared(one_block, dims) == doctest::Approx(dims.back() * dims.back()));
  }
}

TEST_CASE("Fourier decomposition lemma on crossed instances") {
  for (const auto &c : {crossed_instance(corpus::s3_z2_z3()), s3_z3()}) {
    const auto labels = all_labels(c.ring.ring);
    std::vector<int> dims;
    for (double d : c.ring.ring.dims)
      dims.push_back(static_cast<int>(d));
    Rng rng(2024);
    for (int s = 0; s < 10; ++s) {
      const auto a = random_dual_element(labels, dims, rng);
      const auto rep = check_lemma_fourier(c, a);
      CHECK(rep.pass());
    }
    DualElement p;
    p.blocks.emplace(c.ring.ring.unit, CMatrix::Identity(1, 1));
    CHECK((crossed_fourier(c, p) - c.algebra.unit()).norm() < 1e-12);
    // Single block at (gamma, x): F = u_gamma alpha(F_G(a_gamma)).
    DualElement single;
    const int nb = c.ring.base.size();
    single.blocks.emplace(c.ring.label(1, nb - 1), CMatrix::Identity(dims[nb - 1], dims[nb - 1]));
    CHECK(check_lemma_fourier(c, single).transform_deviation < 1e-12);
  }
}

TEST_CASE("rapid decay sampling harness") {
  const auto c = crossed_instance(corpus::s3_z2_z3());
  const auto &g = c.ring.action.group;
  const auto l0 = length_l0(c.ring, word_length(g, std::vector<Elem>{1}),
                            LengthFunction(c.ring.base.size(), 0.0));
  const auto crude = rd_inequality_sample(c, l0, {std::sqrt(double(c.algebra.dim()))}, 20, 5);
  CHECK(crude.pass);
  CHECK(crude.ratios.size() == 20);
  const auto tight = rd_inequality_sample(c, l0, {0.01}, 4, 5);
  CHECK(!tight.pass);
}

TEST_CASE("crossed invariant groups") {
  const auto c = s3_z3();
  const auto inv = crossed_invariant_groups(c);
  CHECK(inv.intrinsic_matches);
  CHECK(inv.spectrum_matches);
  CHECK(inv.computed.intrinsic_name == "Z/6");
  CHECK(inv.computed.spectrum_name == "Z/3 x Z/3");
  CHECK(inv.computed.spectrum.order() == 9);

  // Trivial Gamma: plain G.
  const auto s3 = symmetric_group(3);
  const auto plain = conj_action_builder(s3, std::vector<Elem>{s3.identity()});
  const auto pi = crossed_invariant_groups(plain);
  CHECK(pi.computed.intrinsic.order() == 2);
  CHECK(pi.computed.spectrum.order() == 6);

  // Nonabelian Gamma = S3 x {0} acting by conjugation on S3 x Z/2.
  const auto ab = conj_action_builder(direct_product(s3, cyclic_group(2)),
                                      std::vector<Elem>{0, 2, 4, 6, 8, 10});
  const auto ai = crossed_invariant_groups(ab);
  CHECK(ai.intrinsic_matches);
  CHECK(ai.spectrum_matches);
}
