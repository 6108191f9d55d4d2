#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kacforge/abelian.hpp"
#include "kacforge/characters.hpp"
#include "kacforge/errors.hpp"

using namespace kacforge;

TEST_CASE("Smith normal form") {
  Presentation sl2z{2, {{4, 0}, {0, 6}, {2, -3}}};
  auto ab = abelian_invariants(sl2z);
  CHECK(ab.invariant_factors == std::vector<std::int64_t>{12});
  CHECK(ab.free_rank == 0);
  CHECK(ab.torsion_order() == 12);

  auto free = abelian_invariants(Presentation{1, {}});
  CHECK(free.free_rank == 1);
  CHECK(free.invariant_factors.empty());

  auto v4 = abelian_invariants(Presentation{2, {{2, 0}, {0, 2}}});
  CHECK(v4.invariant_factors == std::vector<std::int64_t>{2, 2});

  auto mixed = abelian_invariants(Presentation{3, {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}});
  CHECK(mixed.invariant_factors == std::vector<std::int64_t>{2, 6, 12});

  CHECK_THROWS_AS(abelian_invariants(Presentation{2, {{1, 2, 3}}}), ValidationError);
}

TEST_CASE("abelianization agrees with presentation") {
  CHECK(abelian_invariants(cyclic_group(12)) == abelian_invariants(Presentation{2, {{4, 0}, {0, 6}, {2, -3}}}));
  CHECK(abelian_invariants(symmetric_group(3)).invariant_factors == std::vector<std::int64_t>{2});
  CHECK(abelian_invariants(special_linear_group(2, 5)).invariant_factors.empty());
  auto g = direct_product(cyclic_group(4), direct_product(cyclic_group(6), cyclic_group(2)));
  CHECK(abelian_structure(g).invariant_factors == std::vector<std::int64_t>{2, 2, 12});
}

TEST_CASE("dual groups") {
  auto s3 = dual_group(symmetric_group(3));
  CHECK(s3.group.order() == 2);
  auto z4 = dual_group(cyclic_group(4));
  CHECK(is_isomorphic_small(z4.group, cyclic_group(4)));
  CHECK(dual_group(special_linear_group(2, 5)).group.order() == 1);
  auto q8 = dual_group(quaternion_group());
  CHECK(q8.structure.name() == "Z/2 x Z/2");
}

TEST_CASE("character tables") {
  auto z3 = character_table(cyclic_group(3));
  CHECK(z3.dims == std::vector<int>{1, 1, 1});
  for (const auto &row : z3.chars)
    for (const auto &v : row)
      CHECK(std::abs(std::pow(v, 3) - 1.0) < 1e-9);

  auto s3g = symmetric_group(3);
  auto s3 = character_table(s3g);
  CHECK(s3.dims == std::vector<int>{1, 1, 2});
  const Elem t = *s3g.find_label("(1 2)");
  const Elem c = *s3g.find_label("(1 2 3)");
  CHECK(std::abs(s3.value(2, s3g.identity()) - 2.0) < 1e-9);
  CHECK(std::abs(s3.value(2, t)) < 1e-9);
  CHECK(std::abs(s3.value(2, c) + 1.0) < 1e-9);
  CHECK(s3.orthogonality_defect(6) < 1e-8);

  auto q8 = character_table(quaternion_group());
  CHECK(q8.dims == std::vector<int>{1, 1, 1, 1, 2});

  auto a5 = character_table(alternating_group(5));
  CHECK(a5.dims == std::vector<int>{1, 3, 3, 4, 5});
  CHECK(a5.orthogonality_defect(60) < 1e-8);

  CHECK_THROWS_AS(character_table(cyclic_group(30), kDefaultSeed, 20), SizeBound);
}

TEST_CASE("matrix irreps") {
  for (const auto &g : {symmetric_group(3), quaternion_group(), dihedral_group(7),
                        symmetric_group(4), special_linear_group(2, 3)}) {
    auto t = character_table(g);
    auto irreps = matrix_irreps(g, t);
    REQUIRE(irreps.size() == t.size());
    for (const auto &u : irreps) {
      CHECK(u.multiplicativity_defect(g) < 1e-7);
      CHECK(u.unitarity_defect() < 1e-9);
      auto tr = traces(u.matrices);
      for (int x = 0; x < g.order(); ++x)
        CHECK(std::abs(tr[x] - t.value(u.label, x)) < 1e-8);
    }
  }
  auto s3g = symmetric_group(3);
  auto irreps = matrix_irreps(s3g, character_table(s3g));
  const Elem t = *s3g.find_label("(1 2)");
  CHECK(std::abs(irreps[1].matrices[t](0, 0) + 1.0) < 1e-12);
}
