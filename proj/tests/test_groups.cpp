#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kacforge/errors.hpp"
#include "kacforge/groups.hpp"

using namespace kacforge;

TEST_CASE("permutations compose left to right") {
  auto s3 = symmetric_group(3);
  CHECK(s3.order() == 6);
  auto a = *s3.find_label("(1 2 3)");
  auto t = *s3.find_label("(1 2)");
  CHECK(s3.label(s3.mul(a, t)) == "(2 3)");
  CHECK(format_cycles(parse_cycles("(1 3)(2 4)", 4)) == "(1 3)(2 4)");
  CHECK_THROWS_AS(parse_cycles("(1 5)", 4), ParseError);
}

TEST_CASE("named groups") {
  CHECK(cyclic_group(7).order() == 7);
  CHECK(dihedral_group(7).order() == 14);
  CHECK(!dihedral_group(7).is_abelian());
  CHECK(quaternion_group().order() == 8);
  CHECK(alternating_group(4).order() == 12);
  CHECK(symmetric_group(4).order() == 24);
  auto q = quaternion_group();
  int order4 = 0;
  for (int x = 0; x < 8; ++x)
    order4 += q.element_order(x) == 4;
  CHECK(order4 == 6);
}

TEST_CASE("non-associative table is rejected with a witness") {
  // Latin square with identity 0 that is not associative (order 5 loop).
  std::vector<std::vector<Elem>> t = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(FiniteGroup::from_cayley(t), doctest::Contains("witness"),
                       ValidationError);
}

TEST_CASE("conjugacy classes and centers") {
  auto s3 = symmetric_group(3);
  auto cd = conjugacy_and_center(s3);
  CHECK(cd.classes.size() == 3);
  CHECK(cd.center.size() == 1);
  CHECK(conjugacy_and_center(cyclic_group(5)).center.size() == 5);
  CHECK(conjugacy_and_center(special_linear_group(2, 5)).center.size() == 2);
  CHECK(conjugacy_and_center(special_linear_group(2, 3)).center.size() == 2);
  CHECK(conjugacy_and_center(special_linear_group(3, 2)).center.size() == 1);
  CHECK(special_linear_group(2, 5).order() == 120);
  CHECK(special_linear_group(3, 2).order() == 168);
}

TEST_CASE("isomorphism search") {
  CHECK(is_isomorphic_small(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3))));
  CHECK(!is_isomorphic_small(symmetric_group(3), cyclic_group(6)));
  CHECK(!is_isomorphic_small(quaternion_group(), dihedral_group(4)));
  CHECK(is_isomorphic_small(symmetric_group(4), symmetric_group(4)));
  CHECK_THROWS_AS(is_isomorphic_small(cyclic_group(600), cyclic_group(600)), SizeBound);
}

TEST_CASE("semidirect products") {
  auto z3 = cyclic_group(3), z2 = cyclic_group(2), z7 = cyclic_group(7);
  auto s = semidirect_product(z3, z2, {{0, 1, 2}, {0, 2, 1}});
  CHECK(is_isomorphic_small(s, symmetric_group(3)));
  auto triv = semidirect_product(z3, z2, {{0, 1, 2}, {0, 1, 2}});
  CHECK(is_isomorphic_small(triv, direct_product(z3, z2)));
  std::vector<Elem> neg(7);
  for (int i = 0; i < 7; ++i)
    neg[i] = (7 - i) % 7;
  auto d7 = semidirect_product(z7, z2, {{0, 1, 2, 3, 4, 5, 6}, neg});
  CHECK(is_isomorphic_small(d7, dihedral_group(7)));
  CHECK_THROWS_AS(semidirect_product(z3, z2, {{0, 1, 2}, {1, 2, 0}}), NotAnAction);
}

TEST_CASE("subgroups and quotients") {
  auto s4 = symmetric_group(4);
  auto d = derived_subgroup(s4);
  CHECK(d.size() == 12);
  auto q = quotient(s4, d);
  CHECK(q.group.order() == 2);
  auto sub = make_subgroup(s4, d);
  CHECK(sub.group.order() == 12);
  CHECK(sub.embedding.front() == s4.identity());
  CHECK(is_isomorphic_small(sub.group, alternating_group(4)));
}
