#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kacforge/approx_props.hpp"
#include "kacforge/corpus.hpp"
#include "kacforge/errors.hpp"

using namespace kacforge;

TEST_CASE("pushforward along alpha") {
  const auto mp = corpus::s3_z2_z3(); // Z/2 inverting Z/3
  const Elem t = *mp.gamma().find_label("(1 2)");
  const Elem c = *mp.g().find_label("(1 2 3)");
  const Elem c2 = *mp.g().find_label("(1 3 2)");
  std::vector<Rational> w(3, 0);
  w[c] = Rational(7, 10);
  w[c2] = Rational(3, 10);
  const auto mu = FiniteMeasure::make(w);
  const auto pushed = pushforward(mu, t, mp);
  CHECK(pushed.weights[c] == Rational(3, 10));
  CHECK(pushed.weights[c2] == Rational(7, 10));
  CHECK(tv_distance(mu, pushed) == Rational(4, 5));
  CHECK(pushforward(FiniteMeasure::uniform(3), t, mp) == FiniteMeasure::uniform(3));
  CHECK(pushforward(FiniteMeasure::dirac(3, c), t, mp) == FiniteMeasure::dirac(3, c2));

  // Group action law on a pair with a larger Gamma.
  const auto big = corpus::s4_s3_z4();
  std::vector<Rational> v(big.n_g());
  for (int g = 0; g < big.n_g(); ++g)
    v[g] = Rational(g + 1, big.n_g() * (big.n_g() + 1) / 2);
  const auto nu = FiniteMeasure::make(v);
  for (int r = 0; r < big.n_gamma(); ++r)
    for (int s = 0; s < big.n_gamma(); ++s)
      CHECK(pushforward(nu, big.gamma().mul(r, s), big) == pushforward(pushforward(nu, s, big), r, big));
}

TEST_CASE("total variation and parsing") {
  const auto a = FiniteMeasure::parse({"0", "0.7", "0.3"});
  const auto b = FiniteMeasure::parse({"0", "3/10", "7/10"});
  CHECK(tv_distance(a, b) == Rational(4, 5));
  CHECK(tv_distance(a, a) == 0);
  CHECK(tv_distance(FiniteMeasure::dirac(3, 0), FiniteMeasure::dirac(3, 2)) == 2);
  CHECK_THROWS_AS(FiniteMeasure::parse({"0.5", "0.6"}), ValidationError);
  CHECK_THROWS_AS(FiniteMeasure::parse({"x"}), ParseError);
  CHECK_THROWS_AS(FiniteMeasure::parse({"1.5", "-0.5"}), ValidationError);
  // Triangle inequality on a few measures.
  const auto c = FiniteMeasure::uniform(3);
  CHECK(tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c));
}

TEST_CASE("convolution and measure Fourier transform") {
  const auto g = symmetric_group(3);
  const auto irreps = matrix_irreps(g, character_table(g));
  const auto uni = measure_fourier(FiniteMeasure::uniform(6), irreps);
  CHECK(std::abs(uni.blocks.at(0)(0, 0) - 1.0) < 1e-10);
  for (const auto &[x, m] : uni.blocks)
    if (x != 0)
      CHECK(m.cwiseAbs().maxCoeff() < 1e-10);
  const auto dirac = measure_fourier(FiniteMeasure::dirac(6, g.identity()), irreps);
  for (const auto &[x, m] : dirac.blocks)
    CHECK((m - CMatrix::Identity(m.rows(), m.cols())).norm() < 1e-12);

  Rng rng(9);
  auto random_measure = [&] {
    std::vector<Rational> w(6);
    Rational total = 0;
    for (auto &x : w) {
      x = Rational(static_cast<long long>(rng.below(20)) + 1);
      total += x;
    }
    for (auto &x : w)
      x /= total;
    return FiniteMeasure::make(w);
  };
  for (int s = 0; s < 10; ++s) {
    const auto mu = random_measure(), nu = random_measure(), rho = random_measure();
    const auto conv = convolution(g, mu, nu);
    CHECK(convolution(g, conv, rho) == convolution(g, mu, convolution(g, nu, rho)));
    const auto lhs = measure_fourier(conv, irreps);
    const auto a = measure_fourier(mu, irreps), b = measure_fourier(nu, irreps);
    for (const auto &[x, m] : lhs.blocks)
      CHECK((m - a.blocks.at(x) * b.blocks.at(x)).cwiseAbs().maxCoeff() < 1e-9);
    for (double norm : block_norms(a))
      CHECK(norm <= 1 + 1e-12);
  }
}

TEST_CASE("smoothing is a convex combination of pushforwards") {
  const auto mp = corpus::s3_z2_z3();
  const auto mu = FiniteMeasure::dirac(3, *mp.g().find_label("(1 2 3)"));
  const auto sm = smoothing({Rational(1, 2), Rational(1, 2)}, mu, mp);
  CHECK(sm.weights[mp.g().identity()] == 0);
  CHECK(sm.weights[*mp.g().find_label("(1 3 2)")] == Rational(1, 2));
  // Invariant under every pushforward when f is uniform.
  for (int r = 0; r < 2; ++r)
    CHECK(pushforward(sm, r, mp) == sm);
}

TEST_CASE("relative (T) obstruction") {
  for (const auto &g : {cyclic_group(3), symmetric_group(3), quaternion_group()}) {
    const auto rep = rel_T_obstruction(g, 4, 100);
    CHECK(rep.certified());
    CHECK(rep.worst_distance == 2);
    CHECK(rep.grid_checked > 0);
    CHECK(rep.mixed_checked > 0);
  }
  const auto g = symmetric_group(3);
  CHECK(tv_distance(FiniteMeasure::dirac(6, g.identity()), FiniteMeasure::dirac(6, g.identity())) == 0);
  std::vector<Rational> w(6, Rational(1, 10));
  w[g.identity()] = Rational(1, 2);
  CHECK(tv_distance(FiniteMeasure::make(w), FiniteMeasure::dirac(6, g.identity())) == 1);
}

TEST_CASE("Chebyshev states") {
  const auto s = chebyshev_state(3, 2, 30);
  CHECK(s.values[0] == 1);
  CHECK(s.values[1] == Rational(2, 3));
  CHECK(s.values[2] == Rational(3, 8));
  CHECK(s.values[3] == Rational(4, 21));
  CHECK(s.strictly_decreasing_from_one());
  // Recursion consistency X P_k = P_{k+1} + P_{k-1} at both points.
  const auto pt = chebyshev_values(2, 30), pn = chebyshev_values(3, 30);
  for (int k = 1; k < 30; ++k) {
    CHECK(2 * pt[k] == pt[k + 1] + pt[k - 1]);
    CHECK(s.values[k] * pn[k] == pt[k]);
  }
  CHECK(s.c0_profile(1e-6).has_value());
  const auto close = chebyshev_state(3, Rational(2999, 1000), 10);
  for (const auto &v : close.values)
    CHECK(to_double(v) > 0.9);
  CHECK_THROWS_AS(chebyshev_state(3, 3, 5), DomainError);
  CHECK_THROWS_AS(chebyshev_state(3, 0, 5), DomainError);
  CHECK_THROWS_AS(chebyshev_state(1, Rational(1, 2), 5), DomainError);
  CHECK(chebyshev_state(5, Rational(7, 2), 1).values[1] == Rational(7, 10));
}
