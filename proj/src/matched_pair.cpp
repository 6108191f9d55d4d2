#include "kacforge/matched_pair.hpp"

#include <algorithm>

#include "kacforge/errors.hpp"

namespace kacforge {

namespace {

std::string triple(const FiniteGroup &a, Elem x, const FiniteGroup &b, Elem y,
                   const FiniteGroup &c, Elem z) {
  return "(" + a.label(x) + ", " + b.label(y) + ", " + c.label(z) + ")";
}

} // namespace

MatchedPair MatchedPair::make_unchecked(FiniteGroup gamma, FiniteGroup g, std::vector<Elem> alpha,
                                        std::vector<Elem> beta) {
  MatchedPair mp;
  mp.gamma_ = std::move(gamma);
  mp.g_ = std::move(g);
  mp.alpha_ = std::move(alpha);
  mp.beta_ = std::move(beta);
  return mp;
}

MatchedPair MatchedPair::make(FiniteGroup gamma, FiniteGroup g, std::vector<Elem> alpha,
                              std::vector<Elem> beta) {
  auto mp = make_unchecked(std::move(gamma), std::move(g), std::move(alpha), std::move(beta));
  if (auto why = mp.violation())
    throw ValidationError("not a matched pair: " + *why);
  return mp;
}

MatchedPair MatchedPair::from_left_action(FiniteGroup gamma, FiniteGroup g,
                                          std::vector<Elem> alpha) {
  std::vector<Elem> beta(static_cast<std::size_t>(g.order()) * gamma.order());
  for (int x = 0; x < g.order(); ++x)
    for (int r = 0; r < gamma.order(); ++r)
      beta[static_cast<std::size_t>(x) * gamma.order() + r] = r;
  return make(std::move(gamma), std::move(g), std::move(alpha), std::move(beta));
}

MatchedPair MatchedPair::from_right_action(FiniteGroup gamma, FiniteGroup g,
                                           std::vector<Elem> beta) {
  std::vector<Elem> alpha(static_cast<std::size_t>(gamma.order()) * g.order());
  for (int r = 0; r < gamma.order(); ++r)
    for (int x = 0; x < g.order(); ++x)
      alpha[static_cast<std::size_t>(r) * g.order() + x] = x;
  return make(std::move(gamma), std::move(g), std::move(alpha), std::move(beta));
}

bool MatchedPair::alpha_trivial() const {
  for (int r = 0; r < n_gamma(); ++r)
    for (int x = 0; x < n_g(); ++x)
      if (alpha(r, x) != x)
        return false;
  return true;
}

bool MatchedPair::beta_trivial() const {
  for (int x = 0; x < n_g(); ++x)
    for (int r = 0; r < n_gamma(); ++r)
      if (beta(x, r) != r)
        return false;
  return true;
}

std::optional<std::string> MatchedPair::violation() const {
  const int nr = n_gamma(), ng = n_g();
  if (alpha_.size() != static_cast<std::size_t>(nr) * ng)
    return "alpha table has wrong size";
  if (beta_.size() != static_cast<std::size_t>(nr) * ng)
    return "beta table has wrong size";
  for (auto v : alpha_)
    if (v < 0 || v >= ng)
      return "alpha value out of range";
  for (auto v : beta_)
    if (v < 0 || v >= nr)
      return "beta value out of range";

  for (int r = 0; r < nr; ++r) {
    std::vector<char> hit(ng, 0);
    for (int x = 0; x < ng; ++x)
      if (hit[alpha(r, x)]++)
        return "alpha_" + gamma_.label(r) + " is not a bijection";
    if (alpha(r, g_.identity()) != g_.identity())
      return "alpha_" + gamma_.label(r) + "(e) != e";
  }
  for (int x = 0; x < ng; ++x) {
    std::vector<char> hit(nr, 0);
    for (int r = 0; r < nr; ++r)
      if (hit[beta(x, r)]++)
        return "beta_" + g_.label(x) + " is not a bijection";
    if (beta(x, gamma_.identity()) != gamma_.identity())
      return "beta_" + g_.label(x) + "(e) != e";
  }
  for (int x = 0; x < ng; ++x)
    if (alpha(gamma_.identity(), x) != x)
      return "alpha_e is not the identity";
  for (int r = 0; r < nr; ++r)
    if (beta(g_.identity(), r) != r)
      return "beta_e is not the identity";

  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < ng; ++x)
      for (int y = 0; y < ng; ++y)
        if (alpha(r, g_.mul(x, y)) != g_.mul(alpha(r, x), alpha(beta(x, r), y)))
          return "alpha_r(gh) != alpha_r(g) alpha_{beta_g(r)}(h) at (r,g,h) = " +
                 triple(gamma_, r, g_, x, g_, y);
  for (int x = 0; x < ng; ++x)
    for (int r = 0; r < nr; ++r)
      for (int s = 0; s < nr; ++s)
        if (beta(x, gamma_.mul(r, s)) != gamma_.mul(beta(alpha(s, x), r), beta(x, s)))
          return "beta_g(rs) != beta_{alpha_s(g)}(r) beta_g(s) at (g,r,s) = " +
                 triple(g_, x, gamma_, r, gamma_, s);
  for (int r = 0; r < nr; ++r)
    for (int s = 0; s < nr; ++s)
      for (int x = 0; x < ng; ++x)
        if (alpha(gamma_.mul(r, s), x) != alpha(r, alpha(s, x)))
          return "alpha is not a left action at (r,s,g) = " + triple(gamma_, r, gamma_, s, g_, x);
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y)
      for (int r = 0; r < nr; ++r)
        if (beta(g_.mul(x, y), r) != beta(y, beta(x, r)))
          return "beta is not a right action at (g,h,r) = " + triple(g_, x, g_, y, gamma_, r);
  return std::nullopt;
}

// ---- factorization ---------------------------------------------------------

MatchedPair derive_actions(const FiniteGroup &h, std::span<const Elem> gamma,
                           std::span<const Elem> g) {
  const Subgroup gs = make_subgroup(h, gamma);
  const Subgroup ks = make_subgroup(h, g);
  const int nr = gs.group.order(), ng = ks.group.order();
  {
    std::vector<char> in_gamma(h.order(), 0);
    for (Elem x : gs.embedding)
      in_gamma[x] = 1;
    for (Elem x : ks.embedding)
      if (x != h.identity() && in_gamma[x])
        throw NotMatched("Gamma and G intersect in " + h.label(x));
  }
  if (static_cast<long long>(nr) * ng != h.order())
    throw NotMatched("|Gamma||G| = " + std::to_string(static_cast<long long>(nr) * ng) +
                     " differs from |H| = " + std::to_string(h.order()));

  // Each h in H is uniquely a * b with a in G, b in Gamma.
  std::vector<std::pair<Elem, Elem>> fact(h.order(), {-1, -1});
  for (int a = 0; a < ng; ++a)
    for (int b = 0; b < nr; ++b) {
      const Elem p = h.mul(ks.embedding[a], gs.embedding[b]);
      if (fact[p].first >= 0)
        throw NotMatched("G Gamma does not exhaust H: " + h.label(p) + " factors twice");
      fact[p] = {a, b};
    }
  std::vector<Elem> alpha(static_cast<std::size_t>(nr) * ng), beta(alpha.size());
  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < ng; ++x) {
      const auto [a, b] = fact[h.mul(gs.embedding[r], ks.embedding[x])];
      alpha[static_cast<std::size_t>(r) * ng + x] = a;
      beta[static_cast<std::size_t>(x) * nr + r] = b;
    }
  return MatchedPair::make(gs.group, ks.group, std::move(alpha), std::move(beta));
}

FiniteGroup zappa_szep(const MatchedPair &mp) {
  const int nr = mp.n_gamma(), ng = mp.n_g(), n = nr * ng;
  const auto &gamma = mp.gamma();
  const auto &g = mp.g();
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int e1 = 0; e1 < n; ++e1) {
    const int r = e1 / ng, x = e1 % ng;
    labels[e1] = "(" + gamma.label(r) + "," + g.label(x) + ")";
    for (int e2 = 0; e2 < n; ++e2) {
      const int s = e2 / ng, y = e2 % ng;
      const Elem first = gamma.mul(mp.beta(y, r), s);
      const Elem second = g.mul(x, mp.alpha(r, y));
      table[static_cast<std::size_t>(e1) * n + e2] = first * ng + second;
    }
  }
  return FiniteGroup::from_flat_table(n, std::move(table), std::move(labels),
                                      GroupSource::derived);
}

// ---- orbits and fixed points -----------------------------------------------

FixedSets orbits_fixed_sets(const MatchedPair &mp) {
  const int nr = mp.n_gamma(), ng = mp.n_g();
  OrbitSpace os;
  os.orbit_of.assign(nr, -1);
  auto add_orbit = [&](Elem r) {
    std::vector<Elem> orbit;
    for (int x = 0; x < ng; ++x) {
      const Elem s = mp.beta(x, r);
      if (os.orbit_of[s] < 0) {
        os.orbit_of[s] = static_cast<int>(os.orbits.size());
        orbit.push_back(s);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    os.orbits.push_back(std::move(orbit));
  };
  add_orbit(mp.gamma().identity());
  for (int r = 0; r < nr; ++r)
    if (os.orbit_of[r] < 0)
      add_orbit(r);
  os.stabilizers.resize(nr);
  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < ng; ++x)
      if (mp.beta(x, r) == r)
        os.stabilizers[r].push_back(x);

  std::vector<Elem> gamma_fixed, g_fixed;
  for (int r = 0; r < nr; ++r)
    if (static_cast<int>(os.stabilizers[r].size()) == ng)
      gamma_fixed.push_back(r);
  for (int x = 0; x < ng; ++x) {
    bool fixed = true;
    for (int r = 0; r < nr && fixed; ++r)
      fixed = mp.alpha(r, x) == x;
    if (fixed)
      g_fixed.push_back(x);
  }
  return {std::move(os), make_subgroup(mp.gamma(), gamma_fixed), make_subgroup(mp.g(), g_fixed)};
}

std::vector<std::vector<IndicatorSet>> magic_unitary(const MatchedPair &mp,
                                                     std::span<const Elem> orbit) {
  std::vector<std::vector<IndicatorSet>> out(orbit.size(),
                                             std::vector<IndicatorSet>(orbit.size()));
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      auto &cell = out[i][j];
      cell.r = orbit[i];
      cell.s = orbit[j];
      for (int x = 0; x < mp.n_g(); ++x)
        if (mp.beta(x, cell.r) == cell.s)
          cell.members.push_back(x);
    }
  return out;
}

MagicRelations check_magic_relations(const MatchedPair &mp, std::span<const Elem> orbit) {
  const auto &g = mp.g();
  const int ng = g.order();
  const std::size_t m = orbit.size();
  const auto a = magic_unitary(mp, orbit);
  // Indicator functions as 0/1 vectors over G.
  std::vector<std::vector<std::vector<int>>> ind(m, std::vector<std::vector<int>>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      ind[i][j].assign(ng, 0);
      for (Elem x : a[i][j].members)
        ind[i][j][x] = 1;
    }
  MagicRelations out;
  auto fail = [&](int rel, const std::string &what) {
    out.failures.push_back("relation " + std::to_string(rel) + ": " + what);
  };
  const auto &gm = mp.gamma();
  // 1. 1_{A_{s,r}} 1_{A_{t,r}} = delta_{t,s} 1_{A_{s,r}}
  // 2. 1_{A_{s,r}} 1_{A_{s,t}} = delta_{r,t} 1_{A_{s,r}}
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t t = 0; t < m; ++t)
        for (int x = 0; x < ng; ++x) {
          const int lhs1 = ind[s][r][x] * ind[t][r][x];
          const int rhs1 = s == t ? ind[s][r][x] : 0;
          if (lhs1 != rhs1)
            fail(1, "r,s,t = " + gm.label(orbit[r]) + "," + gm.label(orbit[s]) + "," +
                        gm.label(orbit[t]) + " at g = " + g.label(x));
          const int lhs2 = ind[s][r][x] * ind[s][t][x];
          const int rhs2 = r == t ? ind[s][r][x] : 0;
          if (lhs2 != rhs2)
            fail(2, "r,s,t = " + gm.label(orbit[r]) + "," + gm.label(orbit[s]) + "," +
                        gm.label(orbit[t]) + " at g = " + g.label(x));
        }
  // 3, 4. Row and column sums equal 1.
  for (std::size_t r = 0; r < m; ++r)
    for (int x = 0; x < ng; ++x) {
      int row = 0, col = 0;
      for (std::size_t s = 0; s < m; ++s) {
        row += ind[r][s][x];
        col += ind[s][r][x];
      }
      if (row != 1)
        fail(3, "row " + gm.label(orbit[r]) + " sums to " + std::to_string(row) + " at g = " +
                    g.label(x));
      if (col != 1)
        fail(4, "column " + gm.label(orbit[r]) + " sums to " + std::to_string(col) +
                    " at g = " + g.label(x));
    }
  // 5. Delta(1_{A_{s,r}})(g, h) = 1_{A_{s,r}}(gh) = sum_t 1_{A_{s,t}}(g) 1_{A_{t,r}}(h).
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t r = 0; r < m; ++r)
      for (int x = 0; x < ng; ++x)
        for (int y = 0; y < ng; ++y) {
          int rhs = 0;
          for (std::size_t t = 0; t < m; ++t)
            rhs += ind[s][t][x] * ind[t][r][y];
          if (ind[s][r][g.mul(x, y)] != rhs)
            fail(5, "s,r = " + gm.label(orbit[s]) + "," + gm.label(orbit[r]) + " at (g,h) = (" +
                        g.label(x) + "," + g.label(y) + ")");
        }
  return out;
}

std::vector<std::vector<std::vector<Elem>>> b_sets(const MatchedPair &mp) {
  const int nr = mp.n_gamma(), ng = mp.n_g();
  std::vector<std::vector<std::vector<Elem>>> out(nr, std::vector<std::vector<Elem>>(nr));
  for (int r = 0; r < nr; ++r)
    for (int s = 0; s < nr; ++s)
      for (int x = 0; x < ng; ++x)
        if (mp.beta(mp.alpha(s, x), r) == r && mp.beta(x, s) == s)
          out[r][s].push_back(x);
  return out;
}

// ---- deformations ----------------------------------------------------------

std::optional<std::string> crossed_hom_violation_G(const MatchedPair &mp0,
                                                   std::span<const Elem> chi) {
  const auto &gamma = mp0.gamma();
  const auto &g = mp0.g();
  if (static_cast<int>(chi.size()) != g.order())
    return "chi has " + std::to_string(chi.size()) + " entries, expected " +
           std::to_string(g.order());
  for (Elem v : chi)
    if (v < 0 || v >= gamma.order())
      return std::string("chi value out of range");
  if (chi[g.identity()] != gamma.identity())
    return std::string("chi(e) != e");
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) {
      const Elem lhs = chi[g.mul(x, y)];
      const Elem rhs = gamma.mul(chi[x], chi[mp0.alpha(gamma.inv(chi[x]), y)]);
      if (lhs != rhs)
        return "chi(gh) != chi(g) chi(alpha_{chi(g)^-1}(h)) at (g,h) = (" + g.label(x) + "," +
               g.label(y) + ")";
    }
  return std::nullopt;
}

std::optional<std::string> crossed_hom_violation_Gamma(const MatchedPair &mp0,
                                                       std::span<const Elem> chi) {
  const auto &gamma = mp0.gamma();
  const auto &g = mp0.g();
  if (static_cast<int>(chi.size()) != gamma.order())
    return "chi has " + std::to_string(chi.size()) + " entries, expected " +
           std::to_string(gamma.order());
  for (Elem v : chi)
    if (v < 0 || v >= g.order())
      return std::string("chi value out of range");
  if (chi[gamma.identity()] != g.identity())
    return std::string("chi(e) != e");
  for (int r = 0; r < gamma.order(); ++r)
    for (int s = 0; s < gamma.order(); ++s) {
      const Elem lhs = chi[gamma.mul(r, s)];
      const Elem rhs = g.mul(chi[mp0.beta(g.inv(chi[s]), r)], chi[s]);
      if (lhs != rhs)
        return "chi(rs) != chi(beta_{chi(s)^-1}(r)) chi(s) at (r,s) = (" + gamma.label(r) + "," +
               gamma.label(s) + ")";
    }
  return std::nullopt;
}

MatchedPair deform_by_chi_G(const MatchedPair &mp0, std::span<const Elem> chi) {
  if (!mp0.beta_trivial())
    throw ValidationError("deformation by chi : G -> Gamma needs a pair with trivial beta");
  if (auto why = crossed_hom_violation_G(mp0, chi))
    throw NotCrossedHom(*why);
  const auto &gamma = mp0.gamma();
  const auto &g = mp0.g();
  const int nr = gamma.order(), ng = g.order();
  std::vector<Elem> table(static_cast<std::size_t>(ng) * ng);
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < ng; ++y)
      table[static_cast<std::size_t>(x) * ng + y] = g.mul(x, mp0.alpha(chi[x], y));
  FiniteGroup gchi =
      FiniteGroup::from_flat_table(ng, std::move(table), g.labels(), GroupSource::derived);
  std::vector<Elem> beta(static_cast<std::size_t>(ng) * nr);
  for (int x = 0; x < ng; ++x)
    for (int r = 0; r < nr; ++r)
      beta[static_cast<std::size_t>(x) * nr + r] =
          gamma.mul(gamma.mul(gamma.inv(chi[mp0.alpha(r, x)]), r), chi[x]);
  return MatchedPair::make(gamma, std::move(gchi), mp0.alpha_table(), std::move(beta));
}

MatchedPair deform_by_chi_Gamma(const MatchedPair &mp0, std::span<const Elem> chi) {
  if (!mp0.alpha_trivial())
    throw ValidationError("deformation by chi : Gamma -> G needs a pair with trivial alpha");
  if (auto why = crossed_hom_violation_Gamma(mp0, chi))
    throw NotCrossedHom(*why);
  const auto &gamma = mp0.gamma();
  const auto &g = mp0.g();
  const int nr = gamma.order(), ng = g.order();
  std::vector<Elem> table(static_cast<std::size_t>(nr) * nr);
  for (int r = 0; r < nr; ++r)
    for (int s = 0; s < nr; ++s)
      table[static_cast<std::size_t>(r) * nr + s] = gamma.mul(mp0.beta(chi[s], r), s);
  FiniteGroup gchi =
      FiniteGroup::from_flat_table(nr, std::move(table), gamma.labels(), GroupSource::derived);
  std::vector<Elem> alpha(static_cast<std::size_t>(nr) * ng);
  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < ng; ++x)
      alpha[static_cast<std::size_t>(r) * ng + x] =
          g.mul(g.mul(chi[r], x), g.inv(chi[mp0.beta(x, r)]));
  return MatchedPair::make(std::move(gchi), g, std::move(alpha), mp0.beta_table());
}

DeformationRecipe lambda_recipe(const MatchedPair &mp0, std::span<const Elem> lambda) {
  if (!mp0.beta_trivial())
    throw ValidationError("the Lambda construction needs a pair with trivial beta");
  const auto &gamma = mp0.gamma();
  const auto &g = mp0.g();
  const Subgroup ls = make_subgroup(gamma, lambda);
  FiniteGroup gl = direct_product(ls.group, g);
  const int nr = gamma.order(), ng = g.order(), nl = ls.group.order();
  std::vector<Elem> alpha(static_cast<std::size_t>(nr) * nl * ng);
  for (int r = 0; r < nr; ++r)
    for (int l = 0; l < nl; ++l)
      for (int x = 0; x < ng; ++x)
        alpha[static_cast<std::size_t>(r) * nl * ng + l * ng + x] = l * ng + mp0.alpha(r, x);
  std::vector<Elem> chi(static_cast<std::size_t>(nl) * ng);
  for (int l = 0; l < nl; ++l)
    for (int x = 0; x < ng; ++x)
      chi[static_cast<std::size_t>(l) * ng + x] = ls.embedding[l];
  return {MatchedPair::from_left_action(gamma, std::move(gl), std::move(alpha)), std::move(chi)};
}

DeformationRecipe quotient_recipe(const FiniteGroup &gamma0, const FiniteGroup &g,
                                  std::span<const Elem> q) {
  if (static_cast<int>(q.size()) != gamma0.order())
    throw ValidationError("quotient map has wrong length");
  for (int a = 0; a < gamma0.order(); ++a)
    for (int b = 0; b < gamma0.order(); ++b)
      if (q[gamma0.mul(a, b)] != g.mul(q[a], q[b]))
        throw ValidationError("quotient map is not a homomorphism");
  FiniteGroup gamma = direct_product(gamma0, g);
  const int n0 = gamma0.order(), ng = g.order(), nr = n0 * ng;
  std::vector<Elem> beta(static_cast<std::size_t>(ng) * nr);
  for (int x = 0; x < ng; ++x)
    for (int c = 0; c < n0; ++c)
      for (int h = 0; h < ng; ++h)
        beta[static_cast<std::size_t>(x) * nr + c * ng + h] = c * ng + g.conj(h, x);
  std::vector<Elem> chi(nr);
  for (int c = 0; c < n0; ++c)
    for (int h = 0; h < ng; ++h)
      chi[c * ng + h] = q[c];
  return {MatchedPair::from_right_action(std::move(gamma), g, std::move(beta)), std::move(chi)};
}

MatchedPair conjugation_pair(const FiniteGroup &g, std::span<const Elem> gamma) {
  const Subgroup gs = make_subgroup(g, gamma);
  const int nr = gs.group.order(), ng = g.order();
  std::vector<Elem> alpha(static_cast<std::size_t>(nr) * ng);
  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < ng; ++x)
      alpha[static_cast<std::size_t>(r) * ng + x] = g.conj(x, g.inv(gs.embedding[r]));
  return MatchedPair::from_left_action(gs.group, g, std::move(alpha));
}

} // namespace kacforge
