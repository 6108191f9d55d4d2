#include "kacforge/crossed_product.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "kacforge/errors.hpp"

namespace kacforge {

// ---- fusion rings ----------------------------------------------------------

const std::vector<std::pair<int, int>> &FusionRing::product(int x, int y) const {
  const auto k = static_cast<std::size_t>(x) * size() + y;
  if (overflow[k] && !silent)
    throw TruncationOverflow(labels[x] + " (x) " + labels[y] + " leaves the truncation window");
  return fusion[k];
}

int FusionRing::N(int x, int y, int z) const {
  for (const auto &[w, m] : product(x, y))
    if (w == z)
      return m;
  return 0;
}

std::optional<int> FusionRing::find(const std::string &label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    return std::nullopt;
  return static_cast<int>(it - labels.begin());
}

namespace {

FusionRing empty_ring(std::string name, int n) {
  FusionRing r;
  r.name = std::move(name);
  r.labels.resize(n);
  r.dual.resize(n);
  r.dims.resize(n);
  r.fusion.resize(static_cast<std::size_t>(n) * n);
  r.overflow.assign(static_cast<std::size_t>(n) * n, 0);
  return r;
}

} // namespace

FusionRing group_ring(const FiniteGroup &g) {
  const int n = g.order();
  auto r = empty_ring("group", n);
  r.unit = g.identity();
  for (int x = 0; x < n; ++x) {
    r.labels[x] = g.label(x);
    r.dual[x] = g.inv(x);
    r.dims[x] = 1.0;
    for (int y = 0; y < n; ++y)
      r.fusion[static_cast<std::size_t>(x) * n + y] = {{g.mul(x, y), 1}};
  }
  return r;
}

FusionRing representation_ring(const FiniteGroup &g, const CharacterTable &t) {
  const int n = static_cast<int>(t.size());
  auto r = empty_ring("dual-group", n);
  r.unit = 0;
  for (int x = 0; x < n; ++x) {
    r.labels[x] = "x" + std::to_string(x);
    r.dual[x] = t.dual(x);
    r.dims[x] = t.dims[x];
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        cplx s = 0;
        for (std::size_t k = 0; k < t.classes.size(); ++k)
          s += static_cast<double>(t.classes[k].size()) * t.chars[x][k] * t.chars[y][k] *
               std::conj(t.chars[z][k]);
        s /= static_cast<double>(g.order());
        const long m = std::lround(s.real());
        if (std::abs(s - cplx(static_cast<double>(m), 0)) > 1e-6)
          throw NonIntegral("fusion multiplicity is not an integer");
        if (m > 0)
          r.fusion[static_cast<std::size_t>(x) * n + y].emplace_back(z, static_cast<int>(m));
      }
  return r;
}

std::vector<BigInt> free_orthogonal_dims(int n, int cutoff) {
  std::vector<BigInt> d{1};
  if (cutoff >= 1)
    d.push_back(n);
  for (int k = 2; k <= cutoff; ++k)
    d.push_back(BigInt(n) * d[k - 1] - d[k - 2]);
  return d;
}

FusionRing free_orthogonal_ring(int n, int cutoff, bool silent_truncation) {
  if (n < 2 || cutoff < 0)
    throw ValidationError("free orthogonal ring needs N >= 2 and a nonnegative cutoff");
  const int size = cutoff + 1;
  auto r = empty_ring("free-orthogonal:N=" + std::to_string(n) + ",cutoff=" + std::to_string(cutoff), size);
  r.truncated = true;
  r.silent = silent_truncation;
  const auto dims = free_orthogonal_dims(n, cutoff);
  for (int k = 0; k < size; ++k) {
    r.labels[k] = std::to_string(k);
    r.dual[k] = k;
    r.dims[k] = dims[k].convert_to<double>();
  }
  for (int k = 0; k < size; ++k)
    for (int l = 0; l < size; ++l) {
      auto &cell = r.fusion[static_cast<std::size_t>(k) * size + l];
      for (int z = std::abs(k - l); z <= k + l; z += 2)
        if (z <= cutoff)
          cell.emplace_back(z, 1);
      r.overflow[static_cast<std::size_t>(k) * size + l] = k + l > cutoff;
    }
  return r;
}

RingCheck check_ring(const FusionRing &r) {
  RingCheck out;
  const int n = r.size();
  auto fail = [&](std::string what) {
    if (out.failures.size() < 20)
      out.failures.push_back(std::move(what));
  };
  auto prod = [&](int x, int y) { return r.fusion[static_cast<std::size_t>(x) * n + y]; };
  auto N = [&](int x, int y, int z) {
    for (const auto &[w, m] : prod(x, y))
      if (w == z)
        return m;
    return 0;
  };
  for (int x = 0; x < n; ++x) {
    if (r.dual[r.dual[x]] != x)
      fail("dual is not an involution at " + r.labels[x]);
    for (int z = 0; z < n; ++z)
      if (N(x, r.unit, z) != (x == z) || N(r.unit, x, z) != (x == z))
        fail("unit law fails at " + r.labels[x]);
    for (int y = 0; y < n; ++y) {
      if (!r.defined(x, y))
        continue;
      if (N(x, y, r.unit) != (y == r.dual[x]))
        fail("dual law fails at (" + r.labels[x] + ", " + r.labels[y] + ")");
      for (int z = 0; z < n; ++z)
        if (r.defined(z, r.dual[y]) && N(x, y, z) != N(z, r.dual[y], x))
          fail("Frobenius reciprocity fails at (" + r.labels[x] + ", " + r.labels[y] + ", " +
               r.labels[z] + ")");
      if (!r.truncated) {
        double s = 0;
        for (const auto &[z, m] : prod(x, y))
          s += m * r.dims[z];
        if (std::abs(s - r.dims[x] * r.dims[y]) > 1e-9 * std::max(1.0, s))
          fail("dim is not multiplicative at (" + r.labels[x] + ", " + r.labels[y] + ")");
      }
    }
  }
  // (a b) c = a (b c) as multisets of labels, over defined products only.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!r.defined(a, b))
        continue;
      for (int c = 0; c < n; ++c) {
        if (!r.defined(b, c))
          continue;
        std::vector<long long> lhs(n, 0), rhs(n, 0);
        bool ok = true;
        for (const auto &[w, m] : prod(a, b)) {
          ok = ok && r.defined(w, c);
          for (const auto &[z, k] : prod(w, c))
            lhs[z] += static_cast<long long>(m) * k;
        }
        for (const auto &[w, m] : prod(b, c)) {
          ok = ok && r.defined(a, w);
          for (const auto &[z, k] : prod(a, w))
            rhs[z] += static_cast<long long>(m) * k;
        }
        if (ok && lhs != rhs)
          fail("associativity fails at (" + r.labels[a] + ", " + r.labels[b] + ", " + r.labels[c] + ")");
      }
    }
  return out;
}

RingAction trivial_action(const FiniteGroup &gamma, const FusionRing &r) {
  std::vector<int> id(r.size());
  for (int x = 0; x < r.size(); ++x)
    id[x] = x;
  return {gamma, std::vector<std::vector<int>>(gamma.order(), id)};
}

std::optional<std::string> action_violation(const FusionRing &r, const RingAction &a) {
  const int n = r.size();
  const auto &g = a.group;
  if (static_cast<int>(a.act.size()) != g.order())
    return std::string("one permutation per group element is required");
  for (int s = 0; s < g.order(); ++s) {
    const auto &p = a.act[s];
    if (static_cast<int>(p.size()) != n)
      return "permutation for " + g.label(s) + " has the wrong length";
    std::vector<int> sorted(p);
    std::sort(sorted.begin(), sorted.end());
    for (int x = 0; x < n; ++x)
      if (sorted[x] != x)
        return "map for " + g.label(s) + " is not a permutation";
    if (p[r.unit] != r.unit)
      return g.label(s) + " moves the unit";
    for (int x = 0; x < n; ++x) {
      if (p[r.dual[x]] != r.dual[p[x]])
        return g.label(s) + " does not commute with the dual at " + r.labels[x];
      if (std::abs(r.dims[p[x]] - r.dims[x]) > 1e-9)
        return g.label(s) + " changes the dimension of " + r.labels[x];
      for (int y = 0; y < n; ++y) {
        if (!r.defined(x, y) || !r.defined(p[x], p[y]))
          continue;
        for (int z = 0; z < n; ++z)
          if (r.N(p[x], p[y], p[z]) != r.N(x, y, z))
            return g.label(s) + " does not preserve fusion at (" + r.labels[x] + ", " +
                   r.labels[y] + ", " + r.labels[z] + ")";
      }
    }
    for (int t = 0; t < g.order(); ++t)
      for (int x = 0; x < n; ++x)
        if (a.act[g.mul(s, t)][x] != p[a.act[t][x]])
          return "not a homomorphism at (" + g.label(s) + ", " + g.label(t) + ")";
  }
  return std::nullopt;
}

CrossedFusionRing crossed_ring(const FusionRing &base, const RingAction &action) {
  if (auto why = action_violation(base, action))
    throw ActionNotCompatible(*why);
  const auto &g = action.group;
  const int nb = base.size(), ng = g.order();
  CrossedFusionRing c{base, action, empty_ring("crossed(" + base.name + ")", nb * ng)};
  auto &r = c.ring;
  r.truncated = base.truncated;
  r.silent = base.silent;
  r.unit = c.label(g.identity(), base.unit);
  for (int gam = 0; gam < ng; ++gam)
    for (int x = 0; x < nb; ++x) {
      const int l = c.label(gam, x);
      r.labels[l] = g.label(gam) + "." + base.labels[x];
      r.dims[l] = base.dims[x];
      r.dual[l] = c.label(g.inv(gam), action.act[gam][base.dual[x]]);
    }
  for (int rr = 0; rr < ng; ++rr)
    for (int x = 0; x < nb; ++x)
      for (int s = 0; s < ng; ++s)
        for (int y = 0; y < nb; ++y) {
          const int moved = action.act[g.inv(s)][x];
          const auto k = static_cast<std::size_t>(c.label(rr, x)) * r.size() + c.label(s, y);
          r.overflow[k] = !base.defined(moved, y);
          const Elem t = g.mul(rr, s);
          for (const auto &[z, m] : base.fusion[static_cast<std::size_t>(moved) * nb + y])
            r.fusion[k].emplace_back(c.label(t, z), m);
        }
  return c;
}

// ---- crossed instances -------------------------------------------------------

CrossedInstance crossed_instance(const MatchedPair &mp, std::uint64_t seed) {
  if (!mp.beta_trivial())
    throw ValidationError("a crossed product needs a trivial beta");
  KacAlgebra algebra(mp);
  auto catalog = enumerate_irreps(algebra, seed);
  const auto &t = catalog.candidates.table;
  const auto base = representation_ring(mp.g(), t);
  const auto &gamma = mp.gamma();
  RingAction action{gamma, {}};
  for (int r = 0; r < gamma.order(); ++r) {
    const Elem rinv = gamma.inv(r);
    std::vector<int> perm;
    for (int x = 0; x < base.size(); ++x) {
      int hit = -1;
      for (int y = 0; y < base.size() && hit < 0; ++y) {
        bool same = true;
        for (int g = 0; g < mp.n_g() && same; ++g)
          same = std::abs(t.value(y, g) - t.value(x, mp.alpha(rinv, g))) < 1e-8;
        if (same)
          hit = y;
      }
      if (hit < 0)
        throw ActionNotCompatible("alpha does not permute the irreducible characters");
      perm.push_back(hit);
    }
    action.act.push_back(std::move(perm));
  }
  auto ring = crossed_ring(base, action);
  return {std::move(algebra), std::move(catalog), std::move(ring)};
}

CrossedInstance conj_action_builder(const FiniteGroup &g, std::span<const Elem> gamma,
                                    std::uint64_t seed) {
  return crossed_instance(conjugation_pair(g, gamma), seed);
}

Corepresentation crossed_corep(const CrossedInstance &c, Elem gamma, int x) {
  const auto &a = c.algebra;
  auto w = irrep_corep(a, c.catalog.candidates.irreps.at(x));
  const auto ug = a.group_element(gamma);
  for (auto &e : w.entries)
    e = a.multiply(ug, e);
  w.label = c.ring.ring.labels[c.ring.label(gamma, x)];
  return w;
}

// ---- lengths -----------------------------------------------------------------

std::optional<std::string> length_violation(const FusionRing &r, const LengthFunction &l) {
  const int n = r.size();
  if (static_cast<int>(l.size()) != n)
    return std::string("length function has the wrong size");
  if (std::abs(l[r.unit]) > 1e-12)
    return std::string("l(unit) != 0");
  for (int x = 0; x < n; ++x) {
    if (l[x] < 0)
      return "negative length at " + r.labels[x];
    if (std::abs(l[x] - l[r.dual[x]]) > 1e-12)
      return "l(dual x) != l(x) at " + r.labels[x];
  }
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      if (!r.defined(y, z))
        continue;
      for (const auto &[x, m] : r.fusion[static_cast<std::size_t>(y) * n + z])
        if (m > 0 && l[x] > l[y] + l[z] + 1e-12)
          return "triangle inequality fails: " + r.labels[x] + " in " + r.labels[y] + " (x) " +
                 r.labels[z];
    }
  return std::nullopt;
}

LengthFunction word_length(const FiniteGroup &g, std::span<const Elem> generators) {
  LengthFunction l(g.order(), -1);
  std::deque<Elem> queue{g.identity()};
  l[g.identity()] = 0;
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem s : generators)
      for (Elem y : {g.mul(x, s), g.mul(x, g.inv(s))})
        if (l[y] < 0) {
          l[y] = l[x] + 1;
          queue.push_back(y);
        }
  }
  if (std::any_of(l.begin(), l.end(), [](double v) { return v < 0; }))
    throw ValidationError("generators do not generate the group");
  return l;
}

LengthFunction invariantize(const FusionRing &base, const RingAction &action, const LengthFunction &l) {
  LengthFunction out(l);
  for (const auto &p : action.act)
    for (int x = 0; x < base.size(); ++x) {
      if (base.truncated && p[x] != x)
        throw OrbitInfinite("orbit of " + base.labels[x] + " is not contained in the truncation");
      out[x] = std::max(out[x], l[p[x]]);
    }
  return out;
}

LengthFunction length_l0(const CrossedFusionRing &c, const LengthFunction &l_gamma,
                         const LengthFunction &l, bool invariantize_first) {
  const LengthFunction base = invariantize_first ? invariantize(c.base, c.action, l) : l;
  for (const auto &p : c.action.act)
    for (int x = 0; x < c.base.size(); ++x)
      if (std::abs(base[p[x]] - base[x]) > 1e-12)
        throw ValidationError("length function is not invariant under the action");
  LengthFunction out(c.ring.size());
  for (int g = 0; g < c.action.group.order(); ++g)
    for (int x = 0; x < c.base.size(); ++x)
      out[c.label(g, x)] = l_gamma[g] + base[x];
  return out;
}

// ---- Fourier transform -----------------------------------------------------------

DualElement &DualElement::operator+=(const DualElement &other) {
  for (const auto &[x, m] : other.blocks) {
    auto it = blocks.find(x);
    if (it == blocks.end())
      blocks.emplace(x, m);
    else
      it->second += m;
  }
  return *this;
}

DualElement unit_projection() {
  DualElement a;
  a.blocks.emplace(0, CMatrix::Identity(1, 1));
  return a;
}

std::vector<cplx> fourier_transform(const DualElement &a, const std::vector<MatrixIrrep> &irreps) {
  const std::size_t n = irreps.at(0).matrices.size();
  std::vector<cplx> f(n, 0.0);
  for (const auto &[x, block] : a.blocks) {
    const auto &u = irreps.at(x);
    for (std::size_t g = 0; g < n; ++g)
      f[g] += static_cast<double>(u.dim) * (u.matrices[g] * block).trace();
  }
  return f;
}

DualElement fourier_inverse(const std::vector<cplx> &f, const std::vector<MatrixIrrep> &irreps) {
  DualElement a;
  const double n = static_cast<double>(f.size());
  for (std::size_t x = 0; x < irreps.size(); ++x) {
    const auto &u = irreps[x];
    CMatrix block = CMatrix::Zero(u.dim, u.dim);
    for (std::size_t g = 0; g < f.size(); ++g)
      block += f[g] * u.matrices[g].adjoint();
    a.blocks.emplace(static_cast<int>(x), block / n);
  }
  return a;
}

double sobolev0_norm_squared(const DualElement &a, const std::vector<int> &dims) {
  double s = 0;
  for (const auto &[x, block] : a.blocks)
    s += dims.at(x) * (block.adjoint() * block).trace().real();
  return s;
}

DualElement random_dual_element(const std::vector<int> &labels, const std::vector<int> &dims, Rng &rng) {
  DualElement a;
  for (int x : labels) {
    CMatrix m(dims.at(x), dims.at(x));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        m(i, j) = cplx(rng.symmetric(), rng.symmetric());
    a.blocks.emplace(x, m);
  }
  return a;
}

namespace {

std::vector<int> crossed_dims(const CrossedInstance &c) {
  std::vector<int> d;
  for (double v : c.ring.ring.dims)
    d.push_back(static_cast<int>(std::lround(v)));
  return d;
}

} // namespace

AlgebraElement crossed_fourier(const CrossedInstance &c, const DualElement &a) {
  const int nb = c.ring.base.size();
  AlgebraElement f = c.algebra.zero();
  for (const auto &[label, block] : a.blocks) {
    const auto u = crossed_corep(c, label / nb, label % nb);
    for (int i = 0; i < u.dim; ++i)
      for (int j = 0; j < u.dim; ++j)
        f += static_cast<double>(u.dim) * block(j, i) * u.at(i, j);
  }
  return f;
}

LemmaReport check_lemma_fourier(const CrossedInstance &c, const DualElement &a, double tol) {
  const auto &alg = c.algebra;
  const int nb = c.ring.base.size();
  const auto &irreps = c.catalog.candidates.irreps;
  std::vector<int> base_dims;
  for (const auto &u : irreps)
    base_dims.push_back(u.dim);

  std::map<Elem, DualElement> slices;
  for (const auto &[label, block] : a.blocks)
    slices[label / nb].blocks.emplace(label % nb, block);

  const AlgebraElement lhs = crossed_fourier(c, a);
  AlgebraElement rhs = alg.zero();
  double sliced_norm = 0;
  for (const auto &[gamma, slice] : slices) {
    rhs += alg.multiply(alg.group_element(gamma), alg.function(fourier_transform(slice, irreps)));
    sliced_norm += sobolev0_norm_squared(slice, base_dims);
  }
  const double norm = sobolev0_norm_squared(a, crossed_dims(c));
  const double parseval = alg.haar(alg.multiply(alg.adjoint(lhs), lhs)).real();

  LemmaReport rep;
  rep.transform_deviation = (lhs - rhs).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, norm);
  rep.norm_deviation = std::abs(norm - sliced_norm) / scale;
  rep.parseval_deviation = std::abs(norm - parseval) / scale;
  if (!rep.pass(tol))
    throw IdentityViolated("Fourier decomposition fails: transform " +
                           std::to_string(rep.transform_deviation) + ", norm " +
                           std::to_string(rep.norm_deviation) + ", Parseval " +
                           std::to_string(rep.parseval_deviation));
  return rep;
}

RdReport rd_inequality_sample(const CrossedInstance &c, const LengthFunction &l0,
                              const std::vector<double> &poly, int samples, std::uint64_t seed) {
  if (c.ring.ring.truncated)
    throw ValidationError("the operator norm is not faithful on a truncated ring");
  const auto &alg = c.algebra;
  std::map<long, std::vector<int>> bands;
  for (int x = 0; x < c.ring.ring.size(); ++x)
    bands[static_cast<long>(std::floor(l0.at(x)))].push_back(x);
  std::vector<long> keys;
  for (const auto &[k, v] : bands)
    keys.push_back(k);
  const auto dims = crossed_dims(c);
  Rng rng(seed);
  RdReport rep;
  for (int s = 0; s < samples; ++s) {
    const long k = keys[static_cast<std::size_t>(s) % keys.size()];
    const auto a = random_dual_element(bands[k], dims, rng);
    const AlgebraElement f = crossed_fourier(c, a);
    CMatrix left(alg.dim(), alg.dim());
    for (int b = 0; b < alg.dim(); ++b)
      left.col(b) = alg.multiply(f, alg.basis_element(b));
    const double op = Eigen::JacobiSVD<CMatrix>(left).singularValues()[0];
    double p = 0, power = 1;
    for (double coef : poly) {
      p += coef * power;
      power *= static_cast<double>(k);
    }
    const double ratio = op / (p * std::sqrt(sobolev0_norm_squared(a, dims)));
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.pass = rep.max_ratio <= 1 + 1e-9;
  return rep;
}

CrossedInvariants crossed_invariant_groups(const CrossedInstance &c) {
  const auto &mp = c.algebra.pair();
  CrossedInvariants out;
  out.computed = invariant_groups(c.algebra, c.catalog);

  const auto spG = dual_group(mp.g());
  std::vector<std::vector<Elem>> action;
  for (int r = 0; r < mp.n_gamma(); ++r) {
    std::vector<Elem> perm;
    for (const auto &w : spG.characters) {
      std::vector<int> moved(w.size());
      for (int g = 0; g < mp.n_g(); ++g)
        moved[g] = w[mp.alpha(mp.gamma().inv(r), g)];
      perm.push_back(spG.find(moved));
    }
    action.push_back(std::move(perm));
  }
  out.intrinsic_model = semidirect_product(spG.group, mp.gamma(), action);

  std::vector<Elem> fixed;
  for (int g = 0; g < mp.n_g(); ++g) {
    bool inv = true;
    for (int r = 0; r < mp.n_gamma() && inv; ++r)
      inv = mp.alpha(r, g) == g;
    if (inv)
      fixed.push_back(g);
  }
  out.spectrum_model = direct_product(make_subgroup(mp.g(), fixed).group, dual_group(mp.gamma()).group);
  out.intrinsic_matches = is_isomorphic_small(out.computed.intrinsic, out.intrinsic_model);
  out.spectrum_matches = is_isomorphic_small(out.computed.spectrum, out.spectrum_model);
  return out;
}

} // namespace kacforge
