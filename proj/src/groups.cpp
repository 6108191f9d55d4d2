#include "kacforge/groups.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "kacforge/config.hpp"
#include "kacforge/errors.hpp"

namespace kacforge {

std::string_view to_string(GroupSource source) {
  switch (source) {
  case GroupSource::cayley:
    return "cayley";
  case GroupSource::permutation_generators:
    return "permutation-generators";
  case GroupSource::matrix_generators_mod_m:
    return "matrix-generators-mod-m";
  case GroupSource::derived:
    return "derived";
  }
  return "unknown";
}

// ---- FiniteGroup -----------------------------------------------------------

FiniteGroup::FiniteGroup() = default;

FiniteGroup FiniteGroup::from_cayley(const std::vector<std::vector<Elem>> &table,
                                     std::vector<std::string> labels, GroupSource source) {
  const int n = static_cast<int>(table.size());
  std::vector<Elem> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      throw ValidationError("cayley table row " + std::to_string(i) + " has length " +
                            std::to_string(table[i].size()) + ", expected " +
                            std::to_string(n));
    flat.insert(flat.end(), table[i].begin(), table[i].end());
  }
  return from_flat_table(n, std::move(flat), std::move(labels), source);
}

FiniteGroup FiniteGroup::from_flat_table(int order, std::vector<Elem> table,
                                         std::vector<std::string> labels, GroupSource source) {
  if (order < 1)
    throw ValidationError("group order must be positive");
  const auto n = static_cast<std::size_t>(order);
  if (table.size() != n * n)
    throw ValidationError("cayley table has wrong size");
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] < 0 || table[i] >= order)
      throw ValidationError("cayley entry out of range at (" + std::to_string(i / n) + "," +
                            std::to_string(i % n) + ")");
  if (!labels.empty()) {
    if (labels.size() != n)
      throw ValidationError("label count does not match group order");
    auto sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ValidationError("element labels are not unique");
  }

  FiniteGroup g;
  g.n_ = order;
  g.table_ = std::move(table);
  g.labels_ = std::move(labels);
  g.source_ = source;

  // Latin square rows and columns.
  for (int a = 0; a < order; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < order; ++b) {
      if (row[g.mul(a, b)]++)
        throw ValidationError("cayley row " + std::to_string(a) + " repeats an entry");
      if (col[g.mul(b, a)]++)
        throw ValidationError("cayley column " + std::to_string(a) + " repeats an entry");
    }
  }

  int identity = -1;
  for (int e = 0; e < order && identity < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < order && ok; ++x)
      ok = g.mul(e, x) == x && g.mul(x, e) == x;
    if (ok)
      identity = e;
  }
  if (identity < 0)
    throw ValidationError("cayley table has no two-sided identity");
  g.identity_ = identity;

  g.inverse_.assign(n, -1);
  for (int a = 0; a < order; ++a) {
    for (int b = 0; b < order; ++b)
      if (g.mul(a, b) == identity) {
        if (g.mul(b, a) != identity)
          throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
        g.inverse_[a] = b;
        break;
      }
  }

  auto check = [&](int a, int b, int c) {
    if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
      throw ValidationError("cayley table is not associative: witness triple (" +
                            std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ")");
  };
  if (order <= 64) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          check(a, b, c);
  } else {
    Rng rng(kDefaultSeed);
    for (int s = 0; s < 100000; ++s)
      check(static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n)),
            static_cast<int>(rng.below(n)));
  }
  return g;
}

Elem FiniteGroup::pow(Elem a, long long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem result = identity_;
  Elem base = a;
  while (k > 0) {
    if (k & 1)
      result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

int FiniteGroup::element_order(Elem a) const {
  int k = 1;
  for (Elem x = a; x != identity_; x = mul(x, a))
    ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (mul(a, b) != mul(b, a))
        return false;
  return true;
}

std::string FiniteGroup::label(Elem a) const {
  return labels_.empty() ? std::to_string(a) : labels_[a];
}

std::optional<Elem> FiniteGroup::find_label(std::string_view name) const {
  for (int a = 0; a < n_; ++a)
    if (label(a) == name)
      return a;
  return std::nullopt;
}

std::vector<std::vector<Elem>> FiniteGroup::cayley() const {
  std::vector<std::vector<Elem>> out(n_);
  for (int a = 0; a < n_; ++a)
    out[a].assign(table_.begin() + static_cast<std::ptrdiff_t>(a) * n_,
                  table_.begin() + static_cast<std::ptrdiff_t>(a + 1) * n_);
  return out;
}

std::vector<Elem> Subgroup::locate(int ambient_order) const {
  std::vector<Elem> where(ambient_order, -1);
  for (std::size_t i = 0; i < embedding.size(); ++i)
    where[embedding[i]] = static_cast<Elem>(i);
  return where;
}

// ---- closure helpers -------------------------------------------------------

namespace {

/// Breadth-first closure of a monoid generated by `gens` under `compose`,
/// followed by a Cayley table. Elements are numbered in discovery order, so
/// the identity is element 0.
template <class T, class Compose>
std::pair<std::vector<T>, std::vector<Elem>>
close_and_tabulate(const T &identity, const std::vector<T> &gens, Compose compose,
                   std::size_t cap, std::size_t table_cap) {
  std::vector<T> elems{identity};
  std::map<T, int> index{{identity, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto &gen : gens) {
      T next = compose(elems[head], gen);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (elems.size() > cap)
          throw SizeBound("generated group exceeds the closure cap of " + std::to_string(cap));
      }
    }
  }
  if (elems.size() > table_cap)
    throw SizeBound("group of order " + std::to_string(elems.size()) +
                    " exceeds the Cayley table cap of " + std::to_string(table_cap));
  const std::size_t n = elems.size();
  std::vector<Elem> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = index.at(compose(elems[a], elems[b]));
  return {std::move(elems), std::move(table)};
}

Permutation compose_perm(const Permutation &p, const Permutation &q) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = q[p[i]];
  return r;
}

} // namespace

Permutation parse_cycles(std::string_view text, int degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::size_t i = 0;
  auto fail = [&](const std::string &why) {
    throw ParseError("bad cycle notation '" + std::string(text) + "' at offset " +
                     std::to_string(i) + ": " + why);
  };
  std::vector<char> used(degree, 0);
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      fail("expected '('");
    ++i;
    std::vector<int> cycle;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
        ++i;
      if (i >= text.size())
        fail("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail("expected a point");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      if (v < 1 || v > degree)
        fail("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[v - 1]++)
        fail("point " + std::to_string(v) + " repeated");
      cycle.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      p[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return p;
}

std::string format_cycles(const Permutation &p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i))
      continue;
    out += '(';
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = 1;
      if (out.back() != '(')
        out += ' ';
      out += std::to_string(j + 1);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

FiniteGroup from_permutations(int degree, const std::vector<Permutation> &generators,
                              std::size_t cap) {
  if (degree < 1)
    throw ValidationError("permutation degree must be positive");
  for (const auto &g : generators) {
    if (static_cast<int>(g.size()) != degree)
      throw ValidationError("generator has wrong degree");
    std::vector<char> hit(degree, 0);
    for (int v : g) {
      if (v < 0 || v >= degree || hit[v]++)
        throw ValidationError("generator is not a permutation");
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  auto [elems, table] = close_and_tabulate(id, generators, compose_perm, cap, 4096);
  std::vector<std::string> labels;
  labels.reserve(elems.size());
  for (const auto &p : elems)
    labels.push_back(format_cycles(p));
  return FiniteGroup::from_flat_table(static_cast<int>(elems.size()), std::move(table),
                                      std::move(labels), GroupSource::permutation_generators);
}

FiniteGroup from_matrices_mod(long long modulus, const std::vector<IntMatrix> &generators,
                              std::size_t cap, std::size_t table_cap) {
  if (modulus < 2)
    throw ValidationError("matrix modulus must be at least 2");
  if (generators.empty())
    return trivial_group();
  const std::size_t d = generators.front().size();
  auto reduce = [modulus](long long v) { return ((v % modulus) + modulus) % modulus; };
  std::vector<std::vector<long long>> gens;
  for (const auto &m : generators) {
    if (m.size() != d)
      throw ValidationError("matrix generators must share one size");
    std::vector<long long> flat;
    for (const auto &row : m) {
      if (row.size() != d)
        throw ValidationError("matrix generator is not square");
      for (long long v : row)
        flat.push_back(reduce(v));
    }
    gens.push_back(std::move(flat));
  }
  std::vector<long long> id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i)
    id[i * d + i] = 1;
  auto mult = [d, modulus](const std::vector<long long> &a, const std::vector<long long> &b) {
    std::vector<long long> c(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        const long long aik = a[i * d + k];
        if (aik == 0)
          continue;
        for (std::size_t j = 0; j < d; ++j)
          c[i * d + j] = (c[i * d + j] + aik * b[k * d + j]) % modulus;
      }
    return c;
  };
  auto [elems, table] = close_and_tabulate(id, gens, mult, cap, table_cap);
  std::vector<std::string> labels;
  for (const auto &m : elems) {
    std::string s = "[";
    for (std::size_t i = 0; i < d; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < d; ++j)
        s += (j ? "," : "") + std::to_string(m[i * d + j]);
      s += "]";
    }
    labels.push_back(s + "]");
  }
  return FiniteGroup::from_flat_table(static_cast<int>(elems.size()), std::move(table),
                                      std::move(labels), GroupSource::matrix_generators_mod_m);
}

FiniteGroup special_linear_group(int n, long long p) {
  std::vector<IntMatrix> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        continue;
      IntMatrix m(n, std::vector<long long>(n, 0));
      for (int k = 0; k < n; ++k)
        m[k][k] = 1;
      m[i][j] = 1;
      gens.push_back(std::move(m));
    }
  return from_matrices_mod(p, gens);
}

// ---- named groups ----------------------------------------------------------

FiniteGroup trivial_group() { return FiniteGroup::from_cayley({{0}}, {"e"}); }

FiniteGroup cyclic_group(int n) {
  if (n < 1)
    throw ValidationError("cyclic group order must be positive");
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b)
      table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  return FiniteGroup::from_flat_table(n, std::move(table), std::move(labels), GroupSource::cayley);
}

FiniteGroup dihedral_group(int n) {
  if (n < 1)
    throw ValidationError("dihedral parameter must be positive");
  const int order = 2 * n;
  std::vector<Elem> table(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int a = x % n, i = x / n;
    labels[x] = "r^" + std::to_string(a) + (i ? "s" : "");
    for (int y = 0; y < order; ++y) {
      const int b = y % n, j = y / n;
      const int rot = ((a + (i ? -b : b)) % n + n) % n;
      table[static_cast<std::size_t>(x) * order + y] = rot + n * ((i + j) % 2);
    }
  }
  return FiniteGroup::from_flat_table(order, std::move(table), std::move(labels),
                                      GroupSource::cayley);
}

FiniteGroup quaternion_group() {
  // Element (sign, unit) with units 1,i,j,k; index = unit + 4*sign.
  static constexpr int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char *names[4] = {"1", "i", "j", "k"};
  std::vector<Elem> table(64);
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = std::string(x >= 4 ? "-" : "") + names[x % 4];
    for (int y = 0; y < 8; ++y) {
      const int u = x % 4, v = y % 4;
      const int sign = (x / 4 + y / 4 + unit_sign[u][v]) % 2;
      table[x * 8 + y] = unit_prod[u][v] + 4 * sign;
    }
  }
  return FiniteGroup::from_flat_table(8, std::move(table), std::move(labels), GroupSource::cayley);
}

FiniteGroup symmetric_group(int n) {
  if (n <= 1)
    return trivial_group();
  std::vector<Permutation> gens;
  gens.push_back(parse_cycles("(1 2)", n));
  std::string cycle = "(";
  for (int i = 1; i <= n; ++i)
    cycle += std::to_string(i) + (i < n ? " " : ")");
  gens.push_back(parse_cycles(cycle, n));
  return from_permutations(n, gens);
}

FiniteGroup alternating_group(int n) {
  if (n <= 2)
    return trivial_group();
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k)
    gens.push_back(parse_cycles("(1 2 " + std::to_string(k) + ")", n));
  return from_permutations(n, gens);
}

FiniteGroup direct_product(const FiniteGroup &a, const FiniteGroup &b) {
  const int na = a.order(), nb = b.order(), n = na * nb;
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    labels[x] = "(" + a.label(x / nb) + "," + b.label(x % nb) + ")";
    for (int y = 0; y < n; ++y)
      table[static_cast<std::size_t>(x) * n + y] =
          a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup::from_flat_table(n, std::move(table), std::move(labels), GroupSource::derived);
}

// ---- subgroups -------------------------------------------------------------

std::vector<Elem> generated_subgroup(const FiniteGroup &g, std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> elems{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (Elem s : gens) {
      const Elem next = g.mul(elems[head], s);
      if (!in[next]) {
        in[next] = 1;
        elems.push_back(next);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

Subgroup make_subgroup(const FiniteGroup &g, std::span<const Elem> elements) {
  std::vector<Elem> embedding{g.identity()};
  std::vector<Elem> rest(elements.begin(), elements.end());
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  for (Elem x : rest)
    if (x != g.identity())
      embedding.push_back(x);
  if (std::find(rest.begin(), rest.end(), g.identity()) == rest.end())
    throw ValidationError("subgroup element list does not contain the identity");
  std::vector<Elem> where(g.order(), -1);
  for (std::size_t i = 0; i < embedding.size(); ++i)
    where[embedding[i]] = static_cast<Elem>(i);
  const int n = static_cast<int>(embedding.size());
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(g.label(embedding[a]));
    for (int b = 0; b < n; ++b) {
      const Elem prod = where[g.mul(embedding[a], embedding[b])];
      if (prod < 0)
        throw ValidationError("element set is not closed under multiplication: " +
                              g.label(embedding[a]) + " * " + g.label(embedding[b]));
      table[static_cast<std::size_t>(a) * n + b] = prod;
    }
  }
  return {FiniteGroup::from_flat_table(n, std::move(table), std::move(labels),
                                       GroupSource::derived),
          std::move(embedding)};
}

bool is_normal(const FiniteGroup &g, std::span<const Elem> subgroup) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : subgroup)
    in[x] = 1;
  for (Elem x : subgroup)
    for (int h = 0; h < g.order(); ++h)
      if (!in[g.conj(x, h)])
        return false;
  return true;
}

Quotient quotient(const FiniteGroup &g, std::span<const Elem> normal_subgroup) {
  if (!is_normal(g, normal_subgroup))
    throw ValidationError("quotient requires a normal subgroup");
  std::vector<Elem> project(g.order(), -1);
  std::vector<Elem> reps;
  for (int x = 0; x < g.order(); ++x) {
    if (project[x] >= 0)
      continue;
    const Elem coset = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem n : normal_subgroup)
      project[g.mul(x, n)] = coset;
  }
  // Put the identity coset first.
  const Elem id_coset = project[g.identity()];
  if (id_coset != 0) {
    for (auto &p : project)
      p = p == id_coset ? 0 : (p == 0 ? id_coset : p);
    std::swap(reps[0], reps[id_coset]);
  }
  const int q = static_cast<int>(reps.size());
  std::vector<Elem> table(static_cast<std::size_t>(q) * q);
  std::vector<std::string> labels;
  for (int a = 0; a < q; ++a) {
    labels.push_back(g.label(reps[a]) + "N");
    for (int b = 0; b < q; ++b)
      table[static_cast<std::size_t>(a) * q + b] = project[g.mul(reps[a], reps[b])];
  }
  return {FiniteGroup::from_flat_table(q, std::move(table), std::move(labels),
                                       GroupSource::derived),
          std::move(project)};
}

// ---- structure -------------------------------------------------------------

ConjugacyData conjugacy_and_center(const FiniteGroup &g) {
  ConjugacyData out;
  out.class_of.assign(g.order(), -1);
  auto add_class = [&](Elem x) {
    const int id = static_cast<int>(out.classes.size());
    std::vector<Elem> cls;
    for (int h = 0; h < g.order(); ++h) {
      const Elem y = g.conj(x, h);
      if (out.class_of[y] < 0) {
        out.class_of[y] = id;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  };
  add_class(g.identity());
  for (int x = 0; x < g.order(); ++x)
    if (out.class_of[x] < 0)
      add_class(x);
  for (const auto &cls : out.classes)
    if (cls.size() == 1)
      out.center.push_back(cls.front());
  std::sort(out.center.begin(), out.center.end());
  return out;
}

std::vector<Elem> centralizer(const FiniteGroup &g, std::span<const Elem> subset) {
  std::vector<Elem> out;
  for (int h = 0; h < g.order(); ++h) {
    bool commutes = true;
    for (Elem x : subset)
      if (g.mul(h, x) != g.mul(x, h)) {
        commutes = false;
        break;
      }
    if (commutes)
      out.push_back(h);
  }
  return out;
}

std::vector<Elem> derived_subgroup(const FiniteGroup &g) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Elem> commutators;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) {
      const Elem c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (!seen[c]++)
        commutators.push_back(c);
    }
  return generated_subgroup(g, commutators);
}

std::vector<Elem> generating_set(const FiniteGroup &g) {
  std::vector<Elem> gens;
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  std::vector<int> orders(g.order());
  for (int x = 0; x < g.order(); ++x)
    orders[x] = g.element_order(x);
  while (true) {
    Elem best = -1;
    for (int x = 0; x < g.order(); ++x)
      if (!in[x] && (best < 0 || orders[x] > orders[best]))
        best = x;
    if (best < 0)
      break;
    gens.push_back(best);
    std::fill(in.begin(), in.end(), 0);
    for (Elem x : generated_subgroup(g, gens))
      in[x] = 1;
  }
  return gens;
}

// ---- isomorphism -----------------------------------------------------------

namespace {

struct ElementKey {
  int order;
  int centralizer_size;
  auto operator<=>(const ElementKey &) const = default;
};

std::vector<ElementKey> element_keys(const FiniteGroup &g) {
  std::vector<ElementKey> keys(g.order());
  for (int x = 0; x < g.order(); ++x) {
    int c = 0;
    for (int h = 0; h < g.order(); ++h)
      c += g.mul(x, h) == g.mul(h, x);
    keys[x] = {g.element_order(x), c};
  }
  return keys;
}

} // namespace

std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup &a, const FiniteGroup &b,
                                                  int cap) {
  if (a.order() > cap || b.order() > cap)
    throw SizeBound("isomorphism search is limited to order " + std::to_string(cap));
  if (a.order() != b.order())
    return std::nullopt;
  if (a.is_abelian() != b.is_abelian())
    return std::nullopt;
  const auto keys_a = element_keys(a);
  const auto keys_b = element_keys(b);
  {
    auto sa = keys_a, sb = keys_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return std::nullopt;
  }
  const auto gens = generating_set(a);
  std::vector<std::vector<Elem>> options(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int y = 0; y < b.order(); ++y)
      if (keys_b[y] == keys_a[gens[i]])
        options[i].push_back(y);

  std::vector<Elem> images(gens.size(), -1);
  std::vector<Elem> map(a.order(), -1);

  // Extends the map over <gens[0..k)> along Cayley-graph edges, checking
  // consistency and injectivity. Every edge being consistent makes the map a
  // homomorphism on the generated subgroup.
  auto extend = [&](std::size_t k) {
    std::fill(map.begin(), map.end(), -1);
    std::vector<char> used(b.order(), 0);
    std::vector<Elem> queue{a.identity()};
    map[a.identity()] = b.identity();
    used[b.identity()] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Elem x = queue[head];
      for (std::size_t i = 0; i < k; ++i) {
        const Elem nx = a.mul(x, gens[i]);
        const Elem ny = b.mul(map[x], images[i]);
        if (map[nx] >= 0) {
          if (map[nx] != ny)
            return false;
        } else {
          if (used[ny])
            return false;
          used[ny] = 1;
          map[nx] = ny;
          queue.push_back(nx);
        }
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (k == gens.size())
      return extend(k);
    for (Elem y : options[k]) {
      images[k] = y;
      if (extend(k + 1) && search(k + 1))
        return true;
    }
    return false;
  };
  if (!search(0))
    return std::nullopt;
  extend(gens.size());
  for (int x = 0; x < a.order(); ++x)
    for (int y = 0; y < a.order(); ++y)
      if (map[a.mul(x, y)] != b.mul(map[x], map[y]))
        return std::nullopt;
  return map;
}

bool is_isomorphic_small(const FiniteGroup &a, const FiniteGroup &b, int cap) {
  return find_isomorphism(a, b, cap).has_value();
}

FiniteGroup semidirect_product(const FiniteGroup &n, const FiniteGroup &q,
                               const std::vector<std::vector<Elem>> &action) {
  const int nn = n.order(), nq = q.order();
  if (static_cast<int>(action.size()) != nq)
    throw NotAnAction("action must list one automorphism per element of Q");
  for (int s = 0; s < nq; ++s) {
    const auto &phi = action[s];
    if (static_cast<int>(phi.size()) != nn)
      throw NotAnAction("automorphism " + std::to_string(s) + " has wrong length");
    std::vector<char> hit(nn, 0);
    for (Elem v : phi)
      if (v < 0 || v >= nn || hit[v]++)
        throw NotAnAction("action of " + q.label(s) + " is not a bijection");
    for (int x = 0; x < nn; ++x)
      for (int y = 0; y < nn; ++y)
        if (phi[n.mul(x, y)] != n.mul(phi[x], phi[y]))
          throw NotAnAction("action of " + q.label(s) + " is not multiplicative on (" +
                            n.label(x) + "," + n.label(y) + ")");
  }
  for (int x = 0; x < nn; ++x)
    if (action[q.identity()][x] != x)
      throw NotAnAction("identity of Q does not act trivially");
  for (int s = 0; s < nq; ++s)
    for (int t = 0; t < nq; ++t)
      for (int x = 0; x < nn; ++x)
        if (action[q.mul(s, t)][x] != action[s][action[t][x]])
          throw NotAnAction("action is not a homomorphism at (" + q.label(s) + "," +
                            q.label(t) + ")");
  const int order = nn * nq;
  std::vector<Elem> table(static_cast<std::size_t>(order) * order);
  std::vector<std::string> labels(order);
  for (int e1 = 0; e1 < order; ++e1) {
    const int a = e1 % nn, s = e1 / nn;
    labels[e1] = "(" + n.label(a) + "," + q.label(s) + ")";
    for (int e2 = 0; e2 < order; ++e2) {
      const int b = e2 % nn, t = e2 / nn;
      table[static_cast<std::size_t>(e1) * order + e2] =
          n.mul(a, action[s][b]) + nn * q.mul(s, t);
    }
  }
  return FiniteGroup::from_flat_table(order, std::move(table), std::move(labels),
                                      GroupSource::derived);
}

} // namespace kacforge
