#include "kacforge/abelian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>

#include "kacforge/errors.hpp"

namespace kacforge {

std::int64_t AbelianGroup::torsion_order() const {
  std::int64_t n = 1;
  for (auto d : invariant_factors)
    n *= d;
  return n;
}

std::string AbelianGroup::name() const {
  std::string out;
  for (auto d : invariant_factors)
    out += (out.empty() ? "" : " x ") + ("Z/" + std::to_string(d));
  for (int i = 0; i < free_rank; ++i)
    out += out.empty() ? "Z" : " x Z";
  return out.empty() ? "1" : out;
}

FiniteGroup AbelianGroup::to_group() const {
  if (!is_finite())
    throw DomainError("cannot realize an infinite abelian group as a finite group");
  FiniteGroup g = trivial_group();
  for (auto d : invariant_factors)
    g = g.order() == 1 ? cyclic_group(static_cast<int>(d))
                       : direct_product(g, cyclic_group(static_cast<int>(d)));
  return g;
}

// ---- Smith normal form -----------------------------------------------------

std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  const std::size_t k = std::min(rows, cols);
  std::vector<BigInt> diag(k, 0);

  for (std::size_t t = 0; t < k; ++t) {
    while (true) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows)
        return diag; // remaining block is zero
      std::swap(m[t], m[pi]);
      for (auto &row : m)
        std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0)
          continue;
        const BigInt q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j)
          m[i][j] -= q * m[t][j];
        clean = clean && m[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0)
          continue;
        const BigInt q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i)
          m[i][j] -= q * m[i][t];
        clean = clean && m[t][j] == 0;
      }
      if (!clean)
        continue;

      // Divisibility: fold any offending row into row t and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t c = t; c < cols; ++c)
              m[t][c] += m[i][c];
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    diag[t] = abs(m[t][t]);
  }
  return diag;
}

AbelianGroup abelian_invariants(const Presentation &p) {
  if (p.n_generators < 0)
    throw ValidationError("presentation needs a nonnegative generator count");
  std::vector<std::vector<BigInt>> m;
  for (const auto &rel : p.relators) {
    if (static_cast<int>(rel.size()) != p.n_generators)
      throw ValidationError("relator length " + std::to_string(rel.size()) +
                            " does not match generator count " +
                            std::to_string(p.n_generators));
    m.emplace_back(rel.begin(), rel.end());
  }
  AbelianGroup out;
  int rank = 0;
  if (!m.empty() && p.n_generators > 0) {
    for (const auto &d : smith_diagonal(std::move(m))) {
      if (d == 0)
        continue;
      ++rank;
      if (d == 1)
        continue;
      if (d > std::numeric_limits<std::int64_t>::max())
        throw SizeBound("invariant factor exceeds 64 bits");
      out.invariant_factors.push_back(static_cast<std::int64_t>(d));
    }
  }
  out.free_rank = p.n_generators - rank;
  return out;
}

// ---- finite abelian groups by torsion counting -----------------------------

AbelianGroup abelian_structure(const FiniteGroup &a) {
  if (!a.is_abelian())
    throw ValidationError("abelian_structure needs an abelian group");
  int n = a.order();
  std::vector<int> primes;
  for (int p = 2, m = n; m > 1; ++p)
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0)
        m /= p;
    }
  // For each prime, the exponents of the cyclic p-factors in descending order.
  std::vector<std::vector<int>> parts;
  std::size_t slots = 0;
  for (int p : primes) {
    int p_part = 1;
    for (int m = n; m % p == 0; m /= p)
      p_part *= p;
    std::vector<int> at_least; // at_least[k-1] = #{factors with exponent >= k}
    int prev = 1;
    for (long long pk = p; ; pk *= p) {
      int count = 0;
      for (int x = 0; x < n; ++x)
        count += a.pow(x, pk) == a.identity();
      int ratio = count / prev, r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      at_least.push_back(r);
      prev = count;
      if (count == p_part)
        break;
    }
    std::vector<int> exps;
    for (std::size_t k = 0; k < at_least.size(); ++k) {
      const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
      for (int c = 0; c < at_least[k] - next; ++c)
        exps.push_back(static_cast<int>(k) + 1);
    }
    std::sort(exps.rbegin(), exps.rend());
    slots = std::max(slots, exps.size());
    std::vector<int> powers;
    for (int e : exps) {
      int v = 1;
      for (int i = 0; i < e; ++i)
        v *= p;
      powers.push_back(v);
    }
    parts.push_back(std::move(powers));
  }
  std::vector<std::int64_t> factors(slots, 1);
  for (const auto &powers : parts)
    for (std::size_t i = 0; i < powers.size(); ++i)
      factors[slots - 1 - i] *= powers[i];
  AbelianGroup out;
  for (auto d : factors)
    if (d > 1)
      out.invariant_factors.push_back(d);
  return out;
}

AbelianGroup abelian_invariants(const FiniteGroup &g) {
  const auto derived = derived_subgroup(g);
  return abelian_structure(quotient(g, derived).group);
}

// ---- dual group ------------------------------------------------------------

std::complex<double> DualGroup::value(int character, Elem g) const {
  return std::polar(1.0, 2.0 * std::numbers::pi * characters[character][g] / exponent);
}

int DualGroup::find(const std::vector<int> &exponents) const {
  for (std::size_t i = 0; i < characters.size(); ++i)
    if (characters[i] == exponents)
      return static_cast<int>(i);
  return -1;
}

DualGroup dual_group(const FiniteGroup &g) {
  const auto q = quotient(g, derived_subgroup(g));
  const FiniteGroup &ab = q.group;
  int e = 1;
  for (int x = 0; x < ab.order(); ++x)
    e = std::lcm(e, ab.element_order(x));
  const auto gens = generating_set(ab);

  std::vector<std::vector<int>> found;
  std::vector<int> images(gens.size(), 0);
  std::vector<int> map(ab.order());
  auto extend = [&]() {
    std::fill(map.begin(), map.end(), -1);
    map[ab.identity()] = 0;
    std::vector<Elem> queue{ab.identity()};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Elem nx = ab.mul(queue[head], gens[i]);
        const int v = (map[queue[head]] + images[i]) % e;
        if (map[nx] < 0) {
          map[nx] = v;
          queue.push_back(nx);
        } else if (map[nx] != v) {
          return false;
        }
      }
    return true;
  };
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == gens.size()) {
      if (extend())
        found.push_back(map);
      return;
    }
    const int step = e / ab.element_order(gens[k]);
    for (int v = 0; v < e; v += step) {
      images[k] = v;
      search(k + 1);
    }
  };
  search(0);
  if (static_cast<int>(found.size()) != ab.order())
    throw ValidationError("character search found " + std::to_string(found.size()) +
                          " characters for an abelianization of order " +
                          std::to_string(ab.order()));

  DualGroup out;
  out.exponent = e;
  out.structure = abelian_structure(ab);
  for (const auto &chi : found) {
    std::vector<int> lifted(g.order());
    for (int x = 0; x < g.order(); ++x)
      lifted[x] = chi[q.project[x]];
    out.characters.push_back(std::move(lifted));
  }
  const int n = static_cast<int>(out.characters.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i)
    index[out.characters[i]] = i;
  std::vector<Elem> table(static_cast<std::size_t>(n) * n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back("chi" + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      std::vector<int> prod(g.order());
      for (int x = 0; x < g.order(); ++x)
        prod[x] = (out.characters[i][x] + out.characters[j][x]) % e;
      table[static_cast<std::size_t>(i) * n + j] = index.at(prod);
    }
  }
  out.group = FiniteGroup::from_flat_table(n, std::move(table), std::move(labels),
                                           GroupSource::derived);
  return out;
}

} // namespace kacforge
