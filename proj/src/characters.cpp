#include "kacforge/characters.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "kacforge/errors.hpp"

namespace kacforge {

namespace {

constexpr int kMaxRetries = 10;

double eigen_gap(const Eigen::VectorXcd &values) {
  double gap = INFINITY;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    for (Eigen::Index j = i + 1; j < values.size(); ++j)
      gap = std::min(gap, std::abs(values[i] - values[j]));
  return gap;
}

// Values rounded for deterministic ordering of rows.
std::vector<std::pair<long long, long long>> sort_key(const std::vector<cplx> &row) {
  std::vector<std::pair<long long, long long>> key;
  for (const auto &v : row)
    key.emplace_back(std::llround(v.real() * 1e6), std::llround(v.imag() * 1e6));
  return key;
}

} // namespace

int CharacterTable::dual(int irrep) const {
  for (std::size_t j = 0; j < chars.size(); ++j) {
    bool same = true;
    for (std::size_t k = 0; k < classes.size() && same; ++k)
      same = std::abs(chars[j][k] - std::conj(chars[irrep][k])) < 1e-6;
    if (same)
      return static_cast<int>(j);
  }
  return -1;
}

double CharacterTable::orthogonality_defect(int group_order) const {
  const std::size_t r = classes.size();
  double worst = 0;
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < chars.size(); ++j) {
      cplx s = 0;
      for (std::size_t k = 0; k < r; ++k)
        s += static_cast<double>(classes[k].size()) * chars[i][k] * std::conj(chars[j][k]);
      worst = std::max(worst, std::abs(s / static_cast<double>(group_order) - (i == j ? 1.0 : 0.0)));
    }
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      cplx s = 0;
      for (std::size_t i = 0; i < chars.size(); ++i)
        s += chars[i][k] * std::conj(chars[i][l]);
      const double expect = k == l ? static_cast<double>(group_order) / classes[k].size() : 0.0;
      worst = std::max(worst, std::abs(s - expect) * classes[k].size() / group_order);
    }
  return worst;
}

CharacterTable character_table(const FiniteGroup &g, std::uint64_t seed, int bound) {
  const int n = g.order();
  if (n > bound)
    throw SizeBound("character table requested for order " + std::to_string(n) +
                    " above the bound " + std::to_string(bound));
  const auto cd = conjugacy_and_center(g);
  const int r = static_cast<int>(cd.classes.size());

  // c[j][i][k] = #{x in C_j : x^-1 z in C_i} for a fixed z in C_k.
  std::vector<Eigen::MatrixXcd> m(r, Eigen::MatrixXcd::Zero(r, r));
  for (int k = 0; k < r; ++k) {
    const Elem z = cd.classes[k].front();
    for (int x = 0; x < n; ++x)
      m[cd.class_of[x]](cd.class_of[g.mul(g.inv(x), z)], k) += 1.0;
  }

  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(r, r);
    for (int j = 0; j < r; ++j)
      combo += cplx(rng.symmetric(), rng.symmetric()) * m[j];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(combo);
    if (es.info() != Eigen::Success)
      continue;
    const double scale = 1.0 + es.eigenvalues().cwiseAbs().maxCoeff();
    if (r > 1 && eigen_gap(es.eigenvalues()) < 1e-6 * scale)
      continue;

    CharacterTable t;
    t.classes = cd.classes;
    t.class_of = cd.class_of;
    for (int v = 0; v < r; ++v) {
      Eigen::VectorXcd w = es.eigenvectors().col(v);
      w /= w[0];
      double norm = 0;
      for (int k = 0; k < r; ++k)
        norm += std::norm(w[k]) / static_cast<double>(cd.classes[k].size());
      const double d2 = n / norm;
      const long long d = std::llround(std::sqrt(d2));
      if (std::abs(std::sqrt(d2) - static_cast<double>(d)) > 1e-6)
        throw NonIntegral("irreducible degree " + std::to_string(std::sqrt(d2)) +
                          " is not an integer");
      std::vector<cplx> row(r);
      for (int k = 0; k < r; ++k)
        row[k] = static_cast<double>(d) * w[k] / static_cast<double>(cd.classes[k].size());
      t.chars.push_back(std::move(row));
      t.dims.push_back(static_cast<int>(d));
    }
    long long total = 0;
    for (int d : t.dims)
      total += static_cast<long long>(d) * d;
    if (total != n)
      continue;

    std::vector<int> order(r);
    for (int i = 0; i < r; ++i)
      order[i] = i;
    auto is_trivial = [&](int i) {
      for (const auto &v : t.chars[i])
        if (std::abs(v - 1.0) > 1e-6)
          return false;
      return true;
    };
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (is_trivial(a) != is_trivial(b))
        return is_trivial(a);
      if (t.dims[a] != t.dims[b])
        return t.dims[a] < t.dims[b];
      return sort_key(t.chars[a]) > sort_key(t.chars[b]);
    });
    CharacterTable sorted = t;
    for (int i = 0; i < r; ++i) {
      sorted.chars[i] = t.chars[order[i]];
      sorted.dims[i] = t.dims[order[i]];
    }
    if (sorted.orthogonality_defect(n) > 1e-8)
      continue;
    return sorted;
  }
  throw SeedDegenerate("class-sum combination kept producing repeated eigenvalues after " +
                       std::to_string(kMaxRetries) + " retries");
}

// ---- matrix irreps ---------------------------------------------------------

double MatrixIrrep::multiplicativity_defect(const FiniteGroup &g) const {
  double worst = 0;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      worst = std::max(worst, (matrices[a] * matrices[b] - matrices[g.mul(a, b)]).norm());
  return worst;
}

double MatrixIrrep::unitarity_defect() const {
  double worst = 0;
  for (const auto &u : matrices)
    worst = std::max(worst, (u.adjoint() * u - CMatrix::Identity(dim, dim)).norm());
  return worst;
}

std::vector<cplx> traces(const std::vector<CMatrix> &matrices) {
  std::vector<cplx> out;
  out.reserve(matrices.size());
  for (const auto &m : matrices)
    out.push_back(m.trace());
  return out;
}

std::vector<MatrixIrrep> matrix_irreps(const FiniteGroup &g, const CharacterTable &t,
                                       std::uint64_t seed) {
  const int n = g.order();
  Rng rng(seed);
  std::vector<MatrixIrrep> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    MatrixIrrep irrep;
    irrep.label = static_cast<int>(i);
    irrep.dim = t.dims[i];
    const int d = irrep.dim;
    if (d == 1) {
      for (int x = 0; x < n; ++x)
        irrep.matrices.push_back(CMatrix::Constant(1, 1, t.value(static_cast<int>(i), x)));
      out.push_back(std::move(irrep));
      continue;
    }

    // Isotypic projector of the left regular representation.
    CMatrix p(n, n);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        p(y, x) = static_cast<double>(d) / n *
                  std::conj(t.value(static_cast<int>(i), g.mul(y, g.inv(x))));
    Eigen::SelfAdjointEigenSolver<CMatrix> proj(p);
    std::vector<int> cols;
    for (int k = 0; k < n; ++k)
      if (proj.eigenvalues()[k] > 0.5)
        cols.push_back(k);
    if (static_cast<int>(cols.size()) != d * d)
      throw ExtractionFailed("isotypic component of irrep " + std::to_string(i) + " has rank " +
                             std::to_string(cols.size()) + ", expected " +
                             std::to_string(d * d));
    CMatrix basis(n, d * d);
    for (int c = 0; c < d * d; ++c)
      basis.col(c) = proj.eigenvectors().col(cols[c]);

    bool done = false;
    for (int attempt = 0; attempt < kMaxRetries && !done; ++attempt) {
      // Random Hermitian element of the right regular algebra, which acts on
      // the isotypic component as identity tensor a generic matrix.
      std::vector<cplx> c(n);
      for (auto &v : c)
        v = cplx(rng.symmetric(), rng.symmetric());
      CMatrix r(n, n);
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
          r(y, x) = c[g.mul(g.inv(y), x)] + std::conj(c[g.mul(g.inv(x), y)]);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(basis.adjoint() * r * basis);
      const auto &ev = es.eigenvalues();
      // First cluster must have exactly d eigenvalues, well separated.
      const double scale = 1.0 + ev.cwiseAbs().maxCoeff();
      bool clean = true;
      for (int k = 0; k < d * d - 1 && clean; ++k) {
        const bool same_block = (k + 1) % d != 0;
        const double gap = ev[k + 1] - ev[k];
        clean = same_block ? gap < 1e-7 * scale : gap > 1e-5 * scale;
      }
      if (!clean)
        continue;
      CMatrix w = basis * es.eigenvectors().leftCols(d);
      irrep.matrices.assign(n, CMatrix());
      for (int a = 0; a < n; ++a) {
        CMatrix shifted(n, d);
        const Elem ainv = g.inv(a);
        for (int y = 0; y < n; ++y)
          shifted.row(y) = w.row(g.mul(ainv, y));
        irrep.matrices[a] = w.adjoint() * shifted;
      }
      double worst = 0;
      for (int a = 0; a < n; ++a)
        worst = std::max(worst, std::abs(irrep.matrices[a].trace() - t.value(static_cast<int>(i), a)));
      done = worst < 1e-8;
    }
    if (!done)
      throw ExtractionFailed("could not isolate one copy of irrep " + std::to_string(i) +
                             " within " + std::to_string(kMaxRetries) + " retries");
    out.push_back(std::move(irrep));
  }
  return out;
}

} // namespace kacforge
