#include "kacforge/kac_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "kacforge/errors.hpp"

namespace kacforge {

using boost::multiprecision::cpp_rational;

KacAlgebra::KacAlgebra(MatchedPair mp) : mp_(std::move(mp)) {
  const auto &gamma = mp_.gamma();
  const auto &g = mp_.g();
  const int nr = gamma.order(), ng = g.order();
  dim_ = nr * ng;
  const auto d = static_cast<std::size_t>(dim_);
  mul_.assign(d * d, -1);
  star_.resize(d);
  antipode_.resize(d);
  counit_.resize(d);
  haar_scaled_.resize(d);
  coproduct_.resize(d);
  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < ng; ++x) {
      const int b = basis(r, x);
      for (int s = 0; s < nr; ++s)
        for (int y = 0; y < ng; ++y)
          if (mp_.alpha(gamma.inv(s), x) == y)
            mul_[static_cast<std::size_t>(b) * d + basis(s, y)] = basis(gamma.mul(r, s), y);
      star_[b] = basis(gamma.inv(r), mp_.alpha(r, x));
      const Elem s = mp_.beta(x, r);
      antipode_[b] = basis(gamma.inv(s), mp_.alpha(s, g.inv(x)));
      counit_[b] = x == g.identity() ? 1 : 0;
      haar_scaled_[b] = r == gamma.identity() ? 1 : 0;
      for (int a = 0; a < ng; ++a) {
        const Elem c = g.mul(g.inv(a), x);
        coproduct_[b].emplace_back(basis(r, a), basis(mp_.beta(a, r), c));
      }
    }
}

std::string KacAlgebra::basis_label(int b) const {
  return "u[" + mp_.gamma().label(gamma_of(b)) + "]d[" + mp_.g().label(g_of(b)) + "]";
}

AlgebraElement KacAlgebra::unit() const {
  AlgebraElement x = zero();
  for (int g = 0; g < mp_.n_g(); ++g)
    x[basis(mp_.gamma().identity(), g)] = 1.0;
  return x;
}

AlgebraElement KacAlgebra::basis_element(int b) const {
  AlgebraElement x = zero();
  x[b] = 1.0;
  return x;
}

AlgebraElement KacAlgebra::multiply(const AlgebraElement &x, const AlgebraElement &y) const {
  AlgebraElement out = zero();
  std::vector<int> nx, ny;
  for (int i = 0; i < dim_; ++i) {
    if (x[i] != 0.0)
      nx.push_back(i);
    if (y[i] != 0.0)
      ny.push_back(i);
  }
  for (int i : nx)
    for (int j : ny) {
      const int k = mul(i, j);
      if (k >= 0)
        out[k] += x[i] * y[j];
    }
  return out;
}

AlgebraElement KacAlgebra::adjoint(const AlgebraElement &x) const {
  AlgebraElement out = zero();
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0)
      out[star_[i]] += std::conj(x[i]);
  return out;
}

AlgebraElement KacAlgebra::apply_antipode(const AlgebraElement &x) const {
  AlgebraElement out = zero();
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0)
      out[antipode_[i]] += x[i];
  return out;
}

TensorElement KacAlgebra::comultiply(const AlgebraElement &x) const {
  TensorElement out = TensorElement::Zero(static_cast<Eigen::Index>(dim_) * dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0)
      for (const auto &[b1, b2] : coproduct_[i])
        out[static_cast<Eigen::Index>(b1) * dim_ + b2] += x[i];
  return out;
}

TensorElement KacAlgebra::tensor(const AlgebraElement &x, const AlgebraElement &y) const {
  TensorElement out = TensorElement::Zero(static_cast<Eigen::Index>(dim_) * dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0)
      for (int j = 0; j < dim_; ++j)
        if (y[j] != 0.0)
          out[static_cast<Eigen::Index>(i) * dim_ + j] = x[i] * y[j];
  return out;
}

std::complex<double> KacAlgebra::haar(const AlgebraElement &x) const {
  std::complex<double> s = 0;
  for (int i = 0; i < dim_; ++i)
    if (haar_scaled_[i])
      s += x[i];
  return s / static_cast<double>(mp_.n_g());
}

std::complex<double> KacAlgebra::counit(const AlgebraElement &x) const {
  std::complex<double> s = 0;
  for (int i = 0; i < dim_; ++i)
    if (counit_[i])
      s += x[i];
  return s;
}

AlgebraElement KacAlgebra::group_element(Elem gamma) const {
  AlgebraElement x = zero();
  for (int g = 0; g < mp_.n_g(); ++g)
    x[basis(gamma, g)] = 1.0;
  return x;
}

AlgebraElement KacAlgebra::function(const std::vector<std::complex<double>> &f) const {
  AlgebraElement x = zero();
  for (int g = 0; g < mp_.n_g(); ++g)
    x[basis(mp_.gamma().identity(), g)] = f[g];
  return x;
}

// ---- axioms ----------------------------------------------------------------

bool AxiomReport::pass() const {
  return std::all_of(results.begin(), results.end(),
                     [&](const AxiomResult &r) { return r.max_deviation < tolerance; });
}

const AxiomResult *AxiomReport::find(const std::string &name) const {
  for (const auto &r : results)
    if (r.name == name)
      return &r;
  return nullptr;
}

namespace {

// Sparse integer vectors keyed by basis index (or packed basis tuples).
using Sparse = std::map<long long, long long>;

void add(Sparse &v, long long key, long long c) {
  if ((v[key] += c) == 0)
    v.erase(key);
}

long long max_diff(const Sparse &a, const Sparse &b) {
  long long worst = 0;
  for (const auto &[k, c] : a) {
    auto it = b.find(k);
    worst = std::max(worst, std::llabs(c - (it == b.end() ? 0 : it->second)));
  }
  for (const auto &[k, c] : b)
    if (!a.count(k))
      worst = std::max(worst, std::llabs(c));
  return worst;
}

class Checker {
public:
  explicit Checker(std::string name) { result_.name = std::move(name); }
  void record(long long deviation, const std::function<std::string()> &witness) {
    const auto dev = static_cast<double>(deviation);
    if (dev > result_.max_deviation) {
      if (result_.witness.empty())
        result_.witness = witness();
      result_.max_deviation = dev;
    }
  }
  AxiomResult result() const { return result_; }

private:
  AxiomResult result_;
};

} // namespace

AxiomReport check_axioms(const KacAlgebra &a) {
  const int d = a.dim();
  const int ng = a.pair().n_g();
  const long long dd = d;
  AxiomReport report;
  auto lbl = [&](int b) { return a.basis_label(b); };

  Sparse unit;
  for (int g = 0; g < ng; ++g)
    unit[a.basis(a.pair().gamma().identity(), g)] = 1;
  auto single = [](int b) { return b < 0 ? Sparse{} : Sparse{{b, 1}}; };
  auto mul_sparse = [&](const Sparse &x, const Sparse &y) {
    Sparse out;
    for (const auto &[i, ci] : x)
      for (const auto &[j, cj] : y) {
        const int k = a.mul(static_cast<int>(i), static_cast<int>(j));
        if (k >= 0)
          add(out, k, ci * cj);
      }
    return out;
  };
  auto delta = [&](int b) {
    Sparse out;
    if (b >= 0)
      for (const auto &[b1, b2] : a.coproduct(b))
        add(out, b1 * dd + b2, 1);
    return out;
  };

  {
    Checker c("associativity");
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        const int xy = a.mul(x, y);
        for (int z = 0; z < d; ++z) {
          const int l = xy < 0 ? -1 : a.mul(xy, z);
          const int yz = a.mul(y, z);
          const int r = yz < 0 ? -1 : a.mul(x, yz);
          if (l != r)
            c.record(1, [&] { return "(" + lbl(x) + ", " + lbl(y) + ", " + lbl(z) + ")"; });
        }
      }
    report.results.push_back(c.result());
  }
  {
    Checker c("unit");
    for (int x = 0; x < d; ++x) {
      const auto l = mul_sparse(unit, single(x));
      const auto r = mul_sparse(single(x), unit);
      c.record(std::max(max_diff(l, single(x)), max_diff(r, single(x))), [&] { return lbl(x); });
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("star involutive anti-multiplicative");
    for (int x = 0; x < d; ++x) {
      if (a.star(a.star(x)) != x)
        c.record(1, [&] { return lbl(x); });
      for (int y = 0; y < d; ++y) {
        const int xy = a.mul(x, y);
        const int l = xy < 0 ? -1 : a.star(xy);
        const int r = a.mul(a.star(y), a.star(x));
        if (l != r)
          c.record(1, [&] { return "(" + lbl(x) + ", " + lbl(y) + ")"; });
      }
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("coassociativity");
    for (int x = 0; x < d; ++x) {
      Sparse l, r;
      for (const auto &[b1, b2] : a.coproduct(x)) {
        for (const auto &[c1, c2] : a.coproduct(b1))
          add(l, (c1 * dd + c2) * dd + b2, 1);
        for (const auto &[c1, c2] : a.coproduct(b2))
          add(r, (b1 * dd + c1) * dd + c2, 1);
      }
      c.record(max_diff(l, r), [&] { return lbl(x); });
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("coproduct multiplicative");
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        Sparse prod;
        for (const auto &[x1, x2] : a.coproduct(x))
          for (const auto &[y1, y2] : a.coproduct(y)) {
            const int p1 = a.mul(x1, y1), p2 = a.mul(x2, y2);
            if (p1 >= 0 && p2 >= 0)
              add(prod, p1 * dd + p2, 1);
          }
        c.record(max_diff(prod, delta(a.mul(x, y))),
                 [&] { return "(" + lbl(x) + ", " + lbl(y) + ")"; });
      }
    report.results.push_back(c.result());
  }
  {
    Checker c("coproduct star-preserving");
    for (int x = 0; x < d; ++x) {
      Sparse l;
      for (const auto &[b1, b2] : a.coproduct(x))
        add(l, a.star(b1) * dd + a.star(b2), 1);
      c.record(max_diff(l, delta(a.star(x))), [&] { return lbl(x); });
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("counit");
    for (int x = 0; x < d; ++x) {
      Sparse l, r;
      for (const auto &[b1, b2] : a.coproduct(x)) {
        if (a.counit(b1))
          add(l, b2, 1);
        if (a.counit(b2))
          add(r, b1, 1);
      }
      c.record(std::max(max_diff(l, single(x)), max_diff(r, single(x))), [&] { return lbl(x); });
      for (int y = 0; y < d; ++y) {
        const int xy = a.mul(x, y);
        const int l2 = xy < 0 ? 0 : a.counit(xy);
        if (l2 != a.counit(x) * a.counit(y))
          c.record(1, [&] { return "eps multiplicative at (" + lbl(x) + ", " + lbl(y) + ")"; });
      }
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("antipode");
    for (int x = 0; x < d; ++x) {
      Sparse l, r, expect;
      for (const auto &[b1, b2] : a.coproduct(x)) {
        const int p = a.mul(a.antipode(b1), b2);
        if (p >= 0)
          add(l, p, 1);
        const int q = a.mul(b1, a.antipode(b2));
        if (q >= 0)
          add(r, q, 1);
      }
      if (a.counit(x))
        expect = unit;
      c.record(std::max(max_diff(l, expect), max_diff(r, expect)), [&] { return lbl(x); });
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("antipode squared is identity");
    for (int x = 0; x < d; ++x)
      if (a.antipode(a.antipode(x)) != x)
        c.record(1, [&] { return lbl(x); });
    report.results.push_back(c.result());
  }
  {
    Checker c("haar state");
    long long h1 = 0;
    for (const auto &[b, coef] : unit)
      h1 += coef * a.haar_scaled(static_cast<int>(b));
    c.record(std::llabs(h1 - ng), [] { return std::string("h(1) != 1"); });
    report.results.push_back(c.result());
  }
  {
    Checker c("haar bi-invariance");
    for (int x = 0; x < d; ++x) {
      Sparse l, r, expect;
      for (const auto &[b1, b2] : a.coproduct(x)) {
        if (a.haar_scaled(b2))
          add(l, b1, a.haar_scaled(b2));
        if (a.haar_scaled(b1))
          add(r, b2, a.haar_scaled(b1));
      }
      if (a.haar_scaled(x))
        for (const auto &[b, coef] : unit)
          expect[b] = coef * a.haar_scaled(x);
      c.record(std::max(max_diff(l, expect), max_diff(r, expect)), [&] { return lbl(x); });
    }
    report.results.push_back(c.result());
  }
  {
    Checker c("haar trace");
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        const int xy = a.mul(x, y), yx = a.mul(y, x);
        const int l = xy < 0 ? 0 : a.haar_scaled(xy);
        const int r = yx < 0 ? 0 : a.haar_scaled(yx);
        if (l != r)
          c.record(std::abs(l - r), [&] { return "(" + lbl(x) + ", " + lbl(y) + ")"; });
      }
    report.results.push_back(c.result());
  }
  {
    // Gram matrix |G| h(y* x) of the basis; positive definite iff faithful.
    Checker c("haar positivity");
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y) {
        const int p = a.mul(a.star(y), x);
        gram(y, x) = p < 0 ? 0.0 : a.haar_scaled(p);
      }
    const double min_ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues().minCoeff();
    if (min_ev <= 0.5) // integer Gram matrix of a faithful state has eigenvalues >= 1 here
      c.record(1, [&] { return "minimum Gram eigenvalue " + std::to_string(min_ev / ng); });
    report.results.push_back(c.result());
  }
  return report;
}

void assert_axioms(const KacAlgebra &a) {
  const auto report = check_axioms(a);
  for (const auto &r : report.results)
    if (r.max_deviation >= report.tolerance)
      throw AxiomViolation(r.name + " fails at " + r.witness);
}

// ---- morphisms and coset spaces -------------------------------------------

namespace {

AlgebraElement column(const AlgebraMorphism &rho, int b) { return rho.matrix.col(b); }

int exact_rank(const std::vector<std::vector<cpp_rational>> &m0) {
  auto m = m0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0)
      ++p;
    if (p == rows)
      continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0)
        continue;
      const cpp_rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k)
        m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

} // namespace

std::optional<std::string> morphism_violation(const AlgebraMorphism &rho) {
  const auto &src = *rho.source;
  const auto &tgt = *rho.target;
  if (rho.matrix.rows() != tgt.dim() || rho.matrix.cols() != src.dim())
    return std::string("morphism matrix has the wrong shape");
  const double tol = 1e-9;
  if ((rho.matrix * src.unit() - tgt.unit()).norm() > tol)
    return std::string("rho(1) != 1");
  for (int x = 0; x < src.dim(); ++x) {
    const AlgebraElement rx = column(rho, x);
    if ((column(rho, src.star(x)) - tgt.adjoint(rx)).norm() > tol)
      return "rho(x*) != rho(x)* at " + src.basis_label(x);
    for (int y = 0; y < src.dim(); ++y) {
      const int xy = src.mul(x, y);
      const AlgebraElement lhs = xy < 0 ? tgt.zero() : AlgebraElement(column(rho, xy));
      if ((lhs - tgt.multiply(rx, column(rho, y))).norm() > tol)
        return "rho(xy) != rho(x) rho(y) at (" + src.basis_label(x) + ", " + src.basis_label(y) + ")";
    }
    // (rho (x) rho) Delta(x) = Delta(rho(x))
    TensorElement lhs = TensorElement::Zero(static_cast<Eigen::Index>(tgt.dim()) * tgt.dim());
    for (const auto &[b1, b2] : src.coproduct(x))
      lhs += tgt.tensor(column(rho, b1), column(rho, b2));
    if ((lhs - tgt.comultiply(rx)).norm() > tol)
      return "rho does not intertwine the coproducts at " + src.basis_label(x);
  }
  return std::nullopt;
}

AlgebraMorphism restriction_morphism(const KacAlgebra &full, const KacAlgebra &sub,
                                     const std::vector<Elem> &embedding) {
  AlgebraMorphism rho{&full, &sub, Eigen::MatrixXcd::Zero(sub.dim(), full.dim())};
  const int ng0 = sub.pair().n_g();
  for (int r = 0; r < sub.pair().n_gamma(); ++r)
    for (int g0 = 0; g0 < ng0; ++g0)
      rho.matrix(sub.basis(r, g0), full.basis(r, embedding[g0])) = 1.0;
  return rho;
}

AlgebraMorphism identity_morphism(const KacAlgebra &a) {
  return {&a, &a, Eigen::MatrixXcd::Identity(a.dim(), a.dim())};
}

AlgebraMorphism counit_morphism(const KacAlgebra &a, const KacAlgebra &trivial) {
  if (trivial.dim() != 1)
    throw ValidationError("counit morphism needs the one-dimensional target");
  AlgebraMorphism rho{&a, &trivial, Eigen::MatrixXcd::Zero(1, a.dim())};
  for (int b = 0; b < a.dim(); ++b)
    rho.matrix(0, b) = static_cast<double>(a.counit(b));
  return rho;
}

int coset_space_dimension(const AlgebraMorphism &rho) {
  if (auto why = morphism_violation(rho))
    throw NotAMorphism(*why);
  const auto &src = *rho.source;
  const auto &tgt = *rho.target;
  const int d = src.dim(), dt = tgt.dim();
  // Column b of M is (id (x) rho) Delta(e_b) - e_b (x) 1, in coordinates b1 * dt + t.
  const AlgebraElement one = tgt.unit();
  std::vector<std::map<long long, std::complex<double>>> cols(d);
  for (int b = 0; b < d; ++b) {
    auto &col = cols[b];
    for (const auto &[b1, b2] : src.coproduct(b))
      for (int t = 0; t < dt; ++t)
        if (rho.matrix(t, b2) != 0.0)
          col[static_cast<long long>(b1) * dt + t] += rho.matrix(t, b2);
    for (int t = 0; t < dt; ++t)
      if (one[t] != 0.0)
        col[static_cast<long long>(b) * dt + t] -= one[t];
  }
  // rank M = rank M^T M; the Gram entries are integers whenever rho is.
  bool integral = true;
  Eigen::MatrixXcd gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::complex<double> s = 0;
      for (const auto &[k, v] : cols[i]) {
        auto it = cols[j].find(k);
        if (it != cols[j].end())
          s += std::conj(v) * it->second;
      }
      gram(i, j) = s;
      integral = integral && std::abs(s.imag()) < 1e-12 &&
                 std::abs(s.real() - std::round(s.real())) < 1e-12;
    }
  if (integral) {
    std::vector<std::vector<cpp_rational>> m(d, std::vector<cpp_rational>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        m[i][j] = cpp_rational(static_cast<long long>(std::llround(gram(i, j).real())));
    return d - exact_rank(m);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  int null = 0;
  for (int i = 0; i < d; ++i)
    null += es.eigenvalues()[i] < 1e-8;
  return null;
}

std::pair<MatchedPair, std::vector<Elem>> kernel_of_beta_pair(const MatchedPair &mp) {
  std::vector<Elem> ker;
  for (int x = 0; x < mp.n_g(); ++x) {
    bool trivial = true;
    for (int r = 0; r < mp.n_gamma() && trivial; ++r)
      trivial = mp.beta(x, r) == r;
    if (trivial)
      ker.push_back(x);
  }
  const Subgroup sub = make_subgroup(mp.g(), ker);
  const auto where = sub.locate(mp.n_g());
  const int nr = mp.n_gamma(), n0 = sub.group.order();
  std::vector<Elem> alpha(static_cast<std::size_t>(nr) * n0);
  for (int r = 0; r < nr; ++r)
    for (int k = 0; k < n0; ++k) {
      const Elem image = where[mp.alpha(r, sub.embedding[k])];
      if (image < 0)
        throw ValidationError("alpha does not preserve ker beta");
      alpha[static_cast<std::size_t>(r) * n0 + k] = image;
    }
  return {MatchedPair::from_left_action(mp.gamma(), sub.group, std::move(alpha)), sub.embedding};
}

GroupSubalgebraReport group_subalgebra_check(const KacAlgebra &a) {
  const auto &mp = a.pair();
  const auto &gamma = mp.gamma();
  const double tol = 1e-12;
  GroupSubalgebraReport rep;
  rep.unit_ok = (a.group_element(gamma.identity()) - a.unit()).norm() < tol;
  for (int r = 0; r < gamma.order(); ++r)
    for (int s = 0; s < gamma.order(); ++s)
      if ((a.multiply(a.group_element(r), a.group_element(s)) -
           a.group_element(gamma.mul(r, s))).norm() > tol)
        rep.multiplicative_ok = false;
  const auto fs = orbits_fixed_sets(mp);
  for (int r = 0; r < gamma.order(); ++r) {
    const AlgebraElement ur = a.group_element(r);
    const TensorElement d = a.comultiply(ur);
    rep.group_like.push_back((d - a.tensor(ur, ur)).norm() < tol);
    // sum over the orbit of r of u_r alpha(1_{A_{r,s}}) (x) u_s
    TensorElement formula = TensorElement::Zero(d.size());
    const auto &orbit = fs.orbits.orbits[fs.orbits.orbit_of[r]];
    for (Elem s : orbit) {
      AlgebraElement left = a.zero();
      for (int x = 0; x < mp.n_g(); ++x)
        if (mp.beta(x, r) == s)
          left[a.basis(r, x)] = 1.0;
      formula += a.tensor(left, a.group_element(s));
    }
    if ((formula - d).norm() > tol)
      rep.coproduct_formula_ok = false;
  }
  return rep;
}

std::string dump_structure(const KacAlgebra &a) {
  std::ostringstream out;
  out << "dim " << a.dim() << "\n";
  for (int x = 0; x < a.dim(); ++x)
    for (int y = 0; y < a.dim(); ++y)
      if (a.mul(x, y) >= 0)
        out << "mul " << x << " " << y << " " << a.mul(x, y) << "\n";
  for (int x = 0; x < a.dim(); ++x) {
    out << "delta " << x;
    for (const auto &[b1, b2] : a.coproduct(x))
      out << " " << b1 << ":" << b2;
    out << "\n";
  }
  for (int x = 0; x < a.dim(); ++x)
    out << "star " << x << " " << a.star(x) << " antipode " << a.antipode(x) << " counit "
        << a.counit(x) << " haar " << a.haar_scaled(x) << "/" << a.pair().n_g() << "\n";
  return out.str();
}

} // namespace kacforge
