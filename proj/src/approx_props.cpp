#include "kacforge/approx_props.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "kacforge/errors.hpp"

namespace kacforge {

namespace {

Rational abs_q(const Rational &q) { return q < 0 ? Rational(-q) : q; }

} // namespace

Rational parse_rational(const std::string &text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos)
      return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot == std::string::npos)
      return Rational(BigInt(text));
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+")
      whole += "0";
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      den *= 10;
    const BigInt num = BigInt(whole) * den + (frac.empty() ? BigInt(0) : BigInt(frac)) * (negative ? -1 : 1);
    return Rational(num, den);
  } catch (const std::exception &) {
    throw ParseError("not a rational number: '" + text + "'");
  }
}

std::string to_string(const Rational &q) {
  if (denominator(q) == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational &q) { return q.convert_to<double>(); }

FiniteMeasure FiniteMeasure::uniform(int order) {
  return {std::vector<Rational>(order, Rational(1, order))};
}

FiniteMeasure FiniteMeasure::dirac(int order, Elem g) {
  FiniteMeasure m{std::vector<Rational>(order, 0)};
  m.weights.at(g) = 1;
  return m;
}

FiniteMeasure FiniteMeasure::make(std::vector<Rational> weights) {
  Rational total = 0;
  for (const auto &w : weights) {
    if (w < 0)
      throw ValidationError("negative weight " + to_string(w));
    total += w;
  }
  if (total != 1)
    throw ValidationError("weights sum to " + to_string(total) + ", not 1");
  return {std::move(weights)};
}

FiniteMeasure FiniteMeasure::parse(const std::vector<std::string> &weights) {
  std::vector<Rational> w;
  for (const auto &s : weights)
    w.push_back(parse_rational(s));
  return make(std::move(w));
}

FiniteMeasure pushforward(const FiniteMeasure &mu, Elem gamma, const MatchedPair &mp) {
  FiniteMeasure out{std::vector<Rational>(mu.weights.size(), 0)};
  for (int g = 0; g < mp.n_g(); ++g)
    out.weights[mp.alpha(gamma, g)] += mu.weights[g];
  return out;
}

Rational tv_distance(const FiniteMeasure &mu, const FiniteMeasure &nu) {
  if (mu.weights.size() != nu.weights.size())
    throw ValidationError("measures live on different groups");
  Rational s = 0;
  for (std::size_t g = 0; g < mu.weights.size(); ++g)
    s += abs_q(mu.weights[g] - nu.weights[g]);
  return s;
}

FiniteMeasure convolution(const FiniteGroup &g, const FiniteMeasure &mu, const FiniteMeasure &nu) {
  FiniteMeasure out{std::vector<Rational>(g.order(), 0)};
  for (int a = 0; a < g.order(); ++a)
    if (mu.weights[a] != 0)
      for (int b = 0; b < g.order(); ++b)
        out.weights[g.mul(a, b)] += mu.weights[a] * nu.weights[b];
  return out;
}

FiniteMeasure smoothing(const std::vector<Rational> &f, const FiniteMeasure &mu, const MatchedPair &mp) {
  FiniteMeasure::make(f); // f must be a probability vector on Gamma
  FiniteMeasure out{std::vector<Rational>(mu.weights.size(), 0)};
  for (int r = 0; r < mp.n_gamma(); ++r) {
    if (f[r] == 0)
      continue;
    const auto moved = pushforward(mu, r, mp);
    for (std::size_t g = 0; g < out.weights.size(); ++g)
      out.weights[g] += f[r] * moved.weights[g];
  }
  return out;
}

DualElement measure_fourier(const FiniteMeasure &mu, const std::vector<MatrixIrrep> &irreps) {
  DualElement a;
  for (std::size_t x = 0; x < irreps.size(); ++x) {
    const auto &u = irreps[x];
    CMatrix block = CMatrix::Zero(u.dim, u.dim);
    for (std::size_t g = 0; g < mu.weights.size(); ++g)
      if (mu.weights[g] != 0)
        block += to_double(mu.weights[g]) * u.matrices[g];
    a.blocks.emplace(static_cast<int>(x), block);
  }
  return a;
}

std::vector<double> block_norms(const DualElement &a) {
  std::vector<double> out;
  for (const auto &[x, m] : a.blocks)
    out.push_back(Eigen::JacobiSVD<CMatrix>(m).singularValues()[0]);
  return out;
}

ObstructionReport rel_T_obstruction(const FiniteGroup &g, int denominator, int samples,
                                    std::uint64_t seed) {
  ObstructionReport rep;
  const int n = g.order();
  const Elem e = g.identity();
  const auto delta = FiniteMeasure::dirac(n, e);
  bool first = true;
  auto record = [&](const FiniteMeasure &mu) {
    const Rational d = tv_distance(mu, delta);
    const Rational expected = 2 * (1 - mu.weights[e]);
    if (d != expected && rep.failures.size() < 10)
      rep.failures.push_back("tv distance " + to_string(d) + " != 2(1 - mu(e)) = " + to_string(expected));
    if (mu.weights[e] == 0) {
      rep.worst_distance = first ? d : std::min(rep.worst_distance, d);
      first = false;
    }
  };
  // Every composition of `denominator` into n parts, as weights k_i / denominator.
  std::vector<int> parts(n, 0);
  std::function<void(int, int)> walk = [&](int i, int left) {
    if (i == n - 1) {
      parts[i] = left;
      FiniteMeasure mu{std::vector<Rational>(n)};
      for (int k = 0; k < n; ++k)
        mu.weights[k] = Rational(parts[k], denominator);
      record(mu);
      ++(parts[e] == 0 ? rep.grid_checked : rep.mixed_checked);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      parts[i] = k;
      walk(i + 1, left - k);
    }
  };
  if (n > 1)
    walk(0, denominator);
  // Seeded random measures vanishing at e.
  Rng rng(seed);
  for (int s = 0; s < samples && n > 1; ++s) {
    std::vector<Rational> w(n, 0);
    Rational total = 0;
    for (int k = 0; k < n; ++k)
      if (k != e) {
        w[k] = Rational(1 + static_cast<long long>(rng.below(1000)), 1);
        total += w[k];
      }
    for (auto &x : w)
      x /= total;
    record(FiniteMeasure{w});
    ++rep.sampled;
  }
  return rep;
}

std::optional<int> ChebyshevState::c0_profile(double eps) const {
  for (std::size_t k = 0; k < values.size(); ++k)
    if (std::abs(to_double(values[k])) < eps)
      return static_cast<int>(k);
  return std::nullopt;
}

bool ChebyshevState::strictly_decreasing_from_one() const {
  for (std::size_t k = 2; k < values.size(); ++k)
    if (!(values[k] < values[k - 1]))
      return false;
  return true;
}

std::vector<Rational> chebyshev_values(const Rational &x, int cutoff) {
  std::vector<Rational> p{Rational(1)};
  if (cutoff >= 1)
    p.push_back(x);
  for (int k = 2; k <= cutoff; ++k)
    p.push_back(x * p[k - 1] - p[k - 2]);
  return p;
}

ChebyshevState chebyshev_state(int n, const Rational &t, int cutoff) {
  if (n < 2)
    throw DomainError("N must be at least 2");
  if (!(t > 0 && t < n))
    throw DomainError("t = " + to_string(t) + " is outside (0, " + std::to_string(n) + ")");
  if (cutoff < 0)
    throw DomainError("negative cutoff");
  ChebyshevState s{n, t, {}};
  const auto pt = chebyshev_values(t, cutoff);
  const auto pn = chebyshev_values(Rational(n), cutoff);
  for (int k = 0; k <= cutoff; ++k)
    s.values.push_back(pt[k] / pn[k]);
  return s;
}

} // namespace kacforge
