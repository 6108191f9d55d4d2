#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kacforge/crossed_product.hpp"

namespace kacforge {

using Rational = boost::multiprecision::cpp_rational;

/// Probability measure on a finite group, weights indexed by element.
struct FiniteMeasure {
  std::vector<Rational> weights;

  static FiniteMeasure uniform(int order);
  static FiniteMeasure dirac(int order, Elem g);
  /// Throws ValidationError unless the weights are nonnegative and sum to 1.
  static FiniteMeasure make(std::vector<Rational> weights);
  /// Parses decimal or fractional strings ("0.7", "3/10") exactly.
  static FiniteMeasure parse(const std::vector<std::string> &weights);
  bool operator==(const FiniteMeasure &) const = default;
};

/// (alpha_gamma mu)(alpha_gamma(g)) = mu(g).
FiniteMeasure pushforward(const FiniteMeasure &mu, Elem gamma, const MatchedPair &mp);
/// sum_g |mu(g) - nu(g)|.
Rational tv_distance(const FiniteMeasure &mu, const FiniteMeasure &nu);
/// (mu * nu)(g) = sum_{ab = g} mu(a) nu(b).
FiniteMeasure convolution(const FiniteGroup &g, const FiniteMeasure &mu, const FiniteMeasure &nu);
/// sum_gamma f(gamma) alpha_gamma(mu) for a probability vector f on Gamma.
FiniteMeasure smoothing(const std::vector<Rational> &f, const FiniteMeasure &mu, const MatchedPair &mp);

/// Blocks x -> sum_g mu(g) u^x(g), labels as in `irreps`.
DualElement measure_fourier(const FiniteMeasure &mu, const std::vector<MatrixIrrep> &irreps);
/// Operator norm of each block, the finite c0-profile.
std::vector<double> block_norms(const DualElement &a);

struct ObstructionReport {
  long long grid_checked = 0;   // measures on the rational grid with mu(e) = 0
  long long mixed_checked = 0;  // grid measures with arbitrary mu(e), against 2(1 - mu(e))
  long long sampled = 0;        // seeded random rational measures
  Rational worst_distance = 2;  // minimum of tv(mu, delta_e) over mu(e) = 0
  std::vector<std::string> failures;
  bool certified() const { return failures.empty() && worst_distance == 2; }
};

/// Certifies tv(mu, delta_e) = 2 whenever mu(e) = 0, so no sequence of measures
/// avoiding e can approach delta_e. The grid has denominator `denominator`.
ObstructionReport rel_T_obstruction(const FiniteGroup &g, int denominator = 4, int samples = 200,
                                    std::uint64_t seed = kDefaultSeed);

struct ChebyshevState {
  int n = 2;
  Rational t;
  std::vector<Rational> values; // P_k(t) / P_k(N), k = 0..cutoff
  /// First k with |value| < eps, if any.
  std::optional<int> c0_profile(double eps) const;
  bool strictly_decreasing_from_one() const;
};

/// Throws DomainError unless 0 < t < N and N >= 2.
ChebyshevState chebyshev_state(int n, const Rational &t, int cutoff);
/// P_0 .. P_cutoff evaluated at x.
std::vector<Rational> chebyshev_values(const Rational &x, int cutoff);

/// "3/10", "0.3", "-2" read exactly. Throws ParseError.
Rational parse_rational(const std::string &text);
std::string to_string(const Rational &q);
double to_double(const Rational &q);

} // namespace kacforge
