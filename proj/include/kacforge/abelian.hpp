#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kacforge/groups.hpp"

namespace kacforge {

using BigInt = boost::multiprecision::cpp_int;

/// Finitely generated abelian group Z/d1 x ... x Z/dk x Z^r with d1 | d2 | ... and each di >= 2.
struct AbelianGroup {
  std::vector<std::int64_t> invariant_factors;
  int free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  /// Order of the torsion part (the whole group when finite).
  std::int64_t torsion_order() const;
  /// "Z/2 x Z/6", "Z", or "1" for the trivial group.
  std::string name() const;
  /// Realizes a finite group as a product of cyclic groups.
  FiniteGroup to_group() const;

  bool operator==(const AbelianGroup &) const = default;
};

/// Abelianized presentation: generators x1..xn and relators given as integer
/// exponent rows.
struct Presentation {
  int n_generators = 0;
  std::vector<std::vector<long long>> relators;
};

/// Diagonal of the Smith normal form of an integer matrix (rows x cols),
/// including zeros, of length min(rows, cols). Exact.
std::vector<BigInt> smith_diagonal(std::vector<std::vector<BigInt>> m);

/// Z^n / <relators> via Smith normal form.
AbelianGroup abelian_invariants(const Presentation &p);

/// G/[G,G], computed independently of the Smith normal form by counting
/// p-power torsion in the abelianization.
AbelianGroup abelian_invariants(const FiniteGroup &g);

/// Invariant factors of a finite abelian group given by its Cayley table.
AbelianGroup abelian_structure(const FiniteGroup &abelian);

/// Sp(G): the one-dimensional characters of G. Each character is stored as
/// integer exponents k(g) modulo `exponent`, with value exp(2 pi i k(g) / exponent).
struct DualGroup {
  AbelianGroup structure;
  int exponent = 1;
  std::vector<std::vector<int>> characters; // characters[0] is trivial
  FiniteGroup group;                        // pointwise product; index matches `characters`

  std::complex<double> value(int character, Elem g) const;
  /// Index of the character with the given exponent vector, or -1.
  int find(const std::vector<int> &exponents) const;
};

DualGroup dual_group(const FiniteGroup &g);

} // namespace kacforge
