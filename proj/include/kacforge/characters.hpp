#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kacforge/config.hpp"
#include "kacforge/groups.hpp"

namespace kacforge {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Irreducible characters of a finite group. Row 0 is the trivial character;
/// the remaining rows are sorted by dimension, then by their values.
struct CharacterTable {
  std::vector<std::vector<Elem>> classes; // classes[0] = {e}
  std::vector<int> class_of;
  std::vector<std::vector<cplx>> chars; // chars[irrep][class]
  std::vector<int> dims;

  std::size_t size() const { return dims.size(); }
  cplx value(int irrep, Elem g) const { return chars[irrep][class_of[g]]; }
  /// Index of the dual (complex conjugate) character.
  int dual(int irrep) const;
  /// Largest deviation from row and column orthogonality.
  double orthogonality_defect(int group_order) const;
};

inline constexpr int kCharacterTableBound = 2000;

/// Burnside's algorithm: simultaneous eigenvectors of the class-sum
/// multiplication matrices, separated by a seeded random combination.
/// Throws SeedDegenerate when every retry produces a repeated eigenvalue.
CharacterTable character_table(const FiniteGroup &g, std::uint64_t seed = kDefaultSeed,
                               int bound = kCharacterTableBound);

/// One unitary realization of an irreducible character.
struct MatrixIrrep {
  int label = 0; // row of the character table
  int dim = 1;
  std::vector<CMatrix> matrices; // indexed by group element

  double multiplicativity_defect(const FiniteGroup &g) const;
  double unitarity_defect() const;
};

/// Extracts each irrep from the isotypic component of the regular
/// representation. Throws ExtractionFailed when no clean copy is found.
std::vector<MatrixIrrep> matrix_irreps(const FiniteGroup &g, const CharacterTable &t,
                                       std::uint64_t seed = kDefaultSeed);

/// Character of an arbitrary family of matrices indexed by group elements.
std::vector<cplx> traces(const std::vector<CMatrix> &matrices);

} // namespace kacforge
