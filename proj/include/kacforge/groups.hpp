#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kacforge {

/// Index of a group element, always in [0, order).
using Elem = int;

enum class GroupSource { cayley, permutation_generators, matrix_generators_mod_m, derived };

std::string_view to_string(GroupSource source);

/// A finite group stored as a dense Cayley table. Values are immutable once
/// constructed; every factory validates the group law.
class FiniteGroup {
public:
  /// The trivial group.
  FiniteGroup();

  /// Validates associativity (exhaustively up to order 64, by >= 1e5 seeded
  /// samples above), identity and inverses. Throws ValidationError with a
  /// witness on failure.
  static FiniteGroup from_cayley(const std::vector<std::vector<Elem>> &table,
                                 std::vector<std::string> labels = {},
                                 GroupSource source = GroupSource::cayley);

  /// Same as from_cayley on a flat row-major table.
  static FiniteGroup from_flat_table(int order, std::vector<Elem> table,
                                     std::vector<std::string> labels, GroupSource source);

  int order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem identity() const noexcept { return identity_; }
  GroupSource source() const noexcept { return source_; }

  Elem conj(Elem g, Elem by) const { return mul(mul(inv(by), g), by); } // by^-1 g by
  Elem pow(Elem a, long long k) const;
  int element_order(Elem a) const;
  bool is_abelian() const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Element name; falls back to the decimal index when unlabeled.
  std::string label(Elem a) const;
  std::optional<Elem> find_label(std::string_view name) const;
  const std::vector<std::string> &labels() const noexcept { return labels_; }

  std::vector<std::vector<Elem>> cayley() const;
  const std::vector<Elem> &flat_table() const noexcept { return table_; }

  bool operator==(const FiniteGroup &other) const { return table_ == other.table_; }

private:
  int n_ = 1;
  std::vector<Elem> table_{0};
  std::vector<Elem> inverse_{0};
  Elem identity_ = 0;
  std::vector<std::string> labels_;
  GroupSource source_ = GroupSource::cayley;
};

/// A subgroup realized as a group of its own; `embedding[i]` is the ambient
/// index of the subgroup's element i. Element 0 is always the identity.
struct Subgroup {
  FiniteGroup group;
  std::vector<Elem> embedding;

  /// Ambient element -> subgroup element, or -1.
  std::vector<Elem> locate(int ambient_order) const;
};

// ---- construction --------------------------------------------------------

using Permutation = std::vector<int>; // 0-based images

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n); // order 2n
FiniteGroup quaternion_group();
FiniteGroup symmetric_group(int n);
FiniteGroup alternating_group(int n);
FiniteGroup direct_product(const FiniteGroup &a, const FiniteGroup &b);

/// Closure of permutation generators. Products compose left to right:
/// i^(st) = (i^s)^t, so "(1 2 3)(1 2)" equals "(2 3)".
FiniteGroup from_permutations(int degree, const std::vector<Permutation> &generators,
                              std::size_t cap = 20000);

/// Parses cycle notation with 1-based points, e.g. "(1 2 3)(4 5)" or "()".
Permutation parse_cycles(std::string_view text, int degree);
std::string format_cycles(const Permutation &p);

using IntMatrix = std::vector<std::vector<long long>>;

/// Closure of square integer matrices reduced mod m. The closure is capped at
/// `cap` elements; Cayley tables are only materialized up to `table_cap`.
FiniteGroup from_matrices_mod(long long modulus, const std::vector<IntMatrix> &generators,
                              std::size_t cap = 20000, std::size_t table_cap = 4096);
/// SL_n(Z/pZ) generated by elementary transvections.
FiniteGroup special_linear_group(int n, long long p);

/// Sorted element list of the subgroup generated by `gens`.
std::vector<Elem> generated_subgroup(const FiniteGroup &g, std::span<const Elem> gens);
/// Builds the subgroup on `elements` (validated to be closed). The embedding
/// lists the identity first, then the remaining elements in ascending order.
Subgroup make_subgroup(const FiniteGroup &g, std::span<const Elem> elements);
bool is_normal(const FiniteGroup &g, std::span<const Elem> subgroup);

/// Quotient by a normal subgroup. `project[g]` is the coset index of g.
struct Quotient {
  FiniteGroup group;
  std::vector<Elem> project;
};
Quotient quotient(const FiniteGroup &g, std::span<const Elem> normal_subgroup);

// ---- structure -----------------------------------------------------------

struct ConjugacyData {
  std::vector<std::vector<Elem>> classes; // classes[0] = {e}; sorted by first element
  std::vector<int> class_of;
  std::vector<Elem> center;
};

ConjugacyData conjugacy_and_center(const FiniteGroup &g);
std::vector<Elem> centralizer(const FiniteGroup &g, std::span<const Elem> subset);
std::vector<Elem> derived_subgroup(const FiniteGroup &g);

/// Greedy generating set: repeatedly adds the smallest element outside the
/// current span, preferring elements of large order.
std::vector<Elem> generating_set(const FiniteGroup &g);

// ---- isomorphism ---------------------------------------------------------

inline constexpr int kIsomorphismCap = 512;

/// Brute-force isomorphism search with order-statistic pruning. Returns the
/// witness map A -> B. Throws SizeBound when |A| exceeds the cap.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup &a, const FiniteGroup &b,
                                                  int cap = kIsomorphismCap);
bool is_isomorphic_small(const FiniteGroup &a, const FiniteGroup &b, int cap = kIsomorphismCap);

/// N x| Q with law (n,q)(n',q') = (n * act_q(n'), q q'); element (n,q) has
/// index n + |N| q. `action[q]` is the automorphism of N given as a
/// permutation of its elements. Throws NotAnAction if validation fails.
FiniteGroup semidirect_product(const FiniteGroup &n, const FiniteGroup &q,
                               const std::vector<std::vector<Elem>> &action);

} // namespace kacforge
