#ifndef ORDIST_ORDER_MODEL_HPP
#define ORDIST_ORDER_MODEL_HPP

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordist/error.hpp"

namespace ordist {

/// Which family of pairs an order lives on: D_n (unordered pairs of one
/// collection) or B_{n,m} (cross pairs between two collections).
enum class PairKind { complete, bipartite };

std::string_view to_string(PairKind kind);

/// A pair of 1-based point indices. Complete pairs are kept canonical (i < j);
/// bipartite pairs are (row in P, column in Q).
struct PairId {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const PairId&, const PairId&) = default;
};

/// Builds a complete pair, swapping the indices if needed.
PairId complete_pair(int a, int b);

using PairClass = std::vector<PairId>;

/// A total preorder on a pair set, given as its equivalence classes in
/// ascending order (classes[0] holds the smallest distances).
struct OrderSpec {
  PairKind kind = PairKind::complete;
  int n = 0;
  int m = 0;  // bipartite only
  std::vector<PairClass> classes;

  int class_count() const { return static_cast<int>(classes.size()); }
  bool operator==(const OrderSpec&) const = default;
};

struct Violation {
  ErrorCode code;
  std::optional<PairId> pair;
  std::string message;
};

/// Number of pairs in D_n or B_{n,m}.
int pair_count(PairKind kind, int n, int m);
int pair_count(const OrderSpec& spec);

/// Dense index of a pair within its pair set: lexicographic order for D_n,
/// row-major for B_{n,m}. The pair must lie in range.
int pair_index(const OrderSpec& spec, PairId pair);
int pair_index(PairKind kind, int n, int m, PairId pair);

/// All pairs of the set in pair_index order.
std::vector<PairId> all_pairs(PairKind kind, int n, int m);

/// Returns the first violated invariant, or nothing when the spec is a valid
/// partition of its pair set.
std::optional<Violation> validate(const OrderSpec& spec);

/// Throws Error with the violation's code when the spec is invalid.
void require_valid(const OrderSpec& spec);

/// 1-based rank of the class containing `pair`.
int rank_of(const OrderSpec& spec, PairId pair);

/// rank_of for every pair, indexed by pair_index. Spec must be valid.
std::vector<int> rank_table(const OrderSpec& spec);

bool is_linear(const OrderSpec& spec);

/// Sorts pairs inside each class; the class order is untouched.
OrderSpec canonicalize(OrderSpec spec);

/// Relabeling of [n] that moves the minimum of a complete linear order to the
/// pair (n-1, n). permutation[i-1] is the new label of old point i.
struct Relabeling {
  OrderSpec spec;
  std::vector<int> permutation;
};

Relabeling relabel_min_to_last(const OrderSpec& spec);

/// Applies a permutation of [n] to every pair of a complete spec.
OrderSpec apply_permutation(const OrderSpec& spec, const std::vector<int>& permutation);

/// Swaps the roles of P and Q in a bipartite spec: (i, j) becomes (j, i).
OrderSpec transpose(const OrderSpec& spec);

std::string to_string(PairId pair);

}  // namespace ordist

#endif  // ORDIST_ORDER_MODEL_HPP
