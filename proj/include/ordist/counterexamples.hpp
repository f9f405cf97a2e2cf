#ifndef ORDIST_COUNTEREXAMPLES_HPP
#define ORDIST_COUNTEREXAMPLES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ordist/order_model.hpp"
#include "ordist/schoenberg.hpp"
#include "ordist/verifier.hpp"

namespace ordist {

// ---------------------------------------------------------------------------
// Lower-bound order families
// ---------------------------------------------------------------------------

/// d4_linear, block_linear, diameter_preorder, bip_cyclic_linear, bip_affine_preorder.
const std::vector<std::string>& gallery_names();

/// One relation a family is required to contain.
struct StatedRelation {
  enum class Kind { less, equal };
  PairId lhs;
  Kind kind;
  PairId rhs;
};

/// The relations that define a family. Only these are forced; everything else
/// in the emitted order is a deterministic completion.
std::vector<StatedRelation> gallery_relations(std::string_view name, int n);

/// Throws Error(UnknownName) or Error(BadSize).
OrderSpec gallery(std::string_view name, int n);

/// Largest dimension in which the family cannot be realized
/// (1, n-3, n-2, n-2, n-1 in the order of gallery_names()).
int gallery_infeasible_dim(std::string_view name, int n);

/// Linear extension of a strict relation set: Kahn's algorithm, always taking
/// the lexicographically smallest available pair.
OrderSpec complete_linear(PairKind kind, int n, int m, const std::vector<StatedRelation>& relations);

/// Distance between a vertex and its mirror image across the opposite facet of
/// a unit regular simplex with n-1 vertices: 2 sqrt((n-1) / (2(n-2))).
double simplex_diameter_bound(int n);

// ---------------------------------------------------------------------------
// Stress objective
// ---------------------------------------------------------------------------

/// Hinge-squared penalty on scale-normalised squared distances. With s the
/// squared distances divided by their mean:
///   sum over consecutive classes   max(0, margin + s_a - s_b)^2
///   + sum within classes            (s_a - s_b)^2
///   + max(0, margin - s_first)^2    (keeps the lowest class off zero)
/// where a, b are the first pairs of each class. Points are stacked rows:
/// P first, then Q in bipartite mode.
class StressObjective {
 public:
  StressObjective(const OrderSpec& spec, double margin);

  /// Loss at X; fills grad (same shape as X) when non-null. A configuration
  /// whose squared distances are all zero gives +inf.
  double evaluate(const Eigen::MatrixXd& X, Eigen::MatrixXd* grad) const;

  int point_count() const { return points_; }
  /// Stacked row indices of the two points of each pair, in pair-index order.
  const std::vector<std::pair<int, int>>& endpoints() const { return endpoints_; }
  /// Adjacent within-class pairs (pair indices).
  const std::vector<std::pair<int, int>>& equalities() const { return equal_; }

 private:
  std::vector<std::pair<int, int>> endpoints_;  // stacked rows of each pair
  std::vector<std::pair<int, int>> strict_;     // pair indices a < b
  std::vector<std::pair<int, int>> equal_;      // pair indices a == b
  int floor_pair_ = 0;
  int points_ = 0;
  double margin_ = 0.0;
};

struct StressResult {
  double loss = 0.0;
  Eigen::MatrixXd grad_P;
  Eigen::MatrixXd grad_Q;  // empty in complete mode
};

StressResult stress_loss(const OrderSpec& spec, const PointConfig& config, double margin);

/// Stacks P and Q rows (Q only in bipartite mode).
Eigen::MatrixXd stack_points(const PointConfig& config);
PointConfig unstack_points(const Eigen::MatrixXd& X, const OrderSpec& spec);

// ---------------------------------------------------------------------------
// Falsifier
// ---------------------------------------------------------------------------

struct FalsifierConfig {
  int dim = 1;
  int restarts = 100;
  int iters = 5000;
  double margin = 1e-2;
  std::uint64_t seed = 0;

  double initial_step = 1.0;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_backtracks = 60;

  double stop_loss = 1e-14;
  double feasible_loss = 1e-10;
  /// Applied after the within-class equalities are polished to rounding.
  Tolerances verify_tol{};
  int threads = 0;  // 0: hardware concurrency
};

struct FalsifierReport {
  bool feasible = false;
  double best_loss = 0.0;
  int best_restart = 0;
  int dim = 0;
  PointConfig best_config;  // centred, mean squared distance 1
  std::vector<double> per_restart_losses;
};

/// Throws Error(BadConfig) for dim, restarts, iters < 1 or margin <= 0.
void check_config(const FalsifierConfig& cfg);

/// Multi-start gradient descent on the stress objective. A restart counts as
/// feasible when its loss is below feasible_loss and, after Gauss-Newton
/// polishing of the within-class equalities, the normalised configuration
/// passes verify. "Infeasible" only means no restart got there.
FalsifierReport falsify(const OrderSpec& spec, const FalsifierConfig& cfg);

}  // namespace ordist

#endif  // ORDIST_COUNTEREXAMPLES_HPP
