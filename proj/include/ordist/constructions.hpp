#ifndef ORDIST_CONSTRUCTIONS_HPP
#define ORDIST_CONSTRUCTIONS_HPP

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ordist/order_model.hpp"
#include "ordist/schoenberg.hpp"

namespace ordist {

/// Geometric sequence initial * shrink_factor^k, k = 0 .. max_steps-1.
struct EpsilonSearch {
  double initial = 0.5;
  double shrink_factor = 0.5;
  int max_steps = 60;
};

/// First epsilon in the search sequence accepted by `accept`.
/// Throws Error(EpsilonExhausted) after max_steps rejections.
double choose_epsilon(const EpsilonSearch& search, const std::function<bool(double)>& accept);

/// Knobs shared by all constructions. An unset initial epsilon means 1/(2K)
/// for K classes.
struct ConstructionOptions {
  std::optional<double> eps_initial;
  double eps_shrink = 0.5;
  int eps_max_steps = 60;
  double eta = 1e-6;  // required min eigenvalue of every Gram matrix
};

struct RealizationReport {
  PointConfig config;
  double epsilon = 0.0;
  /// Smallest gap between the largest distance of a class and the smallest
  /// distance of the next one. +inf for a single class.
  double margin = 0.0;
  std::vector<double> min_eigenvalues;
};

/// m_ij = 1 + rank(i, j) * eps off the diagonal.
DistanceMatrix perturbed_distances(const OrderSpec& spec, double eps);

/// n points in R^{n-1} inducing any total preorder on D_n.
RealizationReport realize_preorder_complete(const OrderSpec& spec,
                                            const ConstructionOptions& options = {});

/// n points in R^{n-2} inducing any linear order on D_n, n >= 3.
RealizationReport realize_linear_complete(const OrderSpec& spec,
                                          const ConstructionOptions& options = {});

/// P and Q in R^{min(n,m)} inducing any total preorder on B_{n,m}.
RealizationReport realize_preorder_bipartite(const OrderSpec& spec,
                                             const ConstructionOptions& options = {});

RealizationReport realize_linear_bipartite(const OrderSpec& spec,
                                           const ConstructionOptions& options = {});

/// Picks the construction matching the spec's kind and linearity.
RealizationReport realize(const OrderSpec& spec, const ConstructionOptions& options = {});

/// x -> rotation * (x - source_centroid) + target_centroid. The rotation may
/// be any orthogonal matrix, reflections included.
struct RigidMap {
  Eigen::MatrixXd rotation;
  Eigen::VectorXd source_centroid;
  Eigen::VectorXd target_centroid;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd apply_rows(const Eigen::MatrixXd& points) const;
};

/// Orthogonal Procrustes fit of `source` rows onto `target` rows. Throws
/// Error(DistanceMismatch) if the two sets are not congruent within tol.
RigidMap align_isometry(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target,
                        double tol = 1e-8);

/// Affine hyperplane through a point set, as (point, unit normal).
struct Hyperplane {
  Eigen::VectorXd point;
  Eigen::VectorXd normal;

  double signed_distance(const Eigen::VectorXd& x) const { return normal.dot(x - point); }
};

/// Throws Error(DegenerateHyperplane) unless the affine span of the rows has
/// codimension exactly one.
Hyperplane affine_hyperplane(const Eigen::MatrixXd& spanning, double tol = 1e-9);

Eigen::VectorXd reflect_across_affine_span(const Eigen::VectorXd& x,
                                           const Eigen::MatrixXd& spanning, double tol = 1e-9);

}  // namespace ordist

#endif  // ORDIST_CONSTRUCTIONS_HPP
