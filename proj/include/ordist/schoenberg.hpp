#ifndef ORDIST_SCHOENBERG_HPP
#define ORDIST_SCHOENBERG_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ordist {

/// Symmetric, hollow, nonnegative matrix of target distances. Indices in the
/// accessor are 1-based.
class DistanceMatrix {
 public:
  /// Validates the invariants; throws Error(InvalidDistances / NonFiniteEntry).
  explicit DistanceMatrix(Eigen::MatrixXd values);

  int size() const { return static_cast<int>(values_.rows()); }
  double at(int i, int j) const { return values_(i - 1, j - 1); }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

/// Inner products of the points translated so that `base` sits at the origin.
/// Row/column r corresponds to original point indices[r].
struct GramMatrix {
  Eigen::MatrixXd values;
  int base = 0;
  std::vector<int> indices;

  /// Wraps a bare matrix: points 1..k map to rows, the base is point k+1.
  static GramMatrix from_values(Eigen::MatrixXd values);
};

/// Points of one collection (complete mode) or of two collections P and Q
/// (bipartite mode). Rows are points.
struct PointConfig {
  int dim = 0;
  Eigen::MatrixXd P;
  std::optional<Eigen::MatrixXd> Q;

  bool bipartite() const { return Q.has_value(); }
  int n() const { return static_cast<int>(P.rows()); }
  int m() const { return Q ? static_cast<int>(Q->rows()) : 0; }
};

/// Throws Error(ShapeMismatch) if a row count or column count disagrees with dim.
void check_shape(const PointConfig& config);

/// g_ij = (m_bi^2 + m_bj^2 - m_ij^2) / 2 over all i, j != base.
GramMatrix gram_from_distances(const DistanceMatrix& distances, int base);

/// Same, with the base defaulting to the last point.
GramMatrix gram_from_distances(const DistanceMatrix& distances);

double min_eigenvalue(const Eigen::MatrixXd& symmetric);
inline double min_eigenvalue(const GramMatrix& gram) { return min_eigenvalue(gram.values); }

/// Strict test: min eigenvalue > eta.
bool is_positive_definite(const Eigen::MatrixXd& symmetric, double eta);
inline bool is_positive_definite(const GramMatrix& gram, double eta) {
  return is_positive_definite(gram.values, eta);
}

/// Slack for "nonnegative" eigenvalues: 1e-10 * max(1, largest |eigenvalue|).
double psd_tolerance(const Eigen::VectorXd& eigenvalues);

/// Coordinates for a Gram matrix: the base point at the origin and every other
/// point at the matching eigen-coordinates, padded or truncated to `dim`.
/// Output rows follow the original point numbering (base included).
PointConfig factor_points(const GramMatrix& gram, int dim);

/// Rows are the points of `points`; returns the full pairwise distance matrix.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points);

/// |P| x |Q| matrix of cross distances.
Eigen::MatrixXd cross_distances(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q);

/// Complete mode: n x n distances of P. Bipartite mode: n x m rectangle P vs Q.
Eigen::MatrixXd distances_of(const PointConfig& config);

}  // namespace ordist

#endif  // ORDIST_SCHOENBERG_HPP
