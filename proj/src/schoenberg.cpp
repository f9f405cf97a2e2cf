#include "ordist/schoenberg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ordist/error.hpp"

namespace ordist {

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols())
    throw Error(ErrorCode::InvalidDistances, "distance matrix must be square");
  if (!values_.allFinite())
    throw Error(ErrorCode::NonFiniteEntry, "distance matrix has a non-finite entry");
  const Eigen::Index n = values_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0)
      throw Error(ErrorCode::InvalidDistances,
                  "distance matrix diagonal must be zero (row " + std::to_string(i + 1) + ")");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (values_(i, j) < 0.0)
        throw Error(ErrorCode::InvalidDistances, "distance matrix has a negative entry");
      if (values_(i, j) != values_(j, i))
        throw Error(ErrorCode::InvalidDistances, "distance matrix is not symmetric");
    }
  }
}

GramMatrix GramMatrix::from_values(Eigen::MatrixXd values) {
  GramMatrix gram;
  const auto k = static_cast<int>(values.rows());
  gram.values = std::move(values);
  gram.base = k + 1;
  for (int i = 1; i <= k; ++i) gram.indices.push_back(i);
  return gram;
}

void check_shape(const PointConfig& config) {
  if (config.dim < 0 || config.P.cols() != config.dim)
    throw Error(ErrorCode::ShapeMismatch, "P coordinates do not match dim");
  if (config.Q && config.Q->cols() != config.dim)
    throw Error(ErrorCode::ShapeMismatch, "Q coordinates do not match dim");
}

GramMatrix gram_from_distances(const DistanceMatrix& distances, int base) {
  const int n = distances.size();
  if (base < 1 || base > n)
    throw Error(ErrorCode::BadIndex, "base index " + std::to_string(base) + " outside [1, " +
                                         std::to_string(n) + "]");
  GramMatrix gram;
  gram.base = base;
  for (int i = 1; i <= n; ++i)
    if (i != base) gram.indices.push_back(i);

  const auto size = static_cast<Eigen::Index>(gram.indices.size());
  gram.values.resize(size, size);
  for (Eigen::Index r = 0; r < size; ++r) {
    const int i = gram.indices[static_cast<std::size_t>(r)];
    const double bi = distances.at(base, i);
    for (Eigen::Index c = r; c < size; ++c) {
      const int j = gram.indices[static_cast<std::size_t>(c)];
      const double bj = distances.at(base, j);
      const double ij = distances.at(i, j);
      const double g = 0.5 * (bi * bi + bj * bj - ij * ij);
      gram.values(r, c) = g;
      gram.values(c, r) = g;
    }
  }
  return gram;
}

GramMatrix gram_from_distances(const DistanceMatrix& distances) {
  return gram_from_distances(distances, distances.size());
}

double min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  if (!symmetric.allFinite())
    throw Error(ErrorCode::NonFiniteEntry, "matrix has a non-finite entry");
  if (symmetric.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_positive_definite(const Eigen::MatrixXd& symmetric, double eta) {
  return min_eigenvalue(symmetric) > eta;
}

double psd_tolerance(const Eigen::VectorXd& eigenvalues) {
  const double largest = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return 1e-10 * std::max(1.0, largest);
}

PointConfig factor_points(const GramMatrix& gram, int dim) {
  const Eigen::Index size = gram.values.rows();
  if (!gram.values.allFinite())
    throw Error(ErrorCode::NonFiniteEntry, "Gram matrix has a non-finite entry");
  if (dim < 0) throw Error(ErrorCode::DimTooSmall, "dimension must be nonnegative");

  PointConfig config;
  config.dim = dim;
  config.P = Eigen::MatrixXd::Zero(size + 1, dim);
  if (size == 0) return config;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram.values);
  // ascending order; we want the largest directions first
  const Eigen::VectorXd lambda = solver.eigenvalues().reverse();
  const Eigen::MatrixXd vectors = solver.eigenvectors().rowwise().reverse();
  const double tol = psd_tolerance(lambda);

  if (lambda(size - 1) < -tol)
    throw Error(ErrorCode::NotPSD, "Gram matrix has eigenvalue " +
                                       std::to_string(lambda(size - 1)) + " below -" +
                                       std::to_string(tol));
  for (Eigen::Index k = dim; k < size; ++k)
    if (lambda(k) > tol)
      throw Error(ErrorCode::DimTooSmall, "Gram matrix needs more than " + std::to_string(dim) +
                                              " dimensions (eigenvalue " +
                                              std::to_string(lambda(k)) + ")");

  const Eigen::Index used = std::min<Eigen::Index>(size, dim);
  Eigen::MatrixXd coords(size, used);
  for (Eigen::Index k = 0; k < used; ++k)
    coords.col(k) = vectors.col(k) * std::sqrt(std::max(lambda(k), 0.0));

  // back to the original numbering; the base row stays at the origin
  for (Eigen::Index r = 0; r < size; ++r) {
    const int idx = gram.indices.empty() ? static_cast<int>(r) + 1
                                         : gram.indices[static_cast<std::size_t>(r)];
    config.P.row(idx - 1).head(used) = coords.row(r);
  }
  return config;
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (points.row(i) - points.row(j)).norm();
      out(i, j) = d;
      out(j, i) = d;
    }
  return out;
}

Eigen::MatrixXd cross_distances(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q) {
  Eigen::MatrixXd out(P.rows(), Q.rows());
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    for (Eigen::Index j = 0; j < Q.rows(); ++j) out(i, j) = (P.row(i) - Q.row(j)).norm();
  return out;
}

Eigen::MatrixXd distances_of(const PointConfig& config) {
  return config.Q ? cross_distances(config.P, *config.Q) : pairwise_distances(config.P);
}

}  // namespace ordist
