#include <algorithm>
#include <cmath>
#include <string>

#include "ordist/constructions.hpp"
#include "ordist/error.hpp"

namespace ordist {

Eigen::VectorXd RigidMap::apply(const Eigen::VectorXd& x) const {
  return rotation * (x - source_centroid) + target_centroid;
}

Eigen::MatrixXd RigidMap::apply_rows(const Eigen::MatrixXd& points) const {
  Eigen::MatrixXd out(points.rows(), points.cols());
  for (Eigen::Index r = 0; r < points.rows(); ++r)
    out.row(r) = apply(points.row(r).transpose()).transpose();
  return out;
}

RigidMap align_isometry(const Eigen::MatrixXd& source, const Eigen::MatrixXd& target,
                        double tol) {
  if (source.rows() != target.rows() || source.cols() != target.cols() || source.rows() == 0)
    throw Error(ErrorCode::DistanceMismatch, "point lists differ in shape");
  const Eigen::MatrixXd ds = pairwise_distances(source);
  const Eigen::MatrixXd dt = pairwise_distances(target);
  if ((ds - dt).cwiseAbs().maxCoeff() > tol)
    throw Error(ErrorCode::DistanceMismatch, "point lists are not congruent");

  RigidMap map;
  map.source_centroid = source.colwise().mean().transpose();
  map.target_centroid = target.colwise().mean().transpose();
  const Eigen::MatrixXd a = source.rowwise() - map.source_centroid.transpose();
  const Eigen::MatrixXd b = target.rowwise() - map.target_centroid.transpose();

  // maximise tr(R^T b^T a): R = V U^T for a^T b = U S V^T
  const Eigen::MatrixXd cov = a.transpose() * b;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  map.rotation = svd.matrixV() * svd.matrixU().transpose();

  const Eigen::MatrixXd moved = map.apply_rows(source);
  const double residual = (moved - target).rowwise().norm().maxCoeff();
  if (residual > tol)
    throw Error(ErrorCode::DistanceMismatch,
                "alignment residual " + std::to_string(residual) + " exceeds tolerance");
  return map;
}

Hyperplane affine_hyperplane(const Eigen::MatrixXd& spanning, double tol) {
  if (spanning.rows() == 0)
    throw Error(ErrorCode::DegenerateHyperplane, "no spanning points");
  const Eigen::Index dim = spanning.cols();
  Hyperplane plane;
  plane.point = spanning.colwise().mean().transpose();
  const Eigen::MatrixXd centered = spanning.rowwise() - plane.point.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double scale = std::max(1.0, sigma.size() ? sigma(0) : 0.0);
  const auto rank = static_cast<Eigen::Index>(
      std::count_if(sigma.data(), sigma.data() + sigma.size(),
                    [&](double s) { return s > tol * scale; }));
  if (rank != dim - 1)
    throw Error(ErrorCode::DegenerateHyperplane,
                "affine span has dimension " + std::to_string(rank) + " in R^" +
                    std::to_string(dim));
  plane.normal = svd.matrixV().col(dim - 1);
  return plane;
}

Eigen::VectorXd reflect_across_affine_span(const Eigen::VectorXd& x,
                                           const Eigen::MatrixXd& spanning, double tol) {
  const Hyperplane plane = affine_hyperplane(spanning, tol);
  return x - 2.0 * plane.signed_distance(x) * plane.normal;
}

}  // namespace ordist
