#include "ordist/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ordist/error.hpp"

namespace ordist {

double choose_epsilon(const EpsilonSearch& search, const std::function<bool(double)>& accept) {
  if (!(search.initial > 0.0) || search.max_steps < 1 || !(search.shrink_factor > 0.0) ||
      !(search.shrink_factor < 1.0))
    throw Error(ErrorCode::BadConfig, "epsilon search needs initial > 0, shrink in (0,1), steps >= 1");
  double eps = search.initial;
  for (int step = 0; step < search.max_steps; ++step) {
    if (accept(eps)) return eps;
    eps *= search.shrink_factor;
  }
  throw Error(ErrorCode::EpsilonExhausted,
              "no epsilon accepted after " + std::to_string(search.max_steps) + " steps");
}

namespace {

EpsilonSearch search_for(const OrderSpec& spec, const ConstructionOptions& options) {
  EpsilonSearch search;
  search.initial = options.eps_initial.value_or(0.5 / spec.class_count());
  search.shrink_factor = options.eps_shrink;
  search.max_steps = options.eps_max_steps;
  return search;
}

double pair_distance(const PointConfig& config, PairId p) {
  const auto i = static_cast<Eigen::Index>(p.i - 1);
  const auto j = static_cast<Eigen::Index>(p.j - 1);
  if (config.Q) return (config.P.row(i) - config.Q->row(j)).norm();
  return (config.P.row(i) - config.P.row(j)).norm();
}

double class_margin(const OrderSpec& spec, const PointConfig& config) {
  double margin = std::numeric_limits<double>::infinity();
  double prev_max = 0.0;
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const PairId& p : spec.classes[k]) {
      const double d = pair_distance(config, p);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (k > 0) margin = std::min(margin, lo - prev_max);
    prev_max = hi;
  }
  return margin;
}

/// Regular simplex of `count` points with side `side`, in R^dim (dim >= count-1).
Eigen::MatrixXd regular_simplex(int count, double side, int dim) {
  const Eigen::MatrixXd d =
      side * (Eigen::MatrixXd::Ones(count, count) - Eigen::MatrixXd::Identity(count, count));
  return factor_points(gram_from_distances(DistanceMatrix(d)), dim).P;
}

}  // namespace

DistanceMatrix perturbed_distances(const OrderSpec& spec, double eps) {
  if (spec.kind != PairKind::complete)
    throw Error(ErrorCode::NotComplete, "perturbed distances need an order on D_n");
  require_valid(spec);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(spec.n, spec.n);
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    const double value = 1.0 + static_cast<double>(k + 1) * eps;
    for (const PairId& p : spec.classes[k]) {
      m(p.i - 1, p.j - 1) = value;
      m(p.j - 1, p.i - 1) = value;
    }
  }
  return DistanceMatrix(std::move(m));
}

RealizationReport realize_preorder_complete(const OrderSpec& spec,
                                            const ConstructionOptions& options) {
  if (spec.kind != PairKind::complete)
    throw Error(ErrorCode::NotComplete, "expected an order on D_n");
  require_valid(spec);

  double floor = 0.0;
  const double eps = choose_epsilon(search_for(spec, options), [&](double e) {
    floor = min_eigenvalue(gram_from_distances(perturbed_distances(spec, e)));
    return floor > options.eta;
  });

  RealizationReport report;
  report.epsilon = eps;
  report.min_eigenvalues = {floor};
  report.config = factor_points(gram_from_distances(perturbed_distances(spec, eps)), spec.n - 1);
  report.margin = class_margin(spec, report.config);
  return report;
}

RealizationReport realize_linear_complete(const OrderSpec& spec,
                                          const ConstructionOptions& options) {
  if (spec.kind != PairKind::complete)
    throw Error(ErrorCode::NotComplete, "expected an order on D_n");
  require_valid(spec);
  if (!is_linear(spec)) throw Error(ErrorCode::NotLinear, "expected a linear order");
  if (spec.n < 3) throw Error(ErrorCode::BadSize, "linear construction needs n >= 3");

  const int n = spec.n;
  const int dim = n - 2;
  const Relabeling relabeled = relabel_min_to_last(spec);
  const OrderSpec& work = relabeled.spec;

  // distances among [n-1] (base n-1) and among [n-2] + {n} (base n)
  auto build = [&](double eps, std::vector<double>& floors) -> std::optional<Eigen::MatrixXd> {
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 1; k < work.classes.size(); ++k) {
      const PairId p = work.classes[k].front();
      const double value = 1.0 + static_cast<double>(k + 1) * eps;
      full(p.i - 1, p.j - 1) = value;
      full(p.j - 1, p.i - 1) = value;
    }
    std::vector<Eigen::Index> with_last(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n - 2; ++i) with_last[static_cast<std::size_t>(i)] = i;
    with_last.back() = n - 2;
    Eigen::MatrixXd dg = full(with_last, with_last);
    with_last.back() = n - 1;
    Eigen::MatrixXd dh = full(with_last, with_last);

    const GramMatrix g = gram_from_distances(DistanceMatrix(std::move(dg)));
    const GramMatrix h = gram_from_distances(DistanceMatrix(std::move(dh)));
    floors = {min_eigenvalue(g), min_eigenvalue(h)};
    if (floors[0] <= options.eta || floors[1] <= options.eta) return std::nullopt;

    // x_i relative to p_{n-1} = 0, y_i relative to q_n = 0
    const Eigen::MatrixXd x = factor_points(g, dim).P;
    const Eigen::MatrixXd y = factor_points(h, dim).P;
    const Eigen::MatrixXd shared_x = x.topRows(n - 2);
    const Eigen::MatrixXd shared_y = y.topRows(n - 2);

    Eigen::VectorXd p_prev = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd q_last;
    try {
      const RigidMap to_p = align_isometry(shared_y, shared_x);
      q_last = to_p.apply(Eigen::VectorXd::Zero(dim));
      const Hyperplane plane = affine_hyperplane(shared_x);
      if (plane.signed_distance(p_prev) * plane.signed_distance(q_last) < 0.0)
        q_last = reflect_across_affine_span(q_last, shared_x);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateHyperplane || e.code() == ErrorCode::DistanceMismatch)
        return std::nullopt;
      throw;
    }

    const double gap = (p_prev - q_last).norm();
    if (!(gap > 0.0 && gap < 1.0)) return std::nullopt;

    Eigen::MatrixXd points(n, dim);
    points.topRows(n - 2) = shared_x;
    points.row(n - 2) = p_prev.transpose();
    points.row(n - 1) = q_last.transpose();
    return points;
  };

  std::optional<Eigen::MatrixXd> accepted;
  std::vector<double> floors;
  const double eps = choose_epsilon(search_for(spec, options), [&](double e) {
    accepted = build(e, floors);
    return accepted.has_value();
  });

  // undo the relabeling: old point i is new point permutation[i-1]
  RealizationReport report;
  report.epsilon = eps;
  report.min_eigenvalues = floors;
  report.config.dim = dim;
  report.config.P.resize(n, dim);
  for (int i = 1; i <= n; ++i)
    report.config.P.row(i - 1) =
        accepted->row(relabeled.permutation[static_cast<std::size_t>(i - 1)] - 1);
  report.margin = class_margin(spec, report.config);
  return report;
}

RealizationReport realize_preorder_bipartite(const OrderSpec& spec,
                                             const ConstructionOptions& options) {
  if (spec.kind != PairKind::bipartite)
    throw Error(ErrorCode::ShapeMismatch, "expected an order on B_{n,m}");
  require_valid(spec);

  if (spec.m < spec.n) {
    RealizationReport swapped = realize_preorder_bipartite(transpose(spec), options);
    std::swap(swapped.config.P, *swapped.config.Q);
    return swapped;
  }

  const int n = spec.n;
  const int m = spec.m;
  const std::vector<int> ranks = rank_table(spec);
  auto rank = [&](int row, int col) {
    return ranks[static_cast<std::size_t>(pair_index(spec, PairId{row, col}))];
  };

  // P fills rows/cols 0..n-1, the apex q_col is index n
  auto apex_distances = [&](int col, double eps) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) d(a, b) = d(b, a) = 1.0 + eps;
      d(a, n) = d(n, a) = 1.0 + rank(a + 1, col) * eps;
    }
    return DistanceMatrix(std::move(d));
  };

  std::vector<double> floors(static_cast<std::size_t>(m));
  const double eps = choose_epsilon(search_for(spec, options), [&](double e) {
    bool ok = true;
    for (int col = 1; col <= m; ++col) {
      floors[static_cast<std::size_t>(col - 1)] =
          min_eigenvalue(gram_from_distances(apex_distances(col, e)));
      ok = ok && floors[static_cast<std::size_t>(col - 1)] > options.eta;
    }
    return ok;
  });

  // simplex in the first n-1 coordinates with p_n at the origin; each apex
  // solves p_j . c = (|p_j|^2 + r_n^2 - r_j^2) / 2 and takes height >= 0
  const Eigen::MatrixXd simplex = regular_simplex(n, 1.0 + eps, n);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(m, n);
  const Eigen::MatrixXd basis = simplex.topLeftCorner(n - 1, n - 1);
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> solver;
  if (n > 1) solver.emplace(basis);
  for (int col = 1; col <= m; ++col) {
    const double r_last = 1.0 + rank(n, col) * eps;
    Eigen::VectorXd rhs(n - 1);
    for (int j = 1; j < n; ++j) {
      const double r_j = 1.0 + rank(j, col) * eps;
      rhs(j - 1) = 0.5 * (basis.row(j - 1).squaredNorm() + r_last * r_last - r_j * r_j);
    }
    const Eigen::VectorXd c = solver ? Eigen::VectorXd(solver->solve(rhs)) : Eigen::VectorXd();
    const double height_sq = r_last * r_last - c.squaredNorm();
    Q.row(col - 1).head(n - 1) = c.transpose();
    Q(col - 1, n - 1) = std::sqrt(std::max(height_sq, 0.0));
  }

  RealizationReport report;
  report.epsilon = eps;
  report.min_eigenvalues = floors;
  report.config.dim = n;
  report.config.P = simplex;
  report.config.Q = std::move(Q);
  report.margin = class_margin(spec, report.config);
  return report;
}

RealizationReport realize_linear_bipartite(const OrderSpec& spec,
                                           const ConstructionOptions& options) {
  require_valid(spec);
  if (!is_linear(spec)) throw Error(ErrorCode::NotLinear, "expected a linear order");
  return realize_preorder_bipartite(spec, options);
}

RealizationReport realize(const OrderSpec& spec, const ConstructionOptions& options) {
  require_valid(spec);
  if (spec.kind == PairKind::bipartite) return realize_preorder_bipartite(spec, options);
  if (is_linear(spec) && spec.n >= 3) return realize_linear_complete(spec, options);
  return realize_preorder_complete(spec, options);
}

}  // namespace ordist
