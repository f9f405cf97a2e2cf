#include "ordist/counterexamples.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "ordist/error.hpp"

namespace ordist {

namespace {

using Rel = StatedRelation::Kind;

int wrap(int index, int n) { return ((index - 1) % n + n) % n + 1; }

void require_size(std::string_view name, int n, bool ok, std::string_view range) {
  if (!ok)
    throw Error(ErrorCode::BadSize, std::string(name) + " needs " + std::string(range) +
                                        ", got n=" + std::to_string(n));
}

void check_name_and_size(std::string_view name, int n) {
  if (name == "d4_linear") {
    require_size(name, n, n == 4, "n = 4");
  } else if (name == "block_linear") {
    require_size(name, n, n >= 4, "n >= 4");
  } else if (name == "diameter_preorder" || name == "bip_cyclic_linear" ||
             name == "bip_affine_preorder") {
    require_size(name, n, n >= 3, "n >= 3");
  } else {
    throw Error(ErrorCode::UnknownName, "unknown gallery family '" + std::string(name) + "'");
  }
}

PairKind kind_of(std::string_view name) {
  return name.substr(0, 4) == "bip_" ? PairKind::bipartite : PairKind::complete;
}

}  // namespace

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "d4_linear", "block_linear", "diameter_preorder", "bip_cyclic_linear",
      "bip_affine_preorder"};
  return names;
}

std::vector<StatedRelation> gallery_relations(std::string_view name, int n) {
  check_name_and_size(name, n);
  std::vector<StatedRelation> rel;

  if (name == "d4_linear") {
    for (const PairId& p : all_pairs(PairKind::complete, 4, 0))
      if (p != PairId{1, 4}) rel.push_back({p, Rel::less, {1, 4}});
    rel.push_back({{1, 2}, Rel::less, {1, 3}});
    rel.push_back({{2, 4}, Rel::less, {3, 4}});
  } else if (name == "block_linear") {
    const int low = n - 3;
    auto top = [&](PairId p) { return p.j <= low; };
    auto bottom = [&](PairId p) { return p.i <= low && p.j > low; };
    const auto pairs = all_pairs(PairKind::complete, n, 0);
    for (const PairId& a : pairs)
      for (const PairId& b : pairs) {
        if (top(b) && !top(a)) rel.push_back({a, Rel::less, b});
        if (bottom(a) && !bottom(b) && !top(b)) rel.push_back({a, Rel::less, b});
      }
  } else if (name == "diameter_preorder") {
    const PairId lowest{n - 1, n};
    std::vector<PairId> rest;
    for (const PairId& p : all_pairs(PairKind::complete, n, 0))
      if (p != lowest) rest.push_back(p);
    for (const PairId& p : rest) rel.push_back({lowest, Rel::less, p});
    for (std::size_t k = 1; k < rest.size(); ++k) rel.push_back({rest[k - 1], Rel::equal, rest[k]});
  } else if (name == "bip_cyclic_linear") {
    // column i: (i, i) < (i+1, i) < ... < (i-1, i), rows mod n
    for (int col = 1; col <= n; ++col)
      for (int t = 0; t + 1 < n; ++t)
        rel.push_back({{wrap(col + t, n), col}, Rel::less, {wrap(col + t + 1, n), col}});
  } else {  // bip_affine_preorder
    for (int row = 1; row <= 2; ++row)
      for (int col = 1; col < n; ++col) rel.push_back({{row, col}, Rel::equal, {row, col + 1}});
    for (int row = 3; row <= n - 1; ++row) {
      const int split = n + 2 - row;  // last column of the lower block
      for (int col = 1; col < n; ++col)
        rel.push_back({{row, col}, col == split ? Rel::less : Rel::equal, {row, col + 1}});
    }
    for (int col = 1; col < n; ++col) rel.push_back({{n, col}, Rel::less, {n, col + 1}});
    rel.push_back({{1, 1}, Rel::less, {2, 1}});
  }
  return rel;
}

OrderSpec complete_linear(PairKind kind, int n, int m,
                          const std::vector<StatedRelation>& relations) {
  const auto pairs = all_pairs(kind, n, m);
  const std::size_t count = pairs.size();
  std::vector<std::vector<int>> after(count);
  std::vector<int> indegree(count, 0);
  for (const auto& r : relations) {
    if (r.kind != Rel::less)
      throw Error(ErrorCode::BadConfig, "linear completion only takes strict relations");
    const int a = pair_index(kind, n, m, r.lhs);
    const int b = pair_index(kind, n, m, r.rhs);
    after[static_cast<std::size_t>(a)].push_back(b);
    ++indegree[static_cast<std::size_t>(b)];
  }
  // pair_index order is lexicographic, so the smallest index is the smallest pair
  std::set<int> ready;
  for (std::size_t k = 0; k < count; ++k)
    if (indegree[k] == 0) ready.insert(static_cast<int>(k));

  OrderSpec spec{kind, n, kind == PairKind::bipartite ? m : 0, {}};
  while (!ready.empty()) {
    const int next = *ready.begin();
    ready.erase(ready.begin());
    spec.classes.push_back({pairs[static_cast<std::size_t>(next)]});
    for (int b : after[static_cast<std::size_t>(next)])
      if (--indegree[static_cast<std::size_t>(b)] == 0) ready.insert(b);
  }
  if (spec.classes.size() != count)
    throw Error(ErrorCode::BadConfig, "relations contain a cycle");
  return spec;
}

OrderSpec gallery(std::string_view name, int n) {
  check_name_and_size(name, n);
  const PairKind kind = kind_of(name);

  if (name == "diameter_preorder") {
    OrderSpec spec{kind, n, 0, {{PairId{n - 1, n}}, {}}};
    for (const PairId& p : all_pairs(kind, n, 0))
      if (p != PairId{n - 1, n}) spec.classes[1].push_back(p);
    return spec;
  }
  if (name == "bip_affine_preorder") {
    // rows chained in order; each row contributes its own classes
    OrderSpec spec{kind, n, n, {}};
    auto row_class = [&](int row, int from, int to) {
      PairClass cls;
      for (int col = from; col <= to; ++col) cls.push_back({row, col});
      spec.classes.push_back(std::move(cls));
    };
    row_class(1, 1, n);
    row_class(2, 1, n);
    for (int row = 3; row <= n - 1; ++row) {
      row_class(row, 1, n + 2 - row);
      row_class(row, n + 3 - row, n);
    }
    for (int col = 1; col <= n; ++col) row_class(n, col, col);
    return spec;
  }
  const int m = kind == PairKind::bipartite ? n : 0;
  return complete_linear(kind, n, m, gallery_relations(name, n));
}

int gallery_infeasible_dim(std::string_view name, int n) {
  check_name_and_size(name, n);
  if (name == "d4_linear") return 1;
  if (name == "block_linear") return n - 3;
  if (name == "bip_affine_preorder") return n - 1;
  return n - 2;
}

double simplex_diameter_bound(int n) {
  if (n < 3) throw Error(ErrorCode::BadSize, "simplex diameter bound needs n >= 3");
  return 2.0 * std::sqrt((n - 1.0) / (2.0 * (n - 2.0)));
}

// ---------------------------------------------------------------------------

StressObjective::StressObjective(const OrderSpec& spec, double margin) : margin_(margin) {
  require_valid(spec);
  const bool bip = spec.kind == PairKind::bipartite;
  points_ = spec.n + (bip ? spec.m : 0);
  for (const PairId& p : all_pairs(spec.kind, spec.n, spec.m))
    endpoints_.emplace_back(p.i - 1, bip ? spec.n + p.j - 1 : p.j - 1);

  int prev_rep = -1;
  for (const auto& cls : spec.classes) {
    const int rep = pair_index(spec, cls.front());
    if (prev_rep >= 0) strict_.emplace_back(prev_rep, rep);
    for (std::size_t k = 1; k < cls.size(); ++k)
      equal_.emplace_back(pair_index(spec, cls[k - 1]), pair_index(spec, cls[k]));
    prev_rep = rep;
  }
  floor_pair_ = pair_index(spec, spec.classes.front().front());
}

double StressObjective::evaluate(const Eigen::MatrixXd& X, Eigen::MatrixXd* grad) const {
  const std::size_t count = endpoints_.size();
  thread_local std::vector<double> s;
  thread_local std::vector<double> w;
  s.assign(count, 0.0);
  double mean = 0.0;
  for (std::size_t p = 0; p < count; ++p) {
    s[p] = (X.row(endpoints_[p].first) - X.row(endpoints_[p].second)).squaredNorm();
    mean += s[p];
  }
  mean /= static_cast<double>(count);
  if (grad) grad->setZero(X.rows(), X.cols());
  if (!(mean > 0.0) || !std::isfinite(mean)) return std::numeric_limits<double>::infinity();

  for (double& v : s) v /= mean;
  w.assign(count, 0.0);  // dL / d(normalised s)
  double loss = 0.0;
  for (const auto& [a, b] : strict_) {
    const double t = margin_ + s[static_cast<std::size_t>(a)] - s[static_cast<std::size_t>(b)];
    if (t > 0.0) {
      loss += t * t;
      w[static_cast<std::size_t>(a)] += 2.0 * t;
      w[static_cast<std::size_t>(b)] -= 2.0 * t;
    }
  }
  for (const auto& [a, b] : equal_) {
    const double t = s[static_cast<std::size_t>(a)] - s[static_cast<std::size_t>(b)];
    loss += t * t;
    w[static_cast<std::size_t>(a)] += 2.0 * t;
    w[static_cast<std::size_t>(b)] -= 2.0 * t;
  }
  {
    const double t = margin_ - s[static_cast<std::size_t>(floor_pair_)];
    if (t > 0.0) {
      loss += t * t;
      w[static_cast<std::size_t>(floor_pair_)] -= 2.0 * t;
    }
  }
  if (!grad) return loss;

  // through the normalisation: d s_hat_q / d s_p = (delta_pq - s_hat_q / count) / mean
  double coupling = 0.0;
  for (std::size_t q = 0; q < count; ++q) coupling += w[q] * s[q];
  coupling /= static_cast<double>(count);
  for (std::size_t p = 0; p < count; ++p) {
    const double dp = (w[p] - coupling) / mean;
    if (dp == 0.0) continue;
    const auto [u, v] = endpoints_[p];
    const Eigen::RowVectorXd diff = 2.0 * dp * (X.row(u) - X.row(v));
    grad->row(u) += diff;
    grad->row(v) -= diff;
  }
  return loss;
}

Eigen::MatrixXd stack_points(const PointConfig& config) {
  if (!config.Q) return config.P;
  Eigen::MatrixXd X(config.P.rows() + config.Q->rows(), config.dim);
  X << config.P, *config.Q;
  return X;
}

PointConfig unstack_points(const Eigen::MatrixXd& X, const OrderSpec& spec) {
  PointConfig config;
  config.dim = static_cast<int>(X.cols());
  config.P = X.topRows(spec.n);
  if (spec.kind == PairKind::bipartite) config.Q = X.bottomRows(spec.m);
  return config;
}

StressResult stress_loss(const OrderSpec& spec, const PointConfig& config, double margin) {
  check_shape(config);
  const StressObjective objective(spec, margin);
  const Eigen::MatrixXd X = stack_points(config);
  if (X.rows() != objective.point_count())
    throw Error(ErrorCode::ShapeMismatch, "configuration does not match the order's shape");
  Eigen::MatrixXd grad;
  StressResult result;
  result.loss = objective.evaluate(X, &grad);
  result.grad_P = grad.topRows(spec.n);
  if (spec.kind == PairKind::bipartite) result.grad_Q = grad.bottomRows(spec.m);
  return result;
}

// ---------------------------------------------------------------------------

void check_config(const FalsifierConfig& cfg) {
  if (cfg.dim < 1) throw Error(ErrorCode::BadConfig, "dim must be >= 1");
  if (cfg.restarts < 1) throw Error(ErrorCode::BadConfig, "restarts must be >= 1");
  if (cfg.iters < 1) throw Error(ErrorCode::BadConfig, "iters must be >= 1");
  if (!(cfg.margin > 0.0)) throw Error(ErrorCode::BadConfig, "margin must be > 0");
  if (!(cfg.backtrack > 0.0 && cfg.backtrack < 1.0) || !(cfg.initial_step > 0.0))
    throw Error(ErrorCode::BadConfig, "bad line-search parameters");
}

namespace {

struct RestartResult {
  double loss = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd X;
};

RestartResult descend(const StressObjective& objective, const FalsifierConfig& cfg, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  Eigen::MatrixXd X(objective.point_count(), cfg.dim);
  for (Eigen::Index r = 0; r < X.rows(); ++r)
    for (Eigen::Index c = 0; c < X.cols(); ++c) X(r, c) = normal(gen);

  Eigen::MatrixXd grad;
  Eigen::MatrixXd trial;
  double loss = objective.evaluate(X, &grad);
  for (int it = 0; it < cfg.iters && loss >= cfg.stop_loss; ++it) {
    const double slope = grad.squaredNorm();
    if (slope == 0.0) break;
    double step = cfg.initial_step;
    bool moved = false;
    for (int k = 0; k < cfg.max_backtracks; ++k, step *= cfg.backtrack) {
      trial = X - step * grad;
      const double next = objective.evaluate(trial, nullptr);
      if (next <= loss - cfg.armijo * step * slope) {
        X.swap(trial);
        loss = objective.evaluate(X, &grad);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return {loss, std::move(X)};
}

Eigen::MatrixXd normalise(const Eigen::MatrixXd& X, const OrderSpec& spec) {
  const PointConfig raw = unstack_points(X, spec);
  const Eigen::MatrixXd d = distances_of(raw);
  double mean_sq = 0.0;
  int count = 0;
  for (const PairId& p : all_pairs(spec.kind, spec.n, spec.m)) {
    mean_sq += d(p.i - 1, p.j - 1) * d(p.i - 1, p.j - 1);
    ++count;
  }
  mean_sq /= count;
  const Eigen::RowVectorXd centre = X.colwise().mean();
  Eigen::MatrixXd out = X.rowwise() - centre;
  if (mean_sq > 0.0) out /= std::sqrt(mean_sq);
  return out;
}

// Gauss-Newton with minimum-norm steps on the within-class equalities only.
// Descent leaves them at ~sqrt(loss); a genuine realization nearby is reached
// to rounding, while a near miss of an impossible order is not.
bool polish_equalities(Eigen::MatrixXd& X, const std::vector<std::pair<int, int>>& endpoints,
                       const std::vector<std::pair<int, int>>& equal) {
  if (equal.empty()) return true;
  const Eigen::Index d = X.cols();
  const auto rows = static_cast<Eigen::Index>(equal.size());
  Eigen::VectorXd r(rows);
  Eigen::MatrixXd J(rows, X.rows() * d);
  auto sq = [&](int p) {
    const auto [u, v] = endpoints[static_cast<std::size_t>(p)];
    return (X.row(u) - X.row(v)).squaredNorm();
  };
  for (int it = 0; it < 30; ++it) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < rows; ++k) {
      const auto [a, b] = equal[static_cast<std::size_t>(k)];
      r(k) = sq(a) - sq(b);
      worst = std::max(worst, std::abs(r(k)));
    }
    if (worst <= 1e-14) return true;
    J.setZero();
    for (Eigen::Index k = 0; k < rows; ++k) {
      const auto [a, b] = equal[static_cast<std::size_t>(k)];
      for (const auto& [p, sign] : {std::pair{a, 1.0}, std::pair{b, -1.0}}) {
        const auto [u, v] = endpoints[static_cast<std::size_t>(p)];
        const Eigen::RowVectorXd g = 2.0 * sign * (X.row(u) - X.row(v));
        J.block(k, u * d, 1, d) += g;
        J.block(k, v * d, 1, d) -= g;
      }
    }
    const Eigen::VectorXd step = J.completeOrthogonalDecomposition().solve(-r);
    if (!step.allFinite()) return false;
    for (Eigen::Index u = 0; u < X.rows(); ++u) X.row(u) += step.segment(u * d, d).transpose();
  }
  return false;
}

}  // namespace

FalsifierReport falsify(const OrderSpec& spec, const FalsifierConfig& cfg) {
  check_config(cfg);
  const StressObjective objective(spec, cfg.margin);

  std::vector<RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers =
      std::min(cfg.restarts, cfg.threads > 0 ? cfg.threads : static_cast<int>(hw));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < cfg.restarts; r = next++)
      results[static_cast<std::size_t>(r)] = descend(objective, cfg, r);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  FalsifierReport report;
  report.dim = cfg.dim;
  for (const auto& r : results) report.per_restart_losses.push_back(r.loss);

  std::vector<int> by_loss(results.size());
  std::iota(by_loss.begin(), by_loss.end(), 0);
  std::stable_sort(by_loss.begin(), by_loss.end(), [&](int a, int b) {
    return results[static_cast<std::size_t>(a)].loss < results[static_cast<std::size_t>(b)].loss;
  });

  report.best_restart = by_loss.front();
  const auto& first = results[static_cast<std::size_t>(report.best_restart)];
  report.best_loss = first.loss;
  report.best_config = unstack_points(normalise(first.X, spec), spec);
  for (int r : by_loss) {
    const auto& res = results[static_cast<std::size_t>(r)];
    if (!(res.loss < cfg.feasible_loss)) break;
    Eigen::MatrixXd X = normalise(res.X, spec);
    if (!polish_equalities(X, objective.endpoints(), objective.equalities())) continue;
    X = normalise(X, spec);
    const PointConfig candidate = unstack_points(X, spec);
    if (verify(candidate, spec, cfg.verify_tol).match) {
      report.feasible = true;
      report.best_restart = r;
      report.best_loss = objective.evaluate(X, nullptr);
      report.best_config = candidate;
      break;
    }
  }
  return report;
}

}  // namespace ordist
