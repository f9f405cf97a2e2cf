#include "ordist/verifier.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ordist/error.hpp"

namespace ordist {

namespace {

std::vector<double> pair_distances(const PointConfig& config, const std::vector<PairId>& pairs) {
  std::vector<double> out;
  out.reserve(pairs.size());
  const Eigen::MatrixXd d = distances_of(config);
  for (const PairId& p : pairs) out.push_back(d(p.i - 1, p.j - 1));
  return out;
}

}  // namespace

InducedOrder induced_preorder(const PointConfig& config, const Tolerances& tol) {
  check_shape(config);
  const PairKind kind = config.bipartite() ? PairKind::bipartite : PairKind::complete;
  const auto pairs = all_pairs(kind, config.n(), config.m());
  const auto dist = pair_distances(config, pairs);

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

  InducedOrder induced;
  induced.spec.kind = kind;
  induced.spec.n = config.n();
  induced.spec.m = config.m();
  if (order.empty()) return induced;

  const double largest = dist[order.back()];
  const double split = tol.abs + tol.rel * largest;
  double class_start = dist[order.front()];
  induced.spec.classes.push_back({pairs[order.front()]});
  for (std::size_t k = 1; k < order.size(); ++k) {
    const double prev = dist[order[k - 1]];
    const double cur = dist[order[k]];
    if (cur - prev > split) {
      induced.spread = std::max(induced.spread, prev - class_start);
      induced.gaps.push_back(cur - prev);
      induced.spec.classes.emplace_back();
      class_start = cur;
    }
    induced.spec.classes.back().push_back(pairs[order[k]]);
  }
  induced.spread = std::max(induced.spread, dist[order.back()] - class_start);
  induced.spec = canonicalize(std::move(induced.spec));
  return induced;
}

VerifyReport verify(const PointConfig& config, const OrderSpec& spec, const Tolerances& tol) {
  require_valid(spec);
  check_shape(config);
  const bool want_bipartite = spec.kind == PairKind::bipartite;
  if (config.bipartite() != want_bipartite || config.n() != spec.n ||
      (want_bipartite && config.m() != spec.m))
    throw Error(ErrorCode::ShapeMismatch, "configuration does not match the order's shape");

  const InducedOrder induced = induced_preorder(config, tol);
  VerifyReport report;
  report.match = induced.spec == canonicalize(spec);
  report.margin = induced.gaps.empty() ? std::numeric_limits<double>::infinity()
                                       : *std::min_element(induced.gaps.begin(), induced.gaps.end());

  const Eigen::MatrixXd d = distances_of(config);
  if (want_bipartite) {
    report.distinctness = d.size() ? d.minCoeff() : std::numeric_limits<double>::infinity();
  } else {
    report.distinctness = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d.rows(); ++i)
      for (Eigen::Index j = i + 1; j < d.cols(); ++j)
        report.distinctness = std::min(report.distinctness, d(i, j));
  }

  if (!report.match) {
    const auto pairs = all_pairs(spec.kind, spec.n, spec.m);
    const auto want = rank_table(spec);
    const auto got = rank_table(induced.spec);
    auto sign = [](int x) { return (x > 0) - (x < 0); };
    for (std::size_t a = 0; a < pairs.size() && !report.witness; ++a)
      for (std::size_t b = a + 1; b < pairs.size(); ++b)
        if (sign(want[a] - want[b]) != sign(got[a] - got[b])) {
          report.witness = std::make_pair(pairs[a], pairs[b]);
          break;
        }
  }
  return report;
}

}  // namespace ordist
