#ifndef ORDIST_VERIFIER_HPP
#define ORDIST_VERIFIER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "ordist/order_model.hpp"
#include "ordist/schoenberg.hpp"

namespace ordist {

struct Tolerances {
  double abs = 1e-9;
  double rel = 1e-9;
};

/// The preorder a configuration induces, recovered by splitting the sorted
/// distance sequence wherever two neighbours differ by more than
/// tol.abs + tol.rel * (largest distance).
struct InducedOrder {
  OrderSpec spec;
  std::vector<double> gaps;  // one per class boundary
  double spread = 0.0;       // largest max-min inside a class
};

InducedOrder induced_preorder(const PointConfig& config, const Tolerances& tol = {});

struct VerifyReport {
  bool match = false;
  std::optional<std::pair<PairId, PairId>> witness;
  double margin = 0.0;        // smallest induced gap; +inf with a single class
  double distinctness = 0.0;  // complete: min |p_i - p_j|; bipartite: min |p_i - q_j|
};

/// Throws Error(ShapeMismatch) when the config does not fit the spec's kind and sizes.
VerifyReport verify(const PointConfig& config, const OrderSpec& spec, const Tolerances& tol = {});

}  // namespace ordist

#endif  // ORDIST_VERIFIER_HPP
