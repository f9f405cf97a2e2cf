#include "ordist/order_model.hpp"

#include <algorithm>
#include <numeric>

namespace ordist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownPair: return "UnknownPair";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::InvalidDistances: return "InvalidDistances";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimTooSmall: return "DimTooSmall";
    case ErrorCode::EpsilonExhausted: return "EpsilonExhausted";
    case ErrorCode::DegenerateHyperplane: return "DegenerateHyperplane";
    case ErrorCode::DistanceMismatch: return "DistanceMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadSize: return "BadSize";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string_view to_string(PairKind kind) {
  return kind == PairKind::complete ? "complete" : "bipartite";
}

std::string to_string(PairId pair) {
  return "(" + std::to_string(pair.i) + "," + std::to_string(pair.j) + ")";
}

PairId complete_pair(int a, int b) {
  return a < b ? PairId{a, b} : PairId{b, a};
}

int pair_count(PairKind kind, int n, int m) {
  if (kind == PairKind::complete) return n < 2 ? 0 : n * (n - 1) / 2;
  return n < 1 || m < 1 ? 0 : n * m;
}

int pair_count(const OrderSpec& spec) { return pair_count(spec.kind, spec.n, spec.m); }

namespace {

bool in_range(PairKind kind, int n, int m, PairId p) {
  if (kind == PairKind::complete) return 1 <= p.i && p.i < p.j && p.j <= n;
  return 1 <= p.i && p.i <= n && 1 <= p.j && p.j <= m;
}

}  // namespace

int pair_index(PairKind kind, int n, int m, PairId p) {
  if (kind == PairKind::complete) {
    // pairs (a, *) for a < i come first; row a holds n - a pairs
    const int before = (p.i - 1) * n - (p.i - 1) * p.i / 2;
    return before + (p.j - p.i - 1);
  }
  return (p.i - 1) * m + (p.j - 1);
}

int pair_index(const OrderSpec& spec, PairId p) {
  return pair_index(spec.kind, spec.n, spec.m, p);
}

std::vector<PairId> all_pairs(PairKind kind, int n, int m) {
  std::vector<PairId> out;
  out.reserve(static_cast<std::size_t>(pair_count(kind, n, m)));
  if (kind == PairKind::complete) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) out.push_back({i, j});
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= m; ++j) out.push_back({i, j});
  }
  return out;
}

std::optional<Violation> validate(const OrderSpec& spec) {
  const int total = pair_count(spec);
  if (total == 0) {
    return Violation{ErrorCode::BadSize, std::nullopt,
                     "pair set is empty (n=" + std::to_string(spec.n) +
                         ", m=" + std::to_string(spec.m) + ")"};
  }
  if (spec.classes.empty()) {
    return Violation{ErrorCode::EmptyClass, std::nullopt, "order has no classes"};
  }
  std::vector<char> seen(static_cast<std::size_t>(total), 0);
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    const auto& cls = spec.classes[k];
    if (cls.empty()) {
      return Violation{ErrorCode::EmptyClass, std::nullopt,
                       "class " + std::to_string(k + 1) + " is empty"};
    }
    for (const PairId& p : cls) {
      if (!in_range(spec.kind, spec.n, spec.m, p)) {
        return Violation{ErrorCode::IndexOutOfRange, p,
                         "pair " + to_string(p) + " is not in the " +
                             std::string(to_string(spec.kind)) + " pair set"};
      }
      auto& flag = seen[static_cast<std::size_t>(pair_index(spec, p))];
      if (flag) {
        return Violation{ErrorCode::DuplicatePair, p,
                         "pair " + to_string(p) + " appears more than once"};
      }
      flag = 1;
    }
  }
  const auto pairs = all_pairs(spec.kind, spec.n, spec.m);
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    if (!seen[idx]) {
      return Violation{ErrorCode::MissingPair, pairs[idx],
                       "pair " + to_string(pairs[idx]) + " is missing"};
    }
  }
  return std::nullopt;
}

void require_valid(const OrderSpec& spec) {
  if (auto v = validate(spec)) throw Error(v->code, v->message);
}

int rank_of(const OrderSpec& spec, PairId pair) {
  if (spec.kind == PairKind::complete) pair = complete_pair(pair.i, pair.j);
  for (std::size_t k = 0; k < spec.classes.size(); ++k) {
    const auto& cls = spec.classes[k];
    if (std::find(cls.begin(), cls.end(), pair) != cls.end()) return static_cast<int>(k) + 1;
  }
  throw Error(ErrorCode::UnknownPair, "pair " + to_string(pair) + " is not ranked by the order");
}

std::vector<int> rank_table(const OrderSpec& spec) {
  std::vector<int> ranks(static_cast<std::size_t>(pair_count(spec)), 0);
  for (std::size_t k = 0; k < spec.classes.size(); ++k)
    for (const PairId& p : spec.classes[k])
      ranks[static_cast<std::size_t>(pair_index(spec, p))] = static_cast<int>(k) + 1;
  return ranks;
}

bool is_linear(const OrderSpec& spec) {
  return std::all_of(spec.classes.begin(), spec.classes.end(),
                     [](const PairClass& c) { return c.size() == 1; });
}

OrderSpec canonicalize(OrderSpec spec) {
  for (auto& cls : spec.classes) {
    if (spec.kind == PairKind::complete)
      for (auto& p : cls) p = complete_pair(p.i, p.j);
    std::sort(cls.begin(), cls.end());
  }
  return spec;
}

OrderSpec apply_permutation(const OrderSpec& spec, const std::vector<int>& permutation) {
  OrderSpec out = spec;
  for (auto& cls : out.classes)
    for (auto& p : cls)
      p = complete_pair(permutation[static_cast<std::size_t>(p.i - 1)],
                        permutation[static_cast<std::size_t>(p.j - 1)]);
  return out;
}

Relabeling relabel_min_to_last(const OrderSpec& spec) {
  if (spec.kind != PairKind::complete)
    throw Error(ErrorCode::NotComplete, "relabeling needs an order on D_n");
  require_valid(spec);
  if (!is_linear(spec)) throw Error(ErrorCode::NotLinear, "relabeling needs a linear order");

  const int n = spec.n;
  const PairId lowest = spec.classes.front().front();
  // lowest.i -> n-1, lowest.j -> n, everything else keeps its relative order
  std::vector<int> perm(static_cast<std::size_t>(n), 0);
  perm[static_cast<std::size_t>(lowest.i - 1)] = n - 1;
  perm[static_cast<std::size_t>(lowest.j - 1)] = n;
  int next = 1;
  for (int i = 1; i <= n; ++i)
    if (i != lowest.i && i != lowest.j) perm[static_cast<std::size_t>(i - 1)] = next++;

  return {apply_permutation(spec, perm), std::move(perm)};
}

OrderSpec transpose(const OrderSpec& spec) {
  OrderSpec out = spec;
  std::swap(out.n, out.m);
  for (auto& cls : out.classes)
    for (auto& p : cls) std::swap(p.i, p.j);
  return out;
}

}  // namespace ordist
