#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "ordist/order_model.hpp"
#include "support/random_specs.hpp"

namespace ordist {
namespace {

OrderSpec complete(int n, std::vector<PairClass> classes) {
  return OrderSpec{PairKind::complete, n, 0, std::move(classes)};
}

// (1,2) < (2,3) = (1,3) < (3,4) = (2,4) < (1,4)
OrderSpec figure1() {
  return complete(4, {{{1, 2}}, {{1, 3}, {2, 3}}, {{2, 4}, {3, 4}}, {{1, 4}}});
}

// (2,1) < (2,2) = (1,1) = (3,1) = (3,2) < (1,2) on B_{3,2}
OrderSpec figure2() {
  return OrderSpec{PairKind::bipartite, 3, 2, {{{2, 1}}, {{1, 1}, {2, 2}, {3, 1}, {3, 2}}, {{1, 2}}}};
}

TEST(PairIndexing, CompleteIsLexicographic) {
  const auto pairs = all_pairs(PairKind::complete, 5, 0);
  ASSERT_EQ(pairs.size(), 10u);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    EXPECT_EQ(pair_index(PairKind::complete, 5, 0, pairs[k]), static_cast<int>(k));
    if (k) EXPECT_LT(pairs[k - 1], pairs[k]);
  }
  EXPECT_EQ(pairs.front(), (PairId{1, 2}));
  EXPECT_EQ(pairs.back(), (PairId{4, 5}));
}

TEST(PairIndexing, BipartiteIsRowMajor) {
  const auto pairs = all_pairs(PairKind::bipartite, 2, 3);
  ASSERT_EQ(pairs.size(), 6u);
  EXPECT_EQ(pairs[3], (PairId{2, 1}));
  EXPECT_EQ(pair_index(PairKind::bipartite, 2, 3, {2, 3}), 5);
}

TEST(Validate, AcceptsPartitionOfD3) {
  EXPECT_FALSE(validate(complete(3, {{{1, 2}}, {{1, 3}}, {{2, 3}}})).has_value());
}

TEST(Validate, ReportsMissingPair) {
  const auto v = validate(complete(3, {{{1, 2}}, {{1, 3}}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, ErrorCode::MissingPair);
  EXPECT_EQ(v->pair, (PairId{2, 3}));
}

TEST(Validate, ReportsDuplicatePair) {
  const auto v = validate(complete(
      4, {{{1, 2}}, {{1, 2}}, {{1, 3}}, {{1, 4}}, {{2, 3}}, {{2, 4}}, {{3, 4}}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, ErrorCode::DuplicatePair);
  EXPECT_EQ(v->pair, (PairId{1, 2}));
}

TEST(Validate, ReportsEmptyClassAndOutOfRange) {
  auto v = validate(complete(3, {{{1, 2}, {1, 3}, {2, 3}}, {}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, ErrorCode::EmptyClass);

  v = validate(complete(3, {{{1, 2}, {1, 3}, {2, 4}}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, ErrorCode::IndexOutOfRange);

  // bipartite column beyond m
  v = validate(OrderSpec{PairKind::bipartite, 1, 1, {{{1, 2}}}});
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->code, ErrorCode::IndexOutOfRange);
}

TEST(Validate, RequireValidThrowsWithCode) {
  try {
    require_valid(complete(3, {{{1, 2}}, {{1, 3}}}));
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingPair);
  }
}

TEST(RankOf, FigureExamples) {
  EXPECT_EQ(rank_of(figure1(), {1, 3}), 2);
  EXPECT_EQ(rank_of(figure1(), {1, 4}), 4);
  EXPECT_EQ(rank_of(figure2(), {1, 2}), 3);
  EXPECT_EQ(rank_of(figure2(), {2, 1}), 1);
}

TEST(RankOf, SingleClassIsRankOne) {
  const OrderSpec one = complete(4, {all_pairs(PairKind::complete, 4, 0)});
  for (const PairId& p : all_pairs(PairKind::complete, 4, 0)) EXPECT_EQ(rank_of(one, p), 1);
}

TEST(RankOf, UnknownPairThrows) {
  try {
    rank_of(figure1(), {1, 5});
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownPair);
  }
}

TEST(IsLinear, Examples) {
  EXPECT_FALSE(is_linear(figure1()));
  EXPECT_TRUE(is_linear(complete(3, {{{1, 2}}, {{1, 3}}, {{2, 3}}})));
  EXPECT_FALSE(is_linear(complete(4, {all_pairs(PairKind::complete, 4, 0)})));
}

TEST(Canonicalize, NormalizesReversedPairsAndSortsClasses) {
  const OrderSpec raw = complete(3, {{{3, 2}, {2, 1}}, {{1, 3}}});
  const OrderSpec canon = canonicalize(raw);
  ASSERT_EQ(canon.classes.size(), 2u);
  EXPECT_EQ(canon.classes[0], (PairClass{{1, 2}, {2, 3}}));
  EXPECT_EQ(canon.classes[1], (PairClass{{1, 3}}));
}

TEST(Transpose, SwapsRoles) {
  const OrderSpec t = transpose(figure2());
  EXPECT_EQ(t.n, 2);
  EXPECT_EQ(t.m, 3);
  EXPECT_FALSE(validate(t).has_value());
  EXPECT_EQ(rank_of(t, {2, 1}), 3);
  EXPECT_EQ(rank_of(t, {1, 2}), 1);
  EXPECT_EQ(transpose(t), figure2());
}

OrderSpec linear_from(int n, const std::vector<PairId>& chain) {
  OrderSpec spec = complete(n, {});
  for (const PairId& p : chain) spec.classes.push_back({p});
  return spec;
}

TEST(Relabel, MinimumAtOneTwoOnFourPoints) {
  const OrderSpec spec = linear_from(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  const Relabeling r = relabel_min_to_last(spec);
  EXPECT_EQ(r.permutation, (std::vector<int>{3, 4, 1, 2}));
  EXPECT_EQ(r.spec.classes.front(), (PairClass{{3, 4}}));
}

TEST(Relabel, IdentityWhenMinimumAlreadyLast) {
  const OrderSpec spec = linear_from(4, {{3, 4}, {1, 2}, {1, 3}, {2, 3}, {2, 4}, {1, 4}});
  const Relabeling r = relabel_min_to_last(spec);
  EXPECT_EQ(r.permutation, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(r.spec, canonicalize(spec));
}

// Brute-force oracle: relabel every pair by hand, then re-sort all pairs by
// their original rank and compare the resulting chain.
TEST(Relabel, FivePointsMinimumTwoFour) {
  std::mt19937_64 gen(7);
  std::vector<PairId> rest;
  for (const PairId& p : all_pairs(PairKind::complete, 5, 0))
    if (p != PairId{2, 4}) rest.push_back(p);
  std::shuffle(rest.begin(), rest.end(), gen);
  std::vector<PairId> chain{{2, 4}};
  chain.insert(chain.end(), rest.begin(), rest.end());
  const OrderSpec spec = linear_from(5, chain);

  const Relabeling r = relabel_min_to_last(spec);
  EXPECT_EQ(r.permutation[1], 4);
  EXPECT_EQ(r.permutation[3], 5);
  EXPECT_EQ(r.spec.classes.front(), (PairClass{{4, 5}}));

  std::vector<std::pair<int, PairId>> resorted;
  for (const PairId& p : all_pairs(PairKind::complete, 5, 0))
    resorted.emplace_back(rank_of(spec, p),
                          complete_pair(r.permutation[p.i - 1], r.permutation[p.j - 1]));
  std::sort(resorted.begin(), resorted.end());
  ASSERT_EQ(r.spec.classes.size(), resorted.size());
  for (std::size_t k = 0; k < resorted.size(); ++k)
    EXPECT_EQ(r.spec.classes[k], (PairClass{resorted[k].second}));
}

TEST(Relabel, RejectsPreorderAndBipartite) {
  try {
    relabel_min_to_last(figure1());
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotLinear);
  }
  try {
    relabel_min_to_last(OrderSpec{PairKind::bipartite, 1, 2, {{{1, 1}}, {{1, 2}}}});
    FAIL() << "expected a throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotComplete);
  }
}

// ---------------------------------------------------------------------------
// properties over random specs

TEST(OrderModelProperties, ValidateAcceptsExactlyPartitions) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);
    OrderSpec spec = testing::random_complete(gen, n);
    EXPECT_FALSE(validate(spec).has_value());

    const auto k = static_cast<std::size_t>(gen() % spec.classes.size());
    OrderSpec dropped = spec;
    const PairId lost = dropped.classes[k].back();
    dropped.classes[k].pop_back();
    if (dropped.classes[k].empty()) dropped.classes.erase(dropped.classes.begin() + static_cast<long>(k));
    if (dropped.classes.empty()) continue;
    const auto v = validate(dropped);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->code, ErrorCode::MissingPair);
    EXPECT_EQ(v->pair, lost);

    OrderSpec doubled = spec;
    doubled.classes.back().push_back(spec.classes.front().front());
    const auto w = validate(canonicalize(doubled));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->code, ErrorCode::DuplicatePair);
  }
}

TEST(OrderModelProperties, RankConstantOnClassesAndIncreasing) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const bool bip = trial % 2;
    const OrderSpec spec = bip ? testing::random_bipartite(gen, 1 + trial % 5, 1 + trial % 4)
                               : testing::random_complete(gen, 2 + trial % 7);
    const std::vector<int> table = rank_table(spec);
    for (int c = 0; c < spec.class_count(); ++c)
      for (const PairId& p : spec.classes[static_cast<std::size_t>(c)]) {
        EXPECT_EQ(rank_of(spec, p), c + 1);
        EXPECT_EQ(table[static_cast<std::size_t>(pair_index(spec, p))], c + 1);
      }
  }
}

TEST(OrderModelProperties, RelabelPreservesOrderType) {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 6;
    const OrderSpec spec = testing::random_complete(gen, n, true);
    const Relabeling r = relabel_min_to_last(spec);
    EXPECT_FALSE(validate(r.spec).has_value());
    EXPECT_EQ(r.spec.classes.front(), (PairClass{{n - 1, n}}));
    std::set<int> image(r.permutation.begin(), r.permutation.end());
    EXPECT_EQ(image.size(), static_cast<std::size_t>(n));
    const auto pairs = all_pairs(PairKind::complete, n, 0);
    auto mapped = [&](PairId p) {
      return complete_pair(r.permutation[p.i - 1], r.permutation[p.j - 1]);
    };
    for (const PairId& a : pairs)
      for (const PairId& b : pairs)
        EXPECT_EQ(rank_of(spec, a) < rank_of(spec, b),
                  rank_of(r.spec, mapped(a)) < rank_of(r.spec, mapped(b)));
    EXPECT_EQ(apply_permutation(spec, r.permutation), r.spec);
  }
}

}  // namespace
}  // namespace ordist
