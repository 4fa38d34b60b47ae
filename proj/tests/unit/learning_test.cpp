#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bnlf/error.hpp"
#include "bnlf/learning.hpp"
#include "bnlf/sentiment.hpp"

namespace bnlf {
namespace {

const std::vector<std::string> kStates{"negative", "neutral", "positive"};

NetworkSkeleton single() { return NetworkSkeleton::build({{"S", kStates}}, {}); }

NetworkSkeleton pair() {
  return NetworkSkeleton::build({{"P", {"a", "b"}}, {"S", kStates}}, {{"P", "S"}});
}

TrainingTable random_table(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> p(0, 1), s(0, 2);
  TrainingTable t{{"P", "S"}, {}};
  for (std::size_t i = 0; i < n; ++i) t.rows.push_back({p(rng) ? "b" : "a", kStates[static_cast<std::size_t>(s(rng))]});
  return t;
}

TEST(Learning, ParentlessLaplaceByHand) {
  const TrainingTable data{{"S"}, {{"negative"}, {"negative"}, {"positive"}}};
  const auto net = fit_cpts(single(), data, SmoothingConfig::laplace(1.0));
  const auto row = net.cpt_row("S", {});
  // counts (2, 0, 1) + 1 each over 3 + 3
  EXPECT_DOUBLE_EQ(row[0], 3.0 / 6);
  EXPECT_DOUBLE_EQ(row[1], 1.0 / 6);
  EXPECT_DOUBLE_EQ(row[2], 2.0 / 6);
  EXPECT_NEAR(row[1], 0.1667, 5e-5);
  EXPECT_EQ(net.cpt(0).counts, (std::vector<std::vector<std::uint64_t>>{{2, 0, 1}}));
  EXPECT_EQ(net.cpt(0).alpha, 1.0);
}

TEST(Learning, UnseenParentConfigurationIsUniform) {
  const TrainingTable data{{"P", "S"}, {{"a", "negative"}, {"a", "positive"}}};
  const auto net = fit_cpts(pair(), data, {});
  for (double p : net.cpt_row("S", {{"P", "b"}})) EXPECT_DOUBLE_EQ(p, 1.0 / 3);
}

TEST(Learning, SmoothedCountsMatchDisagreementRow) {
  // counts (0, 7, 12) under one parent configuration
  TrainingTable data{{"P", "S"}, {}};
  for (int i = 0; i < 7; ++i) data.rows.push_back({"a", "neutral"});
  for (int i = 0; i < 12; ++i) data.rows.push_back({"a", "positive"});
  const auto net = fit_cpts(pair(), data, {});
  const auto row = net.cpt_row("S", {{"P", "a"}});
  EXPECT_DOUBLE_EQ(row[0], 1.0 / 22);
  EXPECT_DOUBLE_EQ(row[1], 8.0 / 22);
  EXPECT_DOUBLE_EQ(row[2], 13.0 / 22);
  EXPECT_NEAR(row[0], 0.0455, 5e-5);
  EXPECT_NEAR(row[1], 0.3636, 5e-5);
  EXPECT_NEAR(row[2], 0.5909, 5e-5);
}

TEST(Learning, Errors) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code([] { fit_cpts(single(), TrainingTable{{"S"}, {}}, {}); }), ErrorCode::EmptyTrainingTable);
  EXPECT_EQ(code([] { fit_cpts(single(), TrainingTable{{"S"}, {{"bullish"}}}, {}); }), ErrorCode::UnknownStateValue);
  EXPECT_EQ(code([] { fit_cpts(pair(), TrainingTable{{"S"}, {{"neutral"}}}, {}); }), ErrorCode::StructureMismatch);
  EXPECT_EQ(code([] { fit_cpts(single(), TrainingTable{{"S"}, {{"neutral"}}}, SmoothingConfig::laplace(0.0)); }),
            ErrorCode::InvalidSmoothing);
  EXPECT_EQ(code([] { merge_counts(CountTable::zeros(single()), CountTable::zeros(pair())); }),
            ErrorCode::StructureMismatch);
}

TEST(Learning, EquivalentSampleSizeSplitsAcrossCells) {
  const auto s = pair();
  const auto cfg = SmoothingConfig::equivalent_sample_size(50.0);
  EXPECT_DOUBLE_EQ(cfg.alpha_for(s, 0), 50.0 / 2);        // root P: 1 row x 2 states
  EXPECT_DOUBLE_EQ(cfg.alpha_for(s, 1), 50.0 / (2 * 3));  // S: 2 rows x 3 states
  const auto net = fit_cpts(s, TrainingTable{{"P", "S"}, {{"a", "negative"}}}, cfg);
  EXPECT_DOUBLE_EQ(net.cpt(1).alpha, 50.0 / 6);
}

TEST(Learning, MergeAddsCellWise) {
  const auto s = single();
  const auto a = count_records(s, {{"S"}, {{"negative"}, {"negative"}, {"positive"}}});
  const auto b = count_records(s, {{"S"}, {{"negative"}, {"neutral"}}});
  const auto m = merge_counts(a, b);
  EXPECT_EQ(m.counts()[0][0], (std::vector<std::uint64_t>{3, 1, 1}));
  EXPECT_EQ(m.records(), 5u);
  EXPECT_EQ(merge_counts(a, CountTable::zeros(s)), a);
}

TEST(Learning, FitOnMergedCountsEqualsFitOnConcatenation) {
  std::mt19937_64 rng(42);
  const auto s = pair();
  for (int t = 0; t < 20; ++t) {
    const auto data = random_table(rng, 50);
    std::uniform_int_distribution<std::size_t> cut(1, 49);
    const std::size_t k = cut(rng);
    TrainingTable left{data.columns, {data.rows.begin(), data.rows.begin() + static_cast<std::ptrdiff_t>(k)}};
    TrainingTable right{data.columns, {data.rows.begin() + static_cast<std::ptrdiff_t>(k), data.rows.end()}};
    const auto merged = fit_from_counts(s, merge_counts(count_records(s, left), count_records(s, right)), {});
    const auto direct = fit_cpts(s, data, {});
    EXPECT_EQ(merged.cpts(), direct.cpts());
  }
}

TEST(Learning, RowsSumToOneTightly) {
  std::mt19937_64 rng(1);
  for (double alpha : {1e-3, 0.5, 1.0, 7.0}) {
    const auto net = fit_cpts(pair(), random_table(rng, 37), SmoothingConfig::laplace(alpha));
    for (const auto& c : net.cpts())
      for (const auto& row : c.rows) {
        double sum = 0.0;
        for (double p : row) sum += p;
        EXPECT_NEAR(sum, 1.0, 1e-12);
      }
  }
}

TEST(Learning, AppendingARecordMovesItsRowMonotonically) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    auto data = random_table(rng, 20);
    const auto before = fit_cpts(pair(), data, {});
    const std::string parent = t % 2 ? "a" : "b";
    const std::size_t y = static_cast<std::size_t>(t % 3);
    data.rows.push_back({parent, kStates[y]});
    const auto after = fit_cpts(pair(), data, {});
    const auto r0 = before.cpt_row("S", {{"P", parent}});
    const auto r1 = after.cpt_row("S", {{"P", parent}});
    for (std::size_t s = 0; s < 3; ++s) {
      if (s == y) EXPECT_GT(r1[s], r0[s]);
      else EXPECT_LT(r1[s], r0[s]);
    }
  }
}

TEST(Learning, HugeAlphaApproachesUniform) {
  std::mt19937_64 rng(2);
  const auto net = fit_cpts(pair(), random_table(rng, 100), SmoothingConfig::laplace(1e9));
  for (const auto& row : net.cpt(1).rows)
    for (double p : row) EXPECT_NEAR(p, 1.0 / 3, 1e-6);
}

TEST(Learning, RowOrderDoesNotMatter) {
  std::mt19937_64 rng(3);
  auto data = random_table(rng, 60);
  const auto a = fit_cpts(pair(), data, {});
  std::shuffle(data.rows.begin(), data.rows.end(), rng);
  EXPECT_EQ(fit_cpts(pair(), data, {}).cpts(), a.cpts());
}

}  // namespace
}  // namespace bnlf
