#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bnlf/error.hpp"
#include "bnlf/influence.hpp"
#include "oracles.hpp"

namespace bnlf {
namespace {

Network copy_net() {
  return Network::build({{"X", {"0", "1"}}, {"Y", {"0", "1"}}}, {{"X", "Y"}},
                        {{"X", {}, {{0.5, 0.5}}}, {"Y", {"X"}, {{1.0, 0.0}, {0.0, 1.0}}}});
}

TEST(Influence, DeterministicCopyScoresOne) {
  const auto net = copy_net();
  for (auto m : {DistanceMetric::Euclidean, DistanceMetric::Hellinger, DistanceMetric::MaxAbs})
    EXPECT_NEAR(arc_strength(net, "X", "Y", {m, Aggregation::Average, ConfigWeighting::Uniform}), 1.0, 1e-12);
}

TEST(Influence, IdenticalRowsScoreZero) {
  const auto net = Network::build({{"X", {"0", "1", "2"}}, {"Y", {"0", "1"}}}, {{"X", "Y"}},
                                  {{"X", {}, {{0.2, 0.3, 0.5}}}, {"Y", {"X"}, {{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}}}});
  EXPECT_EQ(arc_strength(net, "X", "Y"), 0.0);
  const auto report = influence_report(net);
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_EQ(report.entries[0].strength, 0.0);
}

TEST(Influence, EuclideanHandExample) {
  // rows (0.9, 0.1) and (0.6, 0.4): sqrt(0.09 + 0.09) / sqrt(2) = 0.3
  const auto net = Network::build({{"X", {"0", "1"}}, {"Y", {"0", "1"}}}, {{"X", "Y"}},
                                  {{"X", {}, {{0.5, 0.5}}}, {"Y", {"X"}, {{0.9, 0.1}, {0.6, 0.4}}}});
  EXPECT_NEAR(arc_strength(net, "X", "Y"), 0.3, 1e-12);
  EXPECT_NEAR(arc_strength(net, "X", "Y", {DistanceMetric::MaxAbs}), 0.3, 1e-12);
  const double hellinger =
      std::sqrt((std::pow(std::sqrt(0.9) - std::sqrt(0.6), 2) + std::pow(std::sqrt(0.1) - std::sqrt(0.4), 2)) / 2);
  EXPECT_NEAR(arc_strength(net, "X", "Y", {DistanceMetric::Hellinger}), hellinger, 1e-12);
}

TEST(Influence, AveragesOverPairsAndOtherParentConfigs) {
  // Y has parents (X, Z). For Z=0 the X-rows differ by 0.3 (Euclid), for Z=1 they are equal.
  const auto net = Network::build(
      {{"X", {"0", "1"}}, {"Z", {"0", "1"}}, {"Y", {"0", "1"}}}, {{"X", "Y"}, {"Z", "Y"}},
      {{"X", {}, {{0.5, 0.5}}},
       {"Z", {}, {{0.9, 0.1}}},
       {"Y", {"X", "Z"}, {{0.9, 0.1}, {0.5, 0.5}, {0.6, 0.4}, {0.5, 0.5}}}});
  EXPECT_NEAR(arc_strength(net, "X", "Y"), 0.15, 1e-12);
  EXPECT_NEAR(arc_strength(net, "X", "Y", {DistanceMetric::Euclidean, Aggregation::Maximum}), 0.3, 1e-12);
  // Marginal weighting: P(Z=0) = 0.9
  EXPECT_NEAR(arc_strength(net, "X", "Y", {DistanceMetric::Euclidean, Aggregation::Average, ConfigWeighting::Marginal}),
              0.9 * 0.3, 1e-12);
}

TEST(Influence, NoSuchArc) {
  try {
    arc_strength(copy_net(), "Y", "X");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSuchArc);
  }
}

TEST(Influence, ReportIsSortedAndCoversEveryArc) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto net = testing::random_network(rng);
    for (auto m : {DistanceMetric::Euclidean, DistanceMetric::Hellinger, DistanceMetric::MaxAbs}) {
      const auto avg = influence_report(net, {m, Aggregation::Average});
      const auto max = influence_report(net, {m, Aggregation::Maximum});
      ASSERT_EQ(avg.entries.size(), net.arcs().size());
      for (std::size_t i = 0; i < avg.entries.size(); ++i) {
        EXPECT_GE(avg.entries[i].strength, 0.0);
        EXPECT_LE(avg.entries[i].strength, 1.0);
        if (i > 0) EXPECT_GE(avg.entries[i - 1].strength, avg.entries[i].strength);
      }
      for (const auto& a : net.arcs()) {
        const double s_avg = arc_strength(net, a.from, a.to, {m, Aggregation::Average});
        const double s_max = arc_strength(net, a.from, a.to, {m, Aggregation::Maximum});
        EXPECT_GE(s_max + 1e-15, s_avg);
      }
      (void)max;
    }
  }
}

TEST(Influence, OtherParentOrderDoesNotMatter) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  auto row3 = [&] {
    std::vector<double> r{u(rng), u(rng), u(rng)};
    const double s = r[0] + r[1] + r[2];
    for (double& v : r) v /= s;
    return r;
  };
  const std::vector<std::string> st{"a", "b", "c"};
  const std::vector<std::string> st2{"a", "b"};
  // Y parents (X, Z, W) vs (X, W, Z): same distribution, permuted row layout.
  std::vector<std::vector<double>> rows_xzw(3 * 2 * 3);
  for (auto& r : rows_xzw) r = row3();
  std::vector<std::vector<double>> rows_xwz(rows_xzw.size());
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t z = 0; z < 2; ++z)
      for (std::size_t w = 0; w < 3; ++w) rows_xwz[x * 6 + w * 2 + z] = rows_xzw[x * 6 + z * 3 + w];

  const std::vector<StateSpace> nodes{{"X", st}, {"Z", st2}, {"W", st}, {"Y", st}};
  const std::vector<Cpt> roots{{"X", {}, {{0.2, 0.3, 0.5}}}, {"Z", {}, {{0.4, 0.6}}}, {"W", {}, {{0.1, 0.1, 0.8}}}};
  auto with = [&](std::vector<std::string> parents, std::vector<std::vector<double>> rows, std::vector<Arc> arcs) {
    auto cpts = roots;
    cpts.push_back({"Y", std::move(parents), std::move(rows)});
    return Network::build(nodes, std::move(arcs), std::move(cpts));
  };
  const auto a = with({"X", "Z", "W"}, rows_xzw, {{"X", "Y"}, {"Z", "Y"}, {"W", "Y"}});
  const auto b = with({"X", "W", "Z"}, rows_xwz, {{"X", "Y"}, {"W", "Y"}, {"Z", "Y"}});
  for (const std::string p : {"X", "Z", "W"})
    for (auto agg : {Aggregation::Average, Aggregation::Maximum})
      for (auto w : {ConfigWeighting::Uniform, ConfigWeighting::Marginal}) {
        const InfluenceSettings s{DistanceMetric::Euclidean, agg, w};
        EXPECT_NEAR(arc_strength(a, p, "Y", s), arc_strength(b, p, "Y", s), 1e-12);
      }
}

TEST(Influence, ParseNames) {
  EXPECT_EQ(parse_metric("hellinger"), DistanceMetric::Hellinger);
  EXPECT_EQ(parse_aggregation("maximum"), Aggregation::Maximum);
  EXPECT_THROW(parse_metric("cosine"), Error);
}

TEST(Influence, JsonAndTableEchoSettings) {
  const auto report = influence_report(copy_net(), {DistanceMetric::MaxAbs, Aggregation::Maximum});
  const auto j = influence_to_json(report);
  EXPECT_EQ(j["settings"]["metric"], "max_abs");
  EXPECT_EQ(j["settings"]["aggregation"], "maximum");
  EXPECT_EQ(j["entries"][0]["strength"], 1.0);
  EXPECT_NE(influence_to_table(report).find("1.0000"), std::string::npos);
  EXPECT_EQ(influence_to_csv(report), "Parent,Child,Strength\nX,Y,1.0000\n");
}

}  // namespace
}  // namespace bnlf
