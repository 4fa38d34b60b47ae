#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnlf/network.hpp"

namespace bnlf {

enum class DistanceMetric { Euclidean, Hellinger, MaxAbs };
enum class Aggregation { Average, Maximum };
/// How the configurations of the child's other parents are weighted when
/// averaging: uniformly, or by their marginal probability under the network.
enum class ConfigWeighting { Uniform, Marginal };

struct InfluenceSettings {
  DistanceMetric metric = DistanceMetric::Euclidean;
  Aggregation aggregation = Aggregation::Average;
  ConfigWeighting weighting = ConfigWeighting::Uniform;
};

struct InfluenceEntry {
  Arc arc;
  double strength = 0.0;
};

struct InfluenceReport {
  InfluenceSettings settings;
  std::vector<InfluenceEntry> entries;  // descending strength
};

std::string_view to_string(DistanceMetric m) noexcept;
std::string_view to_string(Aggregation a) noexcept;
std::string_view to_string(ConfigWeighting w) noexcept;
/// Throw InvalidConfig on unknown names.
DistanceMetric parse_metric(std::string_view name);
Aggregation parse_aggregation(std::string_view name);

/// Distance in [0, 1] between two distributions of equal length. Euclidean is
/// divided by sqrt(2) so two distinct one-hot rows are at distance 1.
double distribution_distance(std::span<const double> p, std::span<const double> q, DistanceMetric metric);

/// Strength of the arc parent -> child: the distance between the child's rows
/// for every unordered pair of parent states, aggregated over all pairs and
/// all configurations of the child's other parents. Throws NoSuchArc.
double arc_strength(const Network& net, std::string_view parent, std::string_view child,
                    const InfluenceSettings& settings = {});

/// One entry per arc, sorted by descending strength (declaration order among
/// ties).
InfluenceReport influence_report(const Network& net, const InfluenceSettings& settings = {});

nlohmann::json influence_to_json(const InfluenceReport& report);
std::string influence_to_table(const InfluenceReport& report);
std::string influence_to_csv(const InfluenceReport& report);

}  // namespace bnlf
