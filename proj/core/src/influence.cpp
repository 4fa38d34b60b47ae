#include "bnlf/influence.hpp"

#include <algorithm>
#include <cmath>

#include "bnlf/error.hpp"
#include "bnlf/inference.hpp"
#include "bnlf/table.hpp"

namespace bnlf {

std::string_view to_string(DistanceMetric m) noexcept {
  switch (m) {
    case DistanceMetric::Euclidean: return "euclidean";
    case DistanceMetric::Hellinger: return "hellinger";
    case DistanceMetric::MaxAbs: return "max_abs";
  }
  return "?";
}

std::string_view to_string(Aggregation a) noexcept {
  return a == Aggregation::Average ? "average" : "maximum";
}

std::string_view to_string(ConfigWeighting w) noexcept {
  return w == ConfigWeighting::Uniform ? "uniform" : "marginal";
}

DistanceMetric parse_metric(std::string_view name) {
  for (auto m : {DistanceMetric::Euclidean, DistanceMetric::Hellinger, DistanceMetric::MaxAbs})
    if (to_string(m) == name) return m;
  throw Error(ErrorCode::InvalidConfig, "unknown distance metric '" + std::string(name) + "'");
}

Aggregation parse_aggregation(std::string_view name) {
  for (auto a : {Aggregation::Average, Aggregation::Maximum})
    if (to_string(a) == name) return a;
  throw Error(ErrorCode::InvalidConfig, "unknown aggregation '" + std::string(name) + "'");
}

double distribution_distance(std::span<const double> p, std::span<const double> q, DistanceMetric metric) {
  double acc = 0.0;
  switch (metric) {
    case DistanceMetric::Euclidean:
      for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - q[i]) * (p[i] - q[i]);
      return std::min(1.0, std::sqrt(acc / 2.0));
    case DistanceMetric::Hellinger:
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        acc += d * d;
      }
      return std::min(1.0, std::sqrt(acc / 2.0));
    case DistanceMetric::MaxAbs:
      for (std::size_t i = 0; i < p.size(); ++i) acc = std::max(acc, std::abs(p[i] - q[i]));
      return acc;
  }
  return 0.0;
}

double arc_strength(const Network& net, std::string_view parent, std::string_view child,
                    const InfluenceSettings& settings) {
  const auto p = net.find(parent);
  const auto c = net.find(child);
  if (!p || !c || !net.structure().has_arc(*p, *c))
    throw Error(ErrorCode::NoSuchArc, std::string(parent) + " -> " + std::string(child));

  std::vector<std::size_t> others;
  for (std::size_t q : net.parents(*c))
    if (q != *p) others.push_back(q);

  const std::size_t parent_states = net.state_count(*p);
  std::vector<std::size_t> states(net.node_count(), 0);

  double weighted_sum = 0.0;
  double weight_total = 0.0;
  double maximum = 0.0;
  for (;;) {
    double pair_sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < parent_states; ++i) {
      states[*p] = i;
      const auto row_i = net.row(*c, net.row_index(*c, states));
      for (std::size_t j = i + 1; j < parent_states; ++j) {
        states[*p] = j;
        const double d = distribution_distance(row_i, net.row(*c, net.row_index(*c, states)), settings.metric);
        pair_sum += d;
        maximum = std::max(maximum, d);
        ++pairs;
      }
    }

    double w = 1.0;
    if (settings.weighting == ConfigWeighting::Marginal && !others.empty()) {
      Assignment config;
      for (std::size_t o : others) config.set(net.nodes()[o].name, net.nodes()[o].states[states[o]]);
      w = evidence_probability(net, config);
    }
    weighted_sum += w * (pair_sum / static_cast<double>(pairs));
    weight_total += w;

    std::size_t k = 0;
    for (; k < others.size(); ++k) {
      if (++states[others[k]] < net.state_count(others[k])) break;
      states[others[k]] = 0;
    }
    if (k == others.size()) break;
  }

  if (settings.aggregation == Aggregation::Maximum) return maximum;
  return weight_total > 0.0 ? weighted_sum / weight_total : 0.0;
}

InfluenceReport influence_report(const Network& net, const InfluenceSettings& settings) {
  InfluenceReport report{settings, {}};
  for (const auto& a : net.arcs()) report.entries.push_back({a, arc_strength(net, a.from, a.to, settings)});
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const InfluenceEntry& x, const InfluenceEntry& y) { return x.strength > y.strength; });
  return report;
}

nlohmann::json influence_to_json(const InfluenceReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"from", e.arc.from}, {"to", e.arc.to}, {"strength", e.strength}});
  return {{"settings",
           {{"metric", to_string(report.settings.metric)},
            {"aggregation", to_string(report.settings.aggregation)},
            {"weighting", to_string(report.settings.weighting)}}},
          {"entries", std::move(entries)}};
}

namespace {

TextTable influence_table(const InfluenceReport& report) {
  TextTable t({"Parent", "Child", "Strength"});
  for (const auto& e : report.entries) t.add_row({e.arc.from, e.arc.to, fixed4(e.strength)});
  return t;
}

}  // namespace

std::string influence_to_table(const InfluenceReport& report) {
  std::string head = "Influence strength (metric=" + std::string(to_string(report.settings.metric)) +
                     ", aggregation=" + std::string(to_string(report.settings.aggregation)) +
                     ", weighting=" + std::string(to_string(report.settings.weighting)) + ")\n";
  return head + influence_table(report).to_text();
}

std::string influence_to_csv(const InfluenceReport& report) { return influence_table(report).to_csv(); }

}  // namespace bnlf
