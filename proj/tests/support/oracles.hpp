#pragma once

// Test-only reference computations. Nothing here calls the inference module or
// Network::row_index; joint probabilities are recomputed from the raw Cpt data.

#include <cstddef>
#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bnlf/network.hpp"

namespace bnlf::testing {

/// Joint probability of a full assignment (state index per node, in
/// declaration order) straight from the Cpt structs.
inline double oracle_joint(const Network& net, const std::vector<std::size_t>& states) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) pos[net.nodes()[i].name] = i;
  double p = 1.0;
  for (const auto& cpt : net.cpts()) {
    std::size_t row = 0;
    for (const auto& parent : cpt.parents) {
      const std::size_t pi = pos.at(parent);
      row = row * net.nodes()[pi].states.size() + states[pi];
    }
    p *= cpt.rows[row][states[pos.at(cpt.child)]];
  }
  return p;
}

/// Every full assignment with its joint probability.
inline std::vector<std::pair<std::vector<std::size_t>, double>> full_joint_table(const Network& net) {
  const std::size_t n = net.nodes().size();
  std::vector<std::pair<std::vector<std::size_t>, double>> table;
  std::vector<std::size_t> states(n, 0);
  for (;;) {
    table.emplace_back(states, oracle_joint(net, states));
    std::size_t k = 0;
    for (; k < n; ++k) {
      if (++states[k] < net.nodes()[k].states.size()) break;
      states[k] = 0;
    }
    if (k == n) break;
  }
  return table;
}

/// P(query | evidence) by summing the full joint table; evidence uses
/// kUnbound for free nodes. Returns an empty vector if P(evidence) = 0.
inline std::vector<double> oracle_posterior(const Network& net, std::size_t query,
                                            const std::vector<std::size_t>& evidence) {
  std::vector<double> dist(net.nodes()[query].states.size(), 0.0);
  double total = 0.0;
  for (const auto& [states, p] : full_joint_table(net)) {
    bool match = true;
    for (std::size_t i = 0; i < states.size() && match; ++i)
      match = evidence[i] == kUnbound || evidence[i] == states[i];
    if (!match) continue;
    dist[states[query]] += p;
    total += p;
  }
  if (total <= 0.0) return {};
  for (double& d : dist) d /= total;
  return dist;
}

/// Random DAG with 2..max_nodes nodes, 2..max_states states each, Dirichlet(1)
/// CPT rows. Arcs only go from earlier to later positions of a random order;
/// nodes are declared in a shuffled order so declaration != topological order.
inline Network random_network(std::mt19937_64& rng, std::size_t max_nodes = 6, std::size_t max_states = 4,
                              double arc_probability = 0.5) {
  std::uniform_int_distribution<std::size_t> node_count(2, max_nodes);
  std::uniform_int_distribution<std::size_t> state_count(2, max_states);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> gamma1(1.0);

  const std::size_t n = node_count(rng);
  std::vector<StateSpace> nodes;
  for (std::size_t i = 0; i < n; ++i) {
    StateSpace s{"n" + std::to_string(i), {}};
    const std::size_t k = state_count(rng);
    for (std::size_t j = 0; j < k; ++j) s.states.push_back("s" + std::to_string(j));
    nodes.push_back(std::move(s));
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Arc> arcs;
  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (unit(rng) < arc_probability) {
        arcs.push_back({nodes[order[a]].name, nodes[order[b]].name});
        parents[order[b]].push_back(order[a]);
      }

  std::vector<Cpt> cpts;
  for (std::size_t i = 0; i < n; ++i) {
    Cpt c;
    c.child = nodes[i].name;
    std::size_t rows = 1;
    for (std::size_t p : parents[i]) {
      c.parents.push_back(nodes[p].name);
      rows *= nodes[p].states.size();
    }
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> row(nodes[i].states.size());
      double sum = 0.0;
      for (double& v : row) sum += (v = gamma1(rng) + 1e-3);
      for (double& v : row) v /= sum;
      c.rows.push_back(std::move(row));
    }
    cpts.push_back(std::move(c));
  }
  return Network::build(std::move(nodes), std::move(arcs), std::move(cpts));
}

}  // namespace bnlf::testing
