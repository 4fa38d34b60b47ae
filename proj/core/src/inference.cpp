#include "bnlf/inference.hpp"

#include "bnlf/error.hpp"

namespace bnlf {
namespace {

// Ancestral closure of the seed nodes, returned in topological order.
std::vector<std::size_t> ancestral_set(const Network& net, const std::vector<bool>& seeds) {
  std::vector<bool> keep = seeds;
  const auto topo = net.topo_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    if (!keep[*it]) continue;
    for (std::size_t p : net.parents(*it)) keep[p] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i : topo)
    if (keep[i]) out.push_back(i);
  return out;
}

// Sums the product of the CPT entries of `factors` over every joint state of
// `hidden`, with the remaining entries of `states` held fixed. `factors` must
// be closed under taking parents.
double sum_out(const Network& net, const std::vector<std::size_t>& factors, const std::vector<std::size_t>& hidden,
               std::vector<std::size_t>& states) {
  for (std::size_t h : hidden) states[h] = 0;
  double total = 0.0;
  for (;;) {
    double p = 1.0;
    for (std::size_t i : factors) {
      p *= net.row(i, net.row_index(i, states))[states[i]];
      if (p == 0.0) break;
    }
    total += p;

    std::size_t k = 0;
    for (; k < hidden.size(); ++k) {
      const std::size_t h = hidden[k];
      if (++states[h] < net.state_count(h)) break;
      states[h] = 0;
    }
    if (k == hidden.size()) break;
  }
  return total;
}

}  // namespace

double evidence_probability(const Network& net, const Assignment& evidence) {
  auto states = net.structure().resolve(evidence);
  std::vector<bool> seeds(net.node_count());
  for (std::size_t i = 0; i < states.size(); ++i) seeds[i] = states[i] != kUnbound;
  const auto factors = ancestral_set(net, seeds);
  std::vector<std::size_t> hidden;
  for (std::size_t i : factors)
    if (states[i] == kUnbound) hidden.push_back(i);
  return sum_out(net, factors, hidden, states);
}

Posterior posterior(const Network& net, std::string_view query, const Assignment& evidence) {
  const std::size_t q = net.index_of(query);
  if (evidence.contains(query))
    throw Error(ErrorCode::QueryBoundInEvidence, "query node '" + std::string(query) + "' is bound in the evidence");
  auto states = net.structure().resolve(evidence);

  Posterior out{std::string(query), {}, evidence};

  bool parents_bound = true;
  for (std::size_t p : net.parents(q)) parents_bound = parents_bound && states[p] != kUnbound;
  if (parents_bound && net.children(q).empty()) {
    const auto row = net.row(q, net.row_index(q, states));
    out.distribution.assign(row.begin(), row.end());
    return out;
  }

  std::vector<bool> seeds(net.node_count());
  for (std::size_t i = 0; i < states.size(); ++i) seeds[i] = states[i] != kUnbound;
  seeds[q] = true;
  const auto factors = ancestral_set(net, seeds);
  std::vector<std::size_t> hidden;
  for (std::size_t i : factors)
    if (i != q && states[i] == kUnbound) hidden.push_back(i);

  const std::size_t width = net.state_count(q);
  out.distribution.resize(width);
  double total = 0.0;
  for (std::size_t s = 0; s < width; ++s) {
    states[q] = s;
    out.distribution[s] = sum_out(net, factors, hidden, states);
    total += out.distribution[s];
  }
  if (!(total > 0.0))
    throw Error(ErrorCode::InconsistentEvidence, "evidence has zero probability under the network");
  for (double& p : out.distribution) p /= total;
  return out;
}

std::size_t argmax_first(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

std::string predict_label(const Network& net, const Assignment& evidence, std::string_view query) {
  const auto post = posterior(net, query, evidence);
  return net.nodes()[net.index_of(query)].states[argmax_first(post.distribution)];
}

}  // namespace bnlf
