#include "bnlf/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "bnlf/error.hpp"

namespace bnlf {

NetworkSkeleton NetworkSkeleton::build(std::vector<StateSpace> nodes, std::vector<Arc> arcs) {
  NetworkSkeleton s;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.name.empty()) throw Error(ErrorCode::InvalidStateSpace, "node with empty name");
    if (n.states.size() < 2)
      throw Error(ErrorCode::InvalidStateSpace, "node '" + n.name + "' needs at least two states");
    std::set<std::string_view> seen;
    for (const auto& st : n.states) {
      if (!seen.insert(st).second)
        throw Error(ErrorCode::InvalidStateSpace, "node '" + n.name + "' repeats state '" + st + "'");
    }
    if (!s.index_.emplace(n.name, i).second)
      throw Error(ErrorCode::DuplicateNode, "node '" + n.name + "' declared twice");
  }
  s.nodes_ = std::move(nodes);
  s.parents_.resize(s.nodes_.size());
  s.children_.resize(s.nodes_.size());

  std::set<std::pair<std::size_t, std::size_t>> seen_arcs;
  for (const auto& a : arcs) {
    const std::size_t from = s.index_of(a.from);
    const std::size_t to = s.index_of(a.to);
    if (from == to) throw Error(ErrorCode::CycleDetected, "self-loop on '" + a.from + "'");
    if (!seen_arcs.emplace(from, to).second)
      throw Error(ErrorCode::DuplicateArc, a.from + " -> " + a.to);
    s.parents_[to].push_back(from);
    s.children_[from].push_back(to);
  }
  s.arcs_ = std::move(arcs);

  // Kahn's algorithm; the min-heap on declaration index keeps the order stable.
  std::vector<std::size_t> indegree(s.nodes_.size());
  for (std::size_t i = 0; i < s.nodes_.size(); ++i) indegree[i] = s.parents_[i].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < indegree.size(); ++i)
    if (indegree[i] == 0) ready.push(i);
  while (!ready.empty()) {
    const std::size_t n = ready.top();
    ready.pop();
    s.topo_.push_back(n);
    for (std::size_t c : s.children_[n])
      if (--indegree[c] == 0) ready.push(c);
  }
  if (s.topo_.size() != s.nodes_.size()) {
    std::string members;
    for (std::size_t i = 0; i < indegree.size(); ++i) {
      if (indegree[i] == 0) continue;
      if (!members.empty()) members += ", ";
      members += s.nodes_[i].name;
    }
    throw Error(ErrorCode::CycleDetected, "directed cycle through {" + members + "}");
  }
  return s;
}

std::optional<std::size_t> NetworkSkeleton::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t NetworkSkeleton::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownNode, "no node named '" + std::string(name) + "'");
}

std::size_t NetworkSkeleton::state_index(std::size_t node, std::string_view state) const {
  const auto& states = nodes_.at(node).states;
  auto it = std::find(states.begin(), states.end(), state);
  if (it == states.end())
    throw Error(ErrorCode::UnknownState,
                "node '" + nodes_[node].name + "' has no state '" + std::string(state) + "'");
  return static_cast<std::size_t>(it - states.begin());
}

std::vector<std::string> NetworkSkeleton::topo_order_names() const {
  std::vector<std::string> out;
  out.reserve(topo_.size());
  for (std::size_t i : topo_) out.push_back(nodes_[i].name);
  return out;
}

std::size_t NetworkSkeleton::row_count(std::size_t i) const {
  std::size_t rows = 1;
  for (std::size_t p : parents_.at(i)) rows *= nodes_[p].states.size();
  return rows;
}

bool NetworkSkeleton::has_arc(std::size_t from, std::size_t to) const {
  const auto& ps = parents_.at(to);
  return std::find(ps.begin(), ps.end(), from) != ps.end();
}

std::vector<std::size_t> NetworkSkeleton::resolve(const Assignment& a) const {
  std::vector<std::size_t> out(nodes_.size(), kUnbound);
  for (const auto& [node, state] : a.bindings()) {
    const std::size_t i = index_of(node);
    out[i] = state_index(i, state);
  }
  return out;
}

Network::Network(NetworkSkeleton structure, std::vector<Arc> declared, std::vector<Cpt> cpts)
    : structure_(std::move(structure)), declared_arcs_(std::move(declared)), cpts_(std::move(cpts)) {
  strides_.resize(structure_.node_count());
  for (std::size_t i = 0; i < structure_.node_count(); ++i) {
    const auto ps = structure_.parents(i);
    strides_[i].assign(ps.size(), 1);
    for (std::size_t k = ps.size(); k-- > 1;)
      strides_[i][k - 1] = strides_[i][k] * structure_.state_count(ps[k]);
  }
}

Network Network::build(std::vector<StateSpace> nodes, std::vector<Arc> arcs, std::vector<Cpt> cpts) {
  const NetworkSkeleton declared = NetworkSkeleton::build(nodes, arcs);
  const std::size_t n = declared.node_count();

  std::vector<std::optional<Cpt>> by_node(n);
  for (auto& c : cpts) {
    auto idx = declared.find(c.child);
    if (!idx) throw Error(ErrorCode::CptMismatch, "CPT for undeclared node '" + c.child + "'");
    if (by_node[*idx]) throw Error(ErrorCode::CptMismatch, "two CPTs for node '" + c.child + "'");
    by_node[*idx] = std::move(c);
  }

  std::vector<Arc> ordered;
  std::vector<Cpt> tables;
  tables.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name = declared.node(i).name;
    if (!by_node[i]) throw Error(ErrorCode::CptMismatch, "missing CPT for node '" + name + "'");
    Cpt& c = *by_node[i];

    std::set<std::size_t> cpt_parents;
    for (const auto& p : c.parents) {
      auto pi = declared.find(p);
      if (!pi || !cpt_parents.insert(*pi).second)
        throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' lists parent '" + p + "' invalidly");
      ordered.push_back(Arc{p, name});
    }
    const auto graph_parents = declared.parents(i);
    if (cpt_parents != std::set<std::size_t>(graph_parents.begin(), graph_parents.end()))
      throw Error(ErrorCode::CptMismatch, "CPT parents of '" + name + "' differ from graph in-neighbours");

    const std::size_t want_rows = declared.row_count(i);
    const std::size_t width = declared.state_count(i);
    if (c.rows.size() != want_rows)
      throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' has " + std::to_string(c.rows.size()) +
                                              " rows, expected " + std::to_string(want_rows));
    for (std::size_t r = 0; r < c.rows.size(); ++r) {
      const auto& row = c.rows[r];
      if (row.size() != width)
        throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' row " + std::to_string(r) + " has wrong width");
      double sum = 0.0;
      for (double p : row) {
        if (!std::isfinite(p) || p < 0.0)
          throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' row " + std::to_string(r) + " has invalid entry");
        sum += p;
      }
      if (std::abs(sum - 1.0) > kNormalizationTolerance)
        throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' row " + std::to_string(r) + " is not normalized");
    }
    if (!c.counts.empty()) {
      if (c.counts.size() != want_rows)
        throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' has mis-shaped counts");
      for (const auto& row : c.counts)
        if (row.size() != width) throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' has mis-shaped counts");
    }
    if (!std::isfinite(c.alpha) || c.alpha < 0.0)
      throw Error(ErrorCode::CptMismatch, "CPT of '" + name + "' has invalid alpha");
    tables.push_back(std::move(c));
  }

  // Re-derive the skeleton with arcs in CPT parent order so parents(i) matches the row layout.
  NetworkSkeleton structure = NetworkSkeleton::build(std::move(nodes), std::move(ordered));
  return Network(std::move(structure), std::move(arcs), std::move(tables));
}

std::size_t Network::row_index(std::size_t node, std::span<const std::size_t> states) const {
  const auto ps = structure_.parents(node);
  const auto& strides = strides_[node];
  std::size_t r = 0;
  for (std::size_t k = 0; k < ps.size(); ++k) r += states[ps[k]] * strides[k];
  return r;
}

std::span<const double> Network::cpt_row(std::string_view child, const Assignment& parent_config) const {
  const std::size_t node = index_of(child);
  const auto states = structure_.resolve(parent_config);
  for (std::size_t p : parents(node)) {
    if (states[p] == kUnbound)
      throw Error(ErrorCode::IncompleteParentConfig,
                  "parent '" + nodes()[p].name + "' of '" + std::string(child) + "' is unbound");
  }
  return row(node, row_index(node, states));
}

double Network::joint_probability(const Assignment& full) const {
  const auto states = structure_.resolve(full);
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == kUnbound) throw Error(ErrorCode::IncompleteAssignment, "node '" + nodes()[i].name + "' is unbound");
  return joint_probability(states);
}

double Network::joint_probability(std::span<const std::size_t> states) const {
  if (states.size() != node_count())
    throw Error(ErrorCode::IncompleteAssignment, "state vector does not cover every node");
  double p = 1.0;
  for (std::size_t i : topo_order()) {
    if (states[i] == kUnbound) throw Error(ErrorCode::IncompleteAssignment, "node '" + nodes()[i].name + "' is unbound");
    if (states[i] >= state_count(i)) throw Error(ErrorCode::UnknownState, "state index out of range for '" + nodes()[i].name + "'");
    p *= cpts_[i].rows[row_index(i, states)][states[i]];
  }
  return p;
}

}  // namespace bnlf
