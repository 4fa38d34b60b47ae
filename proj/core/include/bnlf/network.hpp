#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bnlf {

/// A discrete variable and its ordered states. The order is canonical: CPT
/// row layout and every argmax tie-break depend on it.
struct StateSpace {
  std::string name;
  std::vector<std::string> states;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;
};

struct Arc {
  std::string from;
  std::string to;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Conditional probability table of one node.
///
/// Rows are dense and indexed by the mixed-radix encoding of the parent
/// states in `parents` order, last parent varying fastest. `counts` keeps the
/// integer occurrence counts a learned table was built from (empty for tables
/// specified by hand); `alpha` is the pseudo-count that was added per cell.
struct Cpt {
  std::string child;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> rows;
  double alpha = 0.0;
  std::vector<std::vector<std::uint64_t>> counts;

  friend bool operator==(const Cpt&, const Cpt&) = default;
};

/// Partial mapping from node name to state name. Validity of the bound states
/// is checked by whichever network the assignment is used against.
class Assignment {
 public:
  using Bindings = std::map<std::string, std::string, std::less<>>;

  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::string, std::string>> init)
      : bindings_(init.begin(), init.end()) {}

  Assignment& set(std::string node, std::string state) {
    bindings_.insert_or_assign(std::move(node), std::move(state));
    return *this;
  }
  void erase(std::string_view node) {
    if (auto it = bindings_.find(node); it != bindings_.end()) bindings_.erase(it);
  }

  bool contains(std::string_view node) const { return bindings_.find(node) != bindings_.end(); }
  const std::string* find(std::string_view node) const {
    auto it = bindings_.find(node);
    return it == bindings_.end() ? nullptr : &it->second;
  }

  const Bindings& bindings() const noexcept { return bindings_; }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  Bindings bindings_;
};

/// Marker for an unbound node in index-form assignments.
inline constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);

/// Validated DAG over discrete nodes, without parameters.
///
/// A node's parents are ordered by the position of their arcs in the arc
/// list. The topological order is Kahn's algorithm with ties broken by
/// declaration order, so it is deterministic.
class NetworkSkeleton {
 public:
  /// Throws DuplicateNode, InvalidStateSpace, UnknownNode, DuplicateArc or
  /// CycleDetected.
  static NetworkSkeleton build(std::vector<StateSpace> nodes, std::vector<Arc> arcs);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::vector<StateSpace>& nodes() const noexcept { return nodes_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  const StateSpace& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t state_count(std::size_t i) const { return nodes_.at(i).states.size(); }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws UnknownNode.
  std::size_t index_of(std::string_view name) const;
  /// Throws UnknownState.
  std::size_t state_index(std::size_t node, std::string_view state) const;

  std::span<const std::size_t> parents(std::size_t i) const { return parents_.at(i); }
  std::span<const std::size_t> children(std::size_t i) const { return children_.at(i); }
  std::span<const std::size_t> topo_order() const noexcept { return topo_; }
  std::vector<std::string> topo_order_names() const;

  /// Number of parent configurations of node i (product of parent state counts).
  std::size_t row_count(std::size_t i) const;
  bool has_arc(std::size_t from, std::size_t to) const;

  /// Converts named bindings to one state index per node (kUnbound where
  /// unbound). Throws UnknownNode / UnknownState.
  std::vector<std::size_t> resolve(const Assignment& a) const;

 private:
  std::vector<StateSpace> nodes_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> topo_;
};

/// Immutable discrete Bayesian network: a skeleton plus one normalized CPT per
/// node. Safe for concurrent readers.
class Network {
 public:
  /// Validates everything and throws instead of returning a partially valid
  /// network: CycleDetected, DuplicateNode, DuplicateArc, UnknownNode,
  /// InvalidStateSpace, CptMismatch.
  static Network build(std::vector<StateSpace> nodes, std::vector<Arc> arcs, std::vector<Cpt> cpts);

  /// Rows are normalized when |sum - 1| <= this.
  static constexpr double kNormalizationTolerance = 1e-9;

  const NetworkSkeleton& structure() const noexcept { return structure_; }
  std::size_t node_count() const noexcept { return structure_.node_count(); }
  const std::vector<StateSpace>& nodes() const noexcept { return structure_.nodes(); }
  /// Arcs in the order they were declared.
  const std::vector<Arc>& arcs() const noexcept { return declared_arcs_; }
  /// CPTs in node declaration order.
  const std::vector<Cpt>& cpts() const noexcept { return cpts_; }
  const Cpt& cpt(std::size_t node) const { return cpts_.at(node); }

  std::optional<std::size_t> find(std::string_view name) const { return structure_.find(name); }
  std::size_t index_of(std::string_view name) const { return structure_.index_of(name); }
  std::size_t state_index(std::size_t node, std::string_view state) const {
    return structure_.state_index(node, state);
  }
  std::size_t state_count(std::size_t node) const { return structure_.state_count(node); }
  /// Parents in CPT order.
  std::span<const std::size_t> parents(std::size_t node) const { return structure_.parents(node); }
  std::span<const std::size_t> children(std::size_t node) const { return structure_.children(node); }
  std::span<const std::size_t> topo_order() const noexcept { return structure_.topo_order(); }

  /// Row of `node` selected by the parent states found in `states` (one entry
  /// per node; only the parents' entries are read).
  std::size_t row_index(std::size_t node, std::span<const std::size_t> states) const;
  std::span<const double> row(std::size_t node, std::size_t row) const { return cpts_.at(node).rows.at(row); }

  /// Stored row for `child` given its parents' states. Bindings of other known
  /// nodes are ignored. Throws UnknownNode, UnknownState, IncompleteParentConfig.
  std::span<const double> cpt_row(std::string_view child, const Assignment& parent_config) const;

  /// Product of CPT entries. Throws IncompleteAssignment unless every node is
  /// bound.
  double joint_probability(const Assignment& full) const;
  double joint_probability(std::span<const std::size_t> states) const;

 private:
  Network(NetworkSkeleton structure, std::vector<Arc> declared, std::vector<Cpt> cpts);

  NetworkSkeleton structure_;
  std::vector<Arc> declared_arcs_;
  std::vector<Cpt> cpts_;
  std::vector<std::vector<std::size_t>> strides_;
};

}  // namespace bnlf
