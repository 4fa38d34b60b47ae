#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bnlf/network.hpp"

namespace bnlf {

/// Complete-data training table: one state name per (row, column).
struct TrainingTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Additive smoothing. In pseudo-count mode `value` is added to every
/// (row, child-state) cell. In equivalent-sample-size mode `value` is the ESS
/// and each node's cells get ESS / (rows * states), the BDeu split.
struct SmoothingConfig {
  enum class Mode { PseudoCount, EquivalentSampleSize };

  Mode mode = Mode::PseudoCount;
  double value = 1.0;

  static SmoothingConfig laplace(double alpha = 1.0) { return {Mode::PseudoCount, alpha}; }
  static SmoothingConfig equivalent_sample_size(double ess) { return {Mode::EquivalentSampleSize, ess}; }

  /// Per-cell pseudo-count for `node`. Throws InvalidSmoothing unless value > 0.
  double alpha_for(const NetworkSkeleton& structure, std::size_t node) const;
};

/// Integer sufficient statistics of a fixed structure: for every node, one
/// count per (parent configuration, child state).
class CountTable {
 public:
  static CountTable zeros(const NetworkSkeleton& structure);

  /// Adds one fully observed record given as a state index per node.
  void add(std::span<const std::size_t> states);

  std::uint64_t records() const noexcept { return records_; }
  /// counts()[node][row][state]
  const std::vector<std::vector<std::vector<std::uint64_t>>>& counts() const noexcept { return counts_; }

  /// Same node names, states and parent lists.
  bool same_structure(const CountTable& other) const;

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::vector<StateSpace> nodes_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> strides_;
  std::vector<std::vector<std::vector<std::uint64_t>>> counts_;
  std::uint64_t records_ = 0;

  friend CountTable merge_counts(const CountTable& a, const CountTable& b);
};

/// Counts every row of `data`. Throws EmptyTrainingTable, StructureMismatch
/// (a node has no column) or UnknownStateValue.
CountTable count_records(const NetworkSkeleton& structure, const TrainingTable& data);

/// Cell-wise sum. Throws StructureMismatch.
CountTable merge_counts(const CountTable& a, const CountTable& b);

/// P(y | z) = (n(y, z) + alpha) / (n(z) + alpha * |Y|), raw counts kept in
/// each Cpt.
Network fit_from_counts(const NetworkSkeleton& structure, const CountTable& counts, const SmoothingConfig& cfg);

Network fit_cpts(const NetworkSkeleton& structure, const TrainingTable& data, const SmoothingConfig& cfg);

}  // namespace bnlf
