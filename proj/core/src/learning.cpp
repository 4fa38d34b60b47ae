#include "bnlf/learning.hpp"

#include <cmath>

#include "bnlf/error.hpp"

namespace bnlf {

double SmoothingConfig::alpha_for(const NetworkSkeleton& structure, std::size_t node) const {
  if (!std::isfinite(value) || value <= 0.0)
    throw Error(ErrorCode::InvalidSmoothing, "smoothing value must be finite and > 0");
  if (mode == Mode::PseudoCount) return value;
  const double cells = static_cast<double>(structure.row_count(node) * structure.state_count(node));
  return value / cells;
}

CountTable CountTable::zeros(const NetworkSkeleton& structure) {
  CountTable t;
  const std::size_t n = structure.node_count();
  t.nodes_ = structure.nodes();
  t.parents_.resize(n);
  t.strides_.resize(n);
  t.counts_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ps = structure.parents(i);
    t.parents_[i].assign(ps.begin(), ps.end());
    t.strides_[i].assign(ps.size(), 1);
    for (std::size_t k = ps.size(); k-- > 1;) t.strides_[i][k - 1] = t.strides_[i][k] * structure.state_count(ps[k]);
    t.counts_[i].assign(structure.row_count(i), std::vector<std::uint64_t>(structure.state_count(i), 0));
  }
  return t;
}

void CountTable::add(std::span<const std::size_t> states) {
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    std::size_t row = 0;
    for (std::size_t k = 0; k < parents_[i].size(); ++k) row += states[parents_[i][k]] * strides_[i][k];
    ++counts_[i][row][states[i]];
  }
  ++records_;
}

bool CountTable::same_structure(const CountTable& other) const {
  return nodes_ == other.nodes_ && parents_ == other.parents_;
}

CountTable count_records(const NetworkSkeleton& structure, const TrainingTable& data) {
  if (data.rows.empty()) throw Error(ErrorCode::EmptyTrainingTable, "no training rows");

  const std::size_t n = structure.node_count();
  std::vector<std::size_t> column_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& name = structure.node(i).name;
    std::size_t c = 0;
    while (c < data.columns.size() && data.columns[c] != name) ++c;
    if (c == data.columns.size())
      throw Error(ErrorCode::StructureMismatch, "training table has no column for node '" + name + "'");
    column_of[i] = c;
  }

  CountTable table = CountTable::zeros(structure);
  std::vector<std::size_t> states(n);
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    const auto& row = data.rows[r];
    if (row.size() != data.columns.size())
      throw Error(ErrorCode::StructureMismatch, "training row " + std::to_string(r) + " has wrong width");
    for (std::size_t i = 0; i < n; ++i) {
      const auto& cell = row[column_of[i]];
      try {
        states[i] = structure.state_index(i, cell);
      } catch (const Error&) {
        throw Error(ErrorCode::UnknownStateValue, "row " + std::to_string(r) + ": '" + cell +
                                                      "' is not a state of '" + structure.node(i).name + "'");
      }
    }
    table.add(states);
  }
  return table;
}

CountTable merge_counts(const CountTable& a, const CountTable& b) {
  if (!a.same_structure(b)) throw Error(ErrorCode::StructureMismatch, "count tables address different structures");
  CountTable out = a;
  for (std::size_t i = 0; i < out.counts_.size(); ++i)
    for (std::size_t r = 0; r < out.counts_[i].size(); ++r)
      for (std::size_t s = 0; s < out.counts_[i][r].size(); ++s) out.counts_[i][r][s] += b.counts_[i][r][s];
  out.records_ += b.records_;
  return out;
}

Network fit_from_counts(const NetworkSkeleton& structure, const CountTable& counts, const SmoothingConfig& cfg) {
  if (!counts.same_structure(CountTable::zeros(structure)))
    throw Error(ErrorCode::StructureMismatch, "count table does not match the structure");

  std::vector<Cpt> cpts;
  cpts.reserve(structure.node_count());
  for (std::size_t i = 0; i < structure.node_count(); ++i) {
    const double alpha = cfg.alpha_for(structure, i);
    const std::size_t width = structure.state_count(i);
    Cpt cpt;
    cpt.child = structure.node(i).name;
    for (std::size_t p : structure.parents(i)) cpt.parents.push_back(structure.node(p).name);
    cpt.alpha = alpha;
    cpt.counts = counts.counts()[i];
    cpt.rows.reserve(cpt.counts.size());
    for (const auto& row_counts : cpt.counts) {
      std::uint64_t total = 0;
      for (auto c : row_counts) total += c;
      const double denom = static_cast<double>(total) + alpha * static_cast<double>(width);
      std::vector<double> row(width);
      for (std::size_t s = 0; s < width; ++s) row[s] = (static_cast<double>(row_counts[s]) + alpha) / denom;
      cpt.rows.push_back(std::move(row));
    }
    cpts.push_back(std::move(cpt));
  }
  return Network::build(structure.nodes(), structure.arcs(), std::move(cpts));
}

Network fit_cpts(const NetworkSkeleton& structure, const TrainingTable& data, const SmoothingConfig& cfg) {
  return fit_from_counts(structure, count_records(structure, data), cfg);
}

}  // namespace bnlf
