#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bnlf/records.hpp"

namespace bnlf {

struct SplitSpec {
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool stratified = false;  // per gold class
};

/// The contract of record for a split. Ids inside each partition are sorted.
struct SplitManifest {
  std::uint64_t seed = 0;
  double fraction = 0.8;
  bool stratified = false;
  std::vector<std::string> train_ids;
  std::vector<std::string> test_ids;

  friend bool operator==(const SplitManifest&, const SplitManifest&) = default;
};

struct SplitResult {
  std::vector<PredictionRecord> train;
  std::vector<PredictionRecord> test;
  SplitManifest manifest;
};

/// ceil(n * fraction), with products within 1e-9 of an integer taken as that
/// integer so 5 * 0.6 gives 3 rather than 4.
std::size_t train_size(std::size_t n, double fraction);

/// Shuffle: ids sorted lexicographically, then Fisher-Yates from the last
/// position down, swapping position i with j = mt19937_64(seed)() mod (i + 1).
/// The first train_size(n, fraction) shuffled ids form the train partition.
/// A pure function of (id set, seed, fraction). Throws InvalidSplit.
SplitManifest make_manifest(std::vector<std::string> ids, const SplitSpec& spec);

/// Throws EmptyInput or InvalidSplit. Partitions keep the input record order.
SplitResult split(std::span<const PredictionRecord> records, const SplitSpec& spec);

/// Partitions `records` by an existing manifest; ids absent from it are ignored.
SplitResult apply_manifest(std::span<const PredictionRecord> records, const SplitManifest& manifest);

nlohmann::json manifest_to_json(const SplitManifest& m);
SplitManifest manifest_from_json(const nlohmann::json& j);

}  // namespace bnlf
