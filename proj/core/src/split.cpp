#include "bnlf/split.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "bnlf/error.hpp"

namespace bnlf {

std::size_t train_size(std::size_t n, double fraction) {
  const double x = static_cast<double>(n) * fraction;
  const double nearest = std::round(x);
  return static_cast<std::size_t>(std::abs(x - nearest) < 1e-9 ? nearest : std::ceil(x));
}

namespace {

void check(const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    throw Error(ErrorCode::InvalidSplit, "train fraction must lie in (0, 1)");
}

void shuffle_ids(std::vector<std::string>& ids, std::mt19937_64& rng) {
  for (std::size_t i = ids.size(); i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(ids[i], ids[j]);
  }
}

void take(std::vector<std::string>& shuffled, double fraction, SplitManifest& m) {
  const std::size_t k = train_size(shuffled.size(), fraction);
  m.train_ids.insert(m.train_ids.end(), shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(k));
  m.test_ids.insert(m.test_ids.end(), shuffled.begin() + static_cast<std::ptrdiff_t>(k), shuffled.end());
}

}  // namespace

SplitManifest make_manifest(std::vector<std::string> ids, const SplitSpec& spec) {
  check(spec);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  SplitManifest m{spec.seed, spec.train_fraction, false, {}, {}};
  std::mt19937_64 rng(spec.seed);
  shuffle_ids(ids, rng);
  take(ids, spec.train_fraction, m);
  std::sort(m.train_ids.begin(), m.train_ids.end());
  std::sort(m.test_ids.begin(), m.test_ids.end());
  return m;
}

SplitResult split(std::span<const PredictionRecord> records, const SplitSpec& spec) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records to split");
  check(spec);

  SplitManifest manifest;
  if (!spec.stratified) {
    std::vector<std::string> ids;
    ids.reserve(records.size());
    for (const auto& r : records) ids.push_back(r.id);
    manifest = make_manifest(std::move(ids), spec);
  } else {
    manifest = SplitManifest{spec.seed, spec.train_fraction, true, {}, {}};
    std::mt19937_64 rng(spec.seed);
    for (auto s : kSentiments) {
      std::vector<std::string> ids;
      for (const auto& r : records)
        if (r.gold == s) ids.push_back(r.id);
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      shuffle_ids(ids, rng);
      take(ids, spec.train_fraction, manifest);
    }
    std::sort(manifest.train_ids.begin(), manifest.train_ids.end());
    std::sort(manifest.test_ids.begin(), manifest.test_ids.end());
  }
  return apply_manifest(records, manifest);
}

SplitResult apply_manifest(std::span<const PredictionRecord> records, const SplitManifest& manifest) {
  SplitResult out;
  out.manifest = manifest;
  for (const auto& r : records) {
    if (std::binary_search(manifest.train_ids.begin(), manifest.train_ids.end(), r.id))
      out.train.push_back(r);
    else if (std::binary_search(manifest.test_ids.begin(), manifest.test_ids.end(), r.id))
      out.test.push_back(r);
  }
  return out;
}

nlohmann::json manifest_to_json(const SplitManifest& m) {
  nlohmann::json j = {{"seed", m.seed}, {"fraction", m.fraction}, {"train_ids", m.train_ids}, {"test_ids", m.test_ids}};
  if (m.stratified) j["stratified"] = true;
  return j;
}

SplitManifest manifest_from_json(const nlohmann::json& j) {
  try {
    SplitManifest m;
    m.seed = j.at("seed").get<std::uint64_t>();
    m.fraction = j.at("fraction").get<double>();
    m.stratified = j.value("stratified", false);
    m.train_ids = j.at("train_ids").get<std::vector<std::string>>();
    m.test_ids = j.at("test_ids").get<std::vector<std::string>>();
    std::sort(m.train_ids.begin(), m.train_ids.end());
    std::sort(m.test_ids.begin(), m.test_ids.end());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("split manifest: ") + e.what());
  }
}

}  // namespace bnlf
