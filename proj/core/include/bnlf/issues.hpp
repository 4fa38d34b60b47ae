#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace bnlf {

/// Non-fatal findings collected while processing records. `dropped` tells
/// whether the record was excluded from further processing.
enum class IssueKind {
  MalformedLine,
  EmptyText,
  DuplicateId,
  UnknownSourceLabel,
  InvalidProbabilities,
  LabelProbabilityMismatch,
  UnknownCorpus,
  MissingModelPrediction,
  MissingProbabilities,
  UnknownCorpusState,
  InconsistentEvidence,
};

struct Issue {
  IssueKind kind;
  std::size_t line = 0;  // 1-based; 0 when not tied to an input line
  std::string id;
  std::string message;
  bool dropped = false;
};

std::string_view to_string(IssueKind kind) noexcept;
nlohmann::json issues_to_json(const std::vector<Issue>& issues);

}  // namespace bnlf
