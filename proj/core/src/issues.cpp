#include "bnlf/issues.hpp"

namespace bnlf {

std::string_view to_string(IssueKind kind) noexcept {
  switch (kind) {
    case IssueKind::MalformedLine: return "MalformedLine";
    case IssueKind::EmptyText: return "EmptyText";
    case IssueKind::DuplicateId: return "DuplicateId";
    case IssueKind::UnknownSourceLabel: return "UnknownSourceLabel";
    case IssueKind::InvalidProbabilities: return "InvalidProbabilities";
    case IssueKind::LabelProbabilityMismatch: return "LabelProbabilityMismatch";
    case IssueKind::UnknownCorpus: return "UnknownCorpus";
    case IssueKind::MissingModelPrediction: return "MissingModelPrediction";
    case IssueKind::MissingProbabilities: return "MissingProbabilities";
    case IssueKind::UnknownCorpusState: return "UnknownCorpusState";
    case IssueKind::InconsistentEvidence: return "InconsistentEvidence";
  }
  return "?";
}

nlohmann::json issues_to_json(const std::vector<Issue>& issues) {
  auto out = nlohmann::json::array();
  for (const auto& i : issues) {
    nlohmann::json j = {{"kind", to_string(i.kind)}, {"message", i.message}, {"dropped", i.dropped}};
    if (i.line > 0) j["line"] = i.line;
    if (!i.id.empty()) j["id"] = i.id;
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace bnlf
