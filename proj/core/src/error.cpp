#include "bnlf/error.hpp"

namespace bnlf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::CptMismatch: return "CptMismatch";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::DuplicateArc: return "DuplicateArc";
    case ErrorCode::InvalidStateSpace: return "InvalidStateSpace";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::IncompleteParentConfig: return "IncompleteParentConfig";
    case ErrorCode::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorCode::UnknownStateValue: return "UnknownStateValue";
    case ErrorCode::EmptyTrainingTable: return "EmptyTrainingTable";
    case ErrorCode::StructureMismatch: return "StructureMismatch";
    case ErrorCode::InvalidSmoothing: return "InvalidSmoothing";
    case ErrorCode::InconsistentEvidence: return "InconsistentEvidence";
    case ErrorCode::QueryBoundInEvidence: return "QueryBoundInEvidence";
    case ErrorCode::NoSuchArc: return "NoSuchArc";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnknownSourceLabel: return "UnknownSourceLabel";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidSplit: return "InvalidSplit";
    case ErrorCode::MissingModelPrediction: return "MissingModelPrediction";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::DegenerateMarginals: return "DegenerateMarginals";
    case ErrorCode::MissingFallbackPrediction: return "MissingFallbackPrediction";
    case ErrorCode::MissingProbabilities: return "MissingProbabilities";
    case ErrorCode::EmptyModelList: return "EmptyModelList";
    case ErrorCode::UnknownCorpusState: return "UnknownCorpusState";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

ErrorClass classify(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CycleDetected:
    case ErrorCode::CptMismatch:
    case ErrorCode::DuplicateNode:
    case ErrorCode::DuplicateArc:
    case ErrorCode::InvalidStateSpace:
    case ErrorCode::StructureMismatch:
    case ErrorCode::InvalidSmoothing:
    case ErrorCode::InconsistentEvidence:
    case ErrorCode::NoSuchArc:
    case ErrorCode::EmptyModelList:
    case ErrorCode::InvalidConfig:
      return ErrorClass::Model;
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownState:
    case ErrorCode::IncompleteParentConfig:
    case ErrorCode::IncompleteAssignment:
    case ErrorCode::UnknownStateValue:
    case ErrorCode::EmptyTrainingTable:
    case ErrorCode::QueryBoundInEvidence:
    case ErrorCode::MalformedLine:
    case ErrorCode::UnknownSourceLabel:
    case ErrorCode::DuplicateId:
    case ErrorCode::EmptyInput:
    case ErrorCode::InvalidSplit:
    case ErrorCode::MissingModelPrediction:
    case ErrorCode::LengthMismatch:
    case ErrorCode::EmptyMatrix:
    case ErrorCode::DegenerateMarginals:
    case ErrorCode::MissingFallbackPrediction:
    case ErrorCode::MissingProbabilities:
    case ErrorCode::UnknownCorpusState:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
      return ErrorClass::Data;
  }
  return ErrorClass::Internal;
}

}  // namespace bnlf
