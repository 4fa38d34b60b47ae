#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bnlf {

enum class ErrorCode {
  // network construction and lookup
  CycleDetected,
  CptMismatch,
  DuplicateNode,
  DuplicateArc,
  InvalidStateSpace,
  UnknownNode,
  UnknownState,
  IncompleteParentConfig,
  IncompleteAssignment,
  // learning
  UnknownStateValue,
  EmptyTrainingTable,
  StructureMismatch,
  InvalidSmoothing,
  // inference
  InconsistentEvidence,
  QueryBoundInEvidence,
  // influence
  NoSuchArc,
  // data pipeline
  MalformedLine,
  UnknownSourceLabel,
  DuplicateId,
  EmptyInput,
  InvalidSplit,
  MissingModelPrediction,
  // evaluation
  LengthMismatch,
  EmptyMatrix,
  DegenerateMarginals,
  MissingFallbackPrediction,
  MissingProbabilities,
  // fusion pipeline
  EmptyModelList,
  UnknownCorpusState,
  InvalidConfig,
  // serialization / io
  ParseError,
  IoError,
};

/// Coarse error classes; the command-line tool maps each to an exit code.
enum class ErrorClass { Data, Model, Internal };

std::string_view to_string(ErrorCode code) noexcept;
ErrorClass classify(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bnlf
