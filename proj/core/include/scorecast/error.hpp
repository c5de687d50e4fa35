#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scorecast {

enum class ErrorKind {
  // ingest
  Io,
  Parse,
  DuplicateFixture,
  MalformedLineup,
  UnknownFixture,
  NegativeStat,
  OddsNotPositive,
  TestTooLarge,
  // features
  Schema,
  EmptyGroup,
  MissingLineup,
  UnknownTeam,
  EmptyMatrix,
  // regress
  InvalidHyperparameter,
  DimensionMismatch,
  KTooLarge,
  TooFewRows,
  SchemaMismatch,
  ModelFormat,
  // heuristics / predict / evaluate
  EmptyTrainingSet,
  NonFinite,
  EmptyTestSet,
  LengthMismatch,
  EmptyInput,
  TeamSetMismatch,
  TooFewTeams,
  NegativeFeature,
  MissingScenario,
  // cli
  MissingArtifact,
  Config,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scorecast
