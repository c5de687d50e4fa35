#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "scorecast/evaluate.hpp"
#include "scorecast/features.hpp"
#include "scorecast/ingest.hpp"
#include "scorecast/predict.hpp"
#include "scorecast/schema.hpp"

namespace scorecast::cli {

/// Loaded data plus everything derived from the training split. Feature
/// contexts hold references into it, so it stays put once built.
class Workspace {
 public:
  explicit Workspace(const RunConfig& config);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const Dataset& data() const { return data_; }
  const FeatureSchema& schema() const { return schema_; }
  const std::vector<PlayerId>& universe() const { return universe_; }
  const std::string& data_fingerprint() const { return data_fingerprint_; }
  FeatureContext context(Approach approach) const;

 private:
  Dataset data_;
  FeatureSchema schema_;
  std::vector<PlayerId> universe_;
  std::string data_fingerprint_;
};

struct TrainingSet {
  FeatureMatrix matrix;
  Matrix x;
  std::vector<double> y;
  std::vector<int> classes;
};

struct ModelPair {
  std::string label;
  Approach approach = Approach::LineupStats;
  Technique technique = Technique::LR;
  TrainedModel home;
  TrainedModel away;
};

/// Fits model pairs, building each (approach, side) training matrix once.
class Trainer {
 public:
  Trainer(const Workspace& ws, const RunConfig& config) : ws_(ws), config_(config) {}

  const TrainingSet& training_set(Approach approach, Side side);
  ModelPair train(Approach approach, Technique technique);

 private:
  const Workspace& ws_;
  const RunConfig& config_;
  std::map<std::pair<Approach, Side>, TrainingSet> cache_;
};

std::filesystem::path artifact_path(const std::filesystem::path& dir, const std::string& label,
                                    Side side);
void save_pair(const ModelPair& pair, const std::filesystem::path& dir);
ModelPair load_pair(const std::filesystem::path& dir, Approach approach, Technique technique);

/// Universe stored in a players-approach model's metadata.
std::vector<PlayerId> stored_universe(const TrainedModel& model);

struct ModelEvaluation {
  std::string family;  // approach name, or the heuristic's own name
  PredictionSet predictions;
  FitnessReport home_fit;
  FitnessReport away_fit;
  StandingsTable predicted_table;
  StandingsTable actual_table;
  std::optional<double> tau;
  double top4 = 0;
  double bottom3 = 0;
  BettingLedger ledger;

  ModelScores scores() const;
};

ModelEvaluation evaluate_predictions(PredictionSet predictions, std::string family,
                                     const OddsBook& odds, const RunConfig& config);

PredictionSet predict_pair(const ModelPair& pair, const Workspace& ws,
                           std::span<const Fixture> fixtures);
PredictionSet predict_with(Heuristic heuristic, const Workspace& ws,
                           std::span<const Fixture> fixtures);

struct ImportanceResult {
  Approach approach;
  Side side;
  FeatureRanking ranking;
};

ImportanceResult importance(Trainer& trainer, Approach approach, Side side);

}  // namespace scorecast::cli
