#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "scorecast/features.hpp"
#include "scorecast/heuristics.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

/// Negative values clamp to 0; otherwise round half up. NonFinite for NaN/inf.
int round_goals(double raw);

struct ScorelinePrediction {
  FixtureId fixture_id;
  std::string model;
  TeamName home_team;
  TeamName away_team;
  double raw_home = 0;
  double raw_away = 0;
  int pred_home = 0;
  int pred_away = 0;
  std::optional<int> actual_home;
  std::optional<int> actual_away;

  Scoreline predicted() const { return {pred_home, pred_away}; }
  std::optional<Scoreline> actual() const;
};

struct PredictionSet {
  std::string model;
  std::vector<ScorelinePrediction> predictions;
  std::vector<SkippedFixture> skipped;
  std::vector<std::string> warnings;
};

std::string model_label(Approach approach, Technique technique);

ScorelinePrediction make_prediction(const Fixture& fixture, const std::string& model,
                                    double raw_home, double raw_away);

/// Builds each fixture's home and away rows, runs the matching model and
/// rounds. Fixtures whose rows cannot be built are listed in `skipped`.
/// SchemaMismatch if either model was trained on a different feature layout;
/// EmptyTestSet if `fixtures` is empty.
PredictionSet predict_scorelines(const TrainedModel& home_model, const TrainedModel& away_model,
                                 std::span<const Fixture> fixtures, const FeatureContext& ctx,
                                 Approach approach, const std::string& label);

struct HeuristicInputs {
  std::span<const Fixture> training;  // for the Tradition table
  std::span<const Fixture> history;   // completed results available to Recency
};

PredictionSet predict_heuristic(Heuristic heuristic, std::span<const Fixture> fixtures,
                                const HeuristicInputs& inputs);

/// Columns: fixture_id, model, raw_home, raw_away, pred_home, pred_away,
/// actual_home, actual_away (actual cells empty for unplayed fixtures).
void write_predictions_csv(std::ostream& out, std::span<const ScorelinePrediction> predictions);
void write_predictions_json(std::ostream& out, std::span<const ScorelinePrediction> predictions);

}  // namespace scorecast
