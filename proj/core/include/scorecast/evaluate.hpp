#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scorecast/heuristics.hpp"
#include "scorecast/matrix.hpp"
#include "scorecast/predict.hpp"

namespace scorecast {

struct FitnessReport {
  std::string model;
  Side side = Side::Home;
  double mae = 0;
  double rmse = 0;
  std::optional<double> r2;  // undefined when the actual values are constant
  std::size_t n = 0;
};

/// LengthMismatch, EmptyInput.
FitnessReport fitness(std::span<const double> predicted, std::span<const double> actual);

/// Raw predictions of one side against the actual goals; fixtures without a
/// result are left out.
FitnessReport fitness(const PredictionSet& set, Side side);

StandingsTable simulate_standings(std::span<const ScorelinePrediction> predictions);
/// Table of the real results of `fixtures`. EmptyInput if none has a result.
StandingsTable actual_standings(std::span<const Fixture> fixtures);
/// Table of the real results carried by `predictions`.
StandingsTable actual_standings(std::span<const ScorelinePrediction> predictions);

/// Kendall tau-b over the two tables' points. nullopt when either table's
/// points are all equal. TeamSetMismatch if the team sets differ.
std::optional<double> kendall_tau(const StandingsTable& a, const StandingsTable& b);

enum class Zone { Top4, Bottom3 };
std::size_t zone_size(Zone zone);
std::string_view to_string(Zone zone);

/// Percentage of the actual zone's teams that the predicted table also places
/// in that zone. TooFewTeams, TeamSetMismatch.
double zone_accuracy(const StandingsTable& predicted, const StandingsTable& actual, Zone zone);

enum class MissingOddsPolicy { Skip, Lose };
std::string_view to_string(MissingOddsPolicy policy);
std::optional<MissingOddsPolicy> parse_missing_odds_policy(std::string_view text);

struct BetEntry {
  FixtureId fixture_id;
  Scoreline predicted;
  std::optional<Scoreline> actual;
  std::optional<double> odds;
  bool placed = false;
  bool correct = false;
  double payout = 0;
};

struct BettingLedger {
  std::string model;
  double stake = 1.0;
  MissingOddsPolicy policy = MissingOddsPolicy::Skip;
  std::vector<BetEntry> entries;
  double net_earnings = 0;
  std::size_t bets_placed = 0;
  std::size_t bets_skipped = 0;
  std::size_t bets_won = 0;
};

/// One stake on each predicted scoreline. Fixtures without a result are never
/// bet on; fixtures without a quote follow `policy`.
BettingLedger bet_run(std::span<const ScorelinePrediction> predictions, const OddsBook& odds,
                      double stake = 1.0, MissingOddsPolicy policy = MissingOddsPolicy::Skip);

struct FeatureScore {
  std::string feature;
  double score = 0;
};
using FeatureRanking = std::vector<FeatureScore>;

/// Chi-squared dependence of each column on the integer class labels, after
/// min-max scaling each column to [0, 1]. Sorted by descending score; equal
/// scores keep column order.
FeatureRanking chi2_importance(const Matrix& features, std::span<const int> targets,
                               std::span<const std::string> names);

enum class Scenario { HomeFitness, AwayFitness, Betting, Tau, Top4, Bottom3 };
inline constexpr std::array<Scenario, 6> kScenarios = {Scenario::HomeFitness, Scenario::AwayFitness,
                                                       Scenario::Betting,     Scenario::Tau,
                                                       Scenario::Top4,        Scenario::Bottom3};
std::string_view to_string(Scenario scenario);
/// Fitness scenarios are RMSE (lower is better); the rest are higher-is-better.
bool higher_is_better(Scenario scenario);

/// Competition ranking ("1224"): equal values share the better rank. Missing
/// values rank after every present value.
std::vector<std::size_t> competition_ranks(std::span<const std::optional<double>> values,
                                           bool higher_better);

struct ModelScores {
  std::string model;
  std::map<Scenario, std::optional<double>> values;
};

struct ModelRanks {
  std::string model;
  std::map<Scenario, std::size_t> ranks;
};

/// MissingScenario if a model lacks a value entry for some scenario.
std::vector<ModelRanks> scenario_ranks(std::span<const ModelScores> scores);

/// Collapses models into families (e.g. every technique of one approach): in
/// each scenario a family takes its best member's value. `family_of` runs
/// parallel to `scores`; families appear in first-seen order.
std::vector<ModelScores> best_by_family(std::span<const ModelScores> scores,
                                        std::span<const std::string> family_of);

struct OverviewRow {
  std::string model;
  std::array<std::size_t, kScenarios.size()> ranks{};
  std::size_t rank_sum = 0;
};

/// Rows ordered by ascending rank sum; equal sums keep input order.
/// MissingScenario if a model has no rank for some scenario.
std::vector<OverviewRow> rank_sum_overview(std::span<const ModelRanks> ranks);

}  // namespace scorecast
