// Reference values produced by tests/oracles/compute_oracles.py (pandas,
// scipy and scikit-learn) on data/sample with an 8-fixture test split.

#include <gtest/gtest.h>

#include "scorecast/evaluate.hpp"
#include "scorecast/heuristics.hpp"
#include "scorecast/predict.hpp"
#include "test_support.hpp"

namespace scorecast {
namespace {

using testing::sample;

PredictionSet home_win() {
  return predict_heuristic(Heuristic::HomeWin, sample().test(), {sample().train(), sample().fixtures});
}

void expect_points(const StandingsTable& table,
                   const std::vector<std::pair<std::string, int>>& expected) {
  ASSERT_EQ(table.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(table.entries()[i].team, expected[i].first) << "position " << i + 1;
    EXPECT_EQ(table.entries()[i].points, expected[i].second) << expected[i].first;
  }
}

TEST(SampleOracle, HomeWinFitness) {
  const auto set = home_win();
  const auto home = fitness(set, Side::Home);
  EXPECT_DOUBLE_EQ(home.mae, 1.5);
  EXPECT_DOUBLE_EQ(home.rmse, 2.1213203435596424);
  EXPECT_DOUBLE_EQ(*home.r2, -0.2857142857142858);
  const auto away = fitness(set, Side::Away);
  EXPECT_DOUBLE_EQ(away.mae, 1.125);
  EXPECT_DOUBLE_EQ(away.rmse, 1.695582495781317);
  EXPECT_DOUBLE_EQ(*away.r2, -0.7864077669902914);
}

TEST(SampleOracle, ActualTestTable) {
  expect_points(actual_standings(sample().test()),
                {{"Arsenal", 6},
                 {"Chelsea", 6},
                 {"Norwich", 6},
                 {"Liverpool", 3},
                 {"Leeds", 3},
                 {"Brentford", 0},
                 {"Fulham", 0},
                 {"Everton", 0}});
}

TEST(SampleOracle, HomeWinPredictedTable) {
  const auto set = home_win();
  expect_points(simulate_standings(set.predictions),
                {{"Leeds", 6},
                 {"Liverpool", 6},
                 {"Norwich", 6},
                 {"Arsenal", 3},
                 {"Brentford", 3},
                 {"Chelsea", 0},
                 {"Everton", 0},
                 {"Fulham", 0}});
}

TEST(SampleOracle, HomeWinTauAndZones) {
  const auto set = home_win();
  const auto predicted = simulate_standings(set.predictions);
  const auto actual = actual_standings(std::span<const ScorelinePrediction>(set.predictions));
  EXPECT_DOUBLE_EQ(*kendall_tau(predicted, actual), 0.28571428571428575);
  EXPECT_DOUBLE_EQ(zone_accuracy(predicted, actual, Zone::Top4), 75.0);
  EXPECT_DOUBLE_EQ(zone_accuracy(predicted, actual, Zone::Bottom3), 200.0 / 3.0);
}

TEST(SampleOracle, HomeWinBettingLedger) {
  const auto ledger = bet_run(home_win().predictions, sample().odds);
  EXPECT_NEAR(ledger.net_earnings, 1.5500000000000007, 1e-12);
  EXPECT_EQ(ledger.bets_placed, 8u);
  EXPECT_EQ(ledger.bets_won, 1u);
}

}  // namespace
}  // namespace scorecast
