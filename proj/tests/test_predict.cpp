#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "scorecast/predict.hpp"
#include "test_support.hpp"

namespace scorecast {
namespace {

using testing::default_schema;
using testing::kind_of;
using testing::sample;

struct Pair {
  TrainedModel home;
  TrainedModel away;
};

FeatureContext context(std::span<const PlayerId> universe = {}) {
  return {default_schema(), sample().stats, sample().seasons, universe};
}

Pair train(Approach approach, Technique technique, const FeatureContext& ctx) {
  Pair pair;
  for (const Side side : {Side::Home, Side::Away}) {
    const auto m = build_matrix(sample().train(), approach, side, ctx);
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (const auto& r : m.rows) {
      rows.push_back(r.values);
      y.push_back(*r.target);
    }
    RegressorSpec spec;
    spec.technique = technique;
    (side == Side::Home ? pair.home : pair.away) = fit(spec, Matrix::from_rows(rows), y, m.fingerprint);
  }
  return pair;
}

TEST(RoundGoals, HalfUpWithNegativeClamp) {
  EXPECT_EQ(round_goals(0.0), 0);
  EXPECT_EQ(round_goals(0.49), 0);
  EXPECT_EQ(round_goals(0.5), 1);
  EXPECT_EQ(round_goals(1.5), 2);
  EXPECT_EQ(round_goals(2.5), 3);
  EXPECT_EQ(round_goals(2.4999), 2);
  EXPECT_EQ(round_goals(-0.3), 0);
  EXPECT_EQ(round_goals(-7.0), 0);
  EXPECT_EQ(round_goals(7.51), 8);
  EXPECT_EQ(kind_of([] { round_goals(std::numeric_limits<double>::quiet_NaN()); }),
            ErrorKind::NonFinite);
  EXPECT_EQ(kind_of([] { round_goals(std::numeric_limits<double>::infinity()); }),
            ErrorKind::NonFinite);
}

TEST(RoundGoals, MonotoneAndWithinHalf) {
  int previous = 0;
  for (double v = -3.0; v <= 9.0; v += 0.01) {
    const int r = round_goals(v);
    EXPECT_GE(r, previous);
    EXPECT_GE(r, 0);
    if (v >= 0) EXPECT_LE(std::abs(r - v), 0.5 + 1e-12);
    previous = r;
  }
}

TEST(MakePrediction, RoundsEachSide) {
  const Fixture& f = *sample().find_fixture("F033");
  const auto p = make_prediction(f, "m", 1.7, 0.2);
  EXPECT_EQ(p.predicted(), (Scoreline{2, 0}));
  EXPECT_DOUBLE_EQ(p.raw_home, 1.7);
  EXPECT_EQ(p.actual(), f.result);
  EXPECT_EQ(p.home_team, "Brentford");
  const auto upcoming = make_prediction(testing::fixture("U", "2030-01-01", "A", "B"), "m", 0, 0);
  EXPECT_FALSE(upcoming.actual());
}

TEST(PredictHeuristic, HomeWinAdapter) {
  const auto set = predict_heuristic(Heuristic::HomeWin, sample().test(),
                                     {sample().train(), sample().fixtures});
  EXPECT_EQ(set.model, "home-win");
  ASSERT_EQ(set.predictions.size(), 8u);
  for (const auto& p : set.predictions) {
    EXPECT_EQ(p.predicted(), (Scoreline{1, 0}));
    EXPECT_EQ(p.raw_home, 1.0);
    EXPECT_EQ(p.raw_away, 0.0);
  }
  EXPECT_EQ(kind_of([] { predict_heuristic(Heuristic::HomeWin, {}, {}); }), ErrorKind::EmptyTestSet);
}

TEST(PredictScorelines, MatchesManualTrace) {
  const FeatureContext ctx = context();
  const Pair pair = train(Approach::LineupStats, Technique::LR, ctx);
  const auto set = predict_scorelines(pair.home, pair.away, sample().test(), ctx,
                                      Approach::LineupStats, "lineup-stats-lr");
  ASSERT_EQ(set.predictions.size(), 8u);
  EXPECT_TRUE(set.skipped.empty());
  for (std::size_t i = 0; i < 8; ++i) {
    const Fixture& f = sample().test()[i];
    const auto& p = set.predictions[i];
    const auto h = build_row(f, Approach::LineupStats, Side::Home, ctx);
    const auto a = build_row(f, Approach::LineupStats, Side::Away, ctx);
    const double rh = predict(pair.home, Matrix::from_rows({h.values}))[0];
    const double ra = predict(pair.away, Matrix::from_rows({a.values}))[0];
    EXPECT_EQ(p.fixture_id, f.id);
    EXPECT_EQ(p.model, "lineup-stats-lr");
    EXPECT_EQ(p.raw_home, rh);
    EXPECT_EQ(p.raw_away, ra);
    EXPECT_EQ(p.pred_home, rh <= 0 ? 0 : static_cast<int>(std::floor(rh + 0.5)));
    EXPECT_EQ(p.pred_away, ra <= 0 ? 0 : static_cast<int>(std::floor(ra + 0.5)));
    EXPECT_EQ(p.actual(), f.result);
  }
}

TEST(PredictScorelines, OrderIndependentAndOnePerFixture) {
  const FeatureContext ctx = context();
  const Pair pair = train(Approach::TeamStats, Technique::KNN, ctx);
  const auto forward = predict_scorelines(pair.home, pair.away, sample().fixtures, ctx,
                                          Approach::TeamStats, "team-stats-knn");
  std::vector<Fixture> reversed(sample().fixtures.rbegin(), sample().fixtures.rend());
  const auto backward = predict_scorelines(pair.home, pair.away, reversed, ctx,
                                           Approach::TeamStats, "team-stats-knn");
  std::map<FixtureId, std::pair<double, double>> a;
  for (const auto& p : forward.predictions) {
    EXPECT_TRUE(a.emplace(p.fixture_id, std::make_pair(p.raw_home, p.raw_away)).second);
  }
  ASSERT_EQ(backward.predictions.size(), a.size());
  for (const auto& p : backward.predictions) {
    EXPECT_EQ(a.at(p.fixture_id), std::make_pair(p.raw_home, p.raw_away)) << p.fixture_id;
  }
  EXPECT_EQ(forward.predictions.size() + forward.skipped.size(), sample().fixtures.size());
  std::set<FixtureId> skipped;
  for (const auto& s : forward.skipped) skipped.insert(s.fixture_id);
  EXPECT_EQ(skipped, (std::set<FixtureId>{"F001", "F002", "F003", "F004", "F029"}));
}

TEST(PredictScorelines, RejectsForeignModelsAndEmptyInput) {
  const FeatureContext ctx = context();
  const Pair pair = train(Approach::LineupStats, Technique::DTR, ctx);
  EXPECT_EQ(kind_of([&] {
              predict_scorelines(pair.home, pair.away, sample().test(), ctx, Approach::TeamStats,
                                 "x");
            }),
            ErrorKind::SchemaMismatch);
  EXPECT_EQ(kind_of([&] {
              predict_scorelines(pair.away, pair.home, sample().test(), ctx,
                                 Approach::LineupStats, "x");
            }),
            ErrorKind::SchemaMismatch);
  EXPECT_EQ(kind_of([&] {
              predict_scorelines(pair.home, pair.away, {}, ctx, Approach::LineupStats, "x");
            }),
            ErrorKind::EmptyTestSet);
}

TEST(PredictScorelines, PlayersApproachWarnsOnUnseenPlayers) {
  const auto universe = player_universe(sample().train());
  const FeatureContext ctx = context(universe);
  const Pair pair = train(Approach::Players, Technique::LR, ctx);
  Fixture f = testing::fixture("U1", "2022-09-01", "Arsenal", "Chelsea", std::nullopt, "2022");
  f.home_lineup = testing::squad_ids("NEW", 1, 11);
  f.away_lineup = testing::squad_ids("OLD", 1, 11);
  const std::vector<Fixture> fixtures = {f};
  const auto set = predict_scorelines(pair.home, pair.away, fixtures, ctx, Approach::Players, "p");
  ASSERT_EQ(set.predictions.size(), 1u);
  ASSERT_EQ(set.warnings.size(), 1u);
  EXPECT_NE(set.warnings[0].find("22"), std::string::npos);
  // An all-zero encoding leaves only the intercept.
  EXPECT_NEAR(set.predictions[0].raw_home, std::get<LinearFit>(pair.home.fit).intercept, 1e-12);
  EXPECT_FALSE(set.predictions[0].actual());
}

TEST(WritePredictions, CsvAndJson) {
  const auto set = predict_heuristic(Heuristic::Recency, sample().test(),
                                     {sample().train(), sample().fixtures});
  std::ostringstream csv;
  write_predictions_csv(csv, set.predictions);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "fixture_id,model,raw_home,raw_away,pred_home,pred_away,actual_home,actual_away");
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    const auto cells = testing::split(line, ',');
    ASSERT_EQ(cells.size(), 8u);
    const auto& p = set.predictions[n++];
    EXPECT_EQ(cells[0], p.fixture_id);
    EXPECT_EQ(cells[1], "recency");
    EXPECT_EQ(std::stoi(cells[4]), p.pred_home);
    EXPECT_EQ(std::stoi(cells[7]), *p.actual_away);
  }
  EXPECT_EQ(n, 8u);

  std::vector<ScorelinePrediction> upcoming = {
      make_prediction(testing::fixture("U", "2030-01-01", "A", "B"), "m", 0.25, 1.5)};
  std::ostringstream csv2;
  write_predictions_csv(csv2, upcoming);
  EXPECT_NE(csv2.str().find("U,m,0.25,1.5,0,2,,"), std::string::npos) << csv2.str();
  std::ostringstream json;
  write_predictions_json(json, upcoming);
  EXPECT_NE(json.str().find("\"actual_home\": null"), std::string::npos) << json.str();
}

TEST(ModelLabel, ApproachDashTechnique) {
  EXPECT_EQ(model_label(Approach::LineupStats, Technique::SVR), "lineup-stats-svr");
  EXPECT_EQ(model_label(Approach::Players, Technique::LR), "players-lr");
  EXPECT_EQ(model_label(Approach::TeamStats, Technique::RFR), "team-stats-rfr");
}

}  // namespace
}  // namespace scorecast
