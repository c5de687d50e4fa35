#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "scorecast/heuristics.hpp"
#include "test_support.hpp"

namespace scorecast {
namespace {

using testing::fixture;
using testing::kind_of;
using testing::sample;

/// Table in the given finishing order.
StandingsTable ladder(const std::vector<std::string>& teams) {
  std::vector<StandingsEntry> entries;
  int points = static_cast<int>(teams.size()) * 3;
  for (const auto& t : teams) {
    StandingsEntry e;
    e.team = t;
    e.points = points;
    points -= 3;
    entries.push_back(e);
  }
  return StandingsTable(entries, TableSource::Actual);
}

TEST(HomeWin, AlwaysOneNil) {
  for (const auto& f : sample().fixtures) EXPECT_EQ(home_win_predict(f), (Scoreline{1, 0}));
  EXPECT_EQ(home_win_predict(fixture("X", "2030-01-01", "A", "B")), (Scoreline{1, 0}));
}

TEST(Tradition, HigherPlacedTeamWinsOneNil) {
  const auto table = ladder({"Liverpool", "Man City", "Chelsea", "Arsenal", "Spurs", "Man Utd",
                             "Wolves", "West Ham"});
  EXPECT_EQ(table.rank_of("Chelsea"), 3u);
  EXPECT_EQ(table.rank_of("West Ham"), 8u);
  EXPECT_EQ(tradition_predict(fixture("a", "2022-01-01", "Chelsea", "West Ham"), table),
            (Scoreline{1, 0}));
  EXPECT_EQ(tradition_predict(fixture("b", "2022-01-01", "West Ham", "Chelsea"), table),
            (Scoreline{0, 1}));
}

TEST(Tradition, UnknownTeamsRankBelowKnownOnes) {
  const auto table = ladder({"A", "B"});
  EXPECT_FALSE(table.rank_of("Norwich").has_value());
  EXPECT_EQ(tradition_predict(fixture("a", "2022-01-01", "Norwich", "B"), table), (Scoreline{0, 1}));
  EXPECT_EQ(tradition_predict(fixture("b", "2022-01-01", "B", "Norwich"), table), (Scoreline{1, 0}));
  EXPECT_EQ(tradition_predict(fixture("c", "2022-01-01", "Watford", "Norwich"), table),
            (Scoreline{0, 1}));
  EXPECT_EQ(tradition_predict(fixture("d", "2022-01-01", "Norwich", "Watford"), table),
            (Scoreline{1, 0}));
}

TEST(Recency, RepeatsEachTeamsLastGoals) {
  const std::vector<Fixture> history = {
      fixture("1", "2021-08-14", "Arsenal", "Brentford", Scoreline{1, 0}),
      fixture("2", "2021-08-14", "Leeds", "Chelsea", Scoreline{1, 3}),
  };
  const auto next = fixture("3", "2021-08-21", "Arsenal", "Chelsea");
  EXPECT_EQ(recency_predict(next, history), (Scoreline{1, 3}));
}

TEST(Recency, UsesOnlyStrictlyEarlierCompletedMatches) {
  const std::vector<Fixture> history = {
      fixture("1", "2021-08-14", "A", "B", Scoreline{4, 2}),
      fixture("2", "2021-08-21", "C", "A", Scoreline{0, 2}),
      fixture("3", "2021-08-28", "A", "D", Scoreline{9, 9}),
      fixture("4", "2021-08-28", "B", "E"),
  };
  const auto f = fixture("5", "2021-08-28", "A", "B");
  EXPECT_EQ(recency_predict(f, history), (Scoreline{2, 2}));
  const auto newcomer = fixture("6", "2021-09-01", "Z", "B");
  EXPECT_EQ(recency_predict(newcomer, history), (Scoreline{kRecencyDefaultGoals, 2}));
}

TEST(Recency, SampleTrace) {
  const Fixture& f020 = *sample().find_fixture("F020");
  EXPECT_EQ(f020.home_team, "Burnley");
  EXPECT_EQ(f020.away_team, "Brentford");
  EXPECT_EQ(recency_predict(f020, sample().fixtures), (Scoreline{0, 0}));
}

TEST(Recency, NoLookahead) {
  // Appending later results never changes a prediction.
  const auto& all = sample().fixtures;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::span<const Fixture> prefix(all.data(), i);
    EXPECT_EQ(recency_predict(all[i], prefix), recency_predict(all[i], all)) << all[i].id;
  }
}

TEST(Standings, PointsAndDrawRule) {
  const std::vector<MatchResult> results = {
      {"A", "B", {2, 0}}, {"B", "C", {1, 1}}, {"C", "A", {3, 1}}, {"A", "B", {0, 0}}};
  const auto table = tabulate(results, TableSource::Predicted);
  EXPECT_EQ(table.source(), TableSource::Predicted);
  const auto* a = table.find("A");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->played, 3);
  EXPECT_EQ(a->won, 1);
  EXPECT_EQ(a->drawn, 1);
  EXPECT_EQ(a->lost, 1);
  EXPECT_EQ(a->points, 4);
  EXPECT_EQ(a->goals_for, 3);
  EXPECT_EQ(a->goals_against, 3);
  EXPECT_EQ(table.find("B")->points, 2);
  EXPECT_EQ(table.find("C")->points, 4);
  // A and C level on points; C ahead on goal difference.
  EXPECT_EQ(table.entries()[0].team, "C");
  EXPECT_EQ(table.entries()[1].team, "A");
  EXPECT_EQ(table.entries()[2].team, "B");
}

TEST(Standings, TieBreakOrder) {
  const std::vector<MatchResult> results = {
      {"P", "X", {3, 1}},  // P: 3 pts, gd +2, gf 3
      {"Q", "Y", {2, 0}},  // Q: 3 pts, gd +2, gf 2
      {"R", "Z", {2, 0}},  // R: identical to Q, name decides
  };
  const auto table = tabulate(results, TableSource::Actual);
  EXPECT_EQ(table.entries()[0].team, "P");
  EXPECT_EQ(table.entries()[1].team, "Q");
  EXPECT_EQ(table.entries()[2].team, "R");
  EXPECT_EQ(table.rank_of("Z"), 6u);
}

TEST(Standings, PointsSumInvariant) {
  // Each match hands out 3 points, or 2 when drawn.
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> goals(0, 4);
  std::uniform_int_distribution<int> team(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<MatchResult> results;
    int expected = 0;
    int goal_diff_sum = 0;
    for (int m = 0; m < 30; ++m) {
      const int h = team(rng);
      int a = team(rng);
      if (a == h) a = (a + 1) % 10;
      const Scoreline s{goals(rng), goals(rng)};
      results.push_back({"T" + std::to_string(h), "T" + std::to_string(a), s});
      expected += s.home == s.away ? 2 : 3;
    }
    const auto table = tabulate(results, TableSource::Actual);
    int total = 0;
    for (const auto& e : table.entries()) {
      total += e.points;
      goal_diff_sum += e.goal_difference();
      EXPECT_EQ(e.points, 3 * e.won + e.drawn);
      EXPECT_EQ(e.played, e.won + e.drawn + e.lost);
    }
    EXPECT_EQ(total, expected);
    EXPECT_EQ(goal_diff_sum, 0);
  }
}

TEST(TrainingTable, SampleMatchesIndependentTally) {
  const auto table = build_training_table(sample().train());
  struct Row {
    const char* team;
    int points, gf, ga;
  };
  const std::vector<Row> expected = {
      {"Chelsea", 20, 18, 7},  {"Arsenal", 17, 18, 9},   {"Liverpool", 15, 16, 6},
      {"Leeds", 10, 6, 9},     {"Fulham", 10, 7, 15},    {"Everton", 8, 9, 11},
      {"Brentford", 7, 9, 14}, {"Burnley", 4, 3, 14},    {"Norwich", 0, 1, 2},
  };
  ASSERT_EQ(table.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& e = table.entries()[i];
    EXPECT_EQ(e.team, expected[i].team);
    EXPECT_EQ(e.points, expected[i].points);
    EXPECT_EQ(e.goals_for, expected[i].gf);
    EXPECT_EQ(e.goals_against, expected[i].ga);
  }
}

TEST(TrainingTable, IgnoresUnplayedAndRejectsEmpty) {
  std::vector<Fixture> fixtures = {fixture("1", "2021-08-14", "A", "B")};
  EXPECT_EQ(kind_of([&] { build_training_table(fixtures); }), ErrorKind::EmptyTrainingSet);
  EXPECT_EQ(kind_of([&] { build_training_table({}); }), ErrorKind::EmptyTrainingSet);
  fixtures.push_back(fixture("2", "2021-08-15", "C", "D", Scoreline{0, 1}));
  const auto table = build_training_table(fixtures);
  EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ(table.entries()[0].team, "D");
}

TEST(Heuristic, NamesRoundTrip) {
  for (Heuristic h : kHeuristics) EXPECT_EQ(parse_heuristic(to_string(h)), h);
  EXPECT_EQ(parse_heuristic("home_win"), Heuristic::HomeWin);
  EXPECT_EQ(to_string(Heuristic::HomeWin), "home-win");
  EXPECT_FALSE(parse_heuristic("coin-flip"));
}

}  // namespace
}  // namespace scorecast
