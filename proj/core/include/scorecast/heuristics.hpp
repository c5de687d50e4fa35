#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scorecast/ingest.hpp"

namespace scorecast {

struct StandingsEntry {
  TeamName team;
  int played = 0;
  int won = 0;
  int drawn = 0;
  int lost = 0;
  int goals_for = 0;
  int goals_against = 0;
  int points = 0;

  int goal_difference() const { return goals_for - goals_against; }
};

enum class TableSource { Actual, Predicted };

/// League table ordered by points, goal difference and goals for (all
/// descending), then team name.
class StandingsTable {
 public:
  StandingsTable() = default;
  StandingsTable(std::vector<StandingsEntry> entries, TableSource source);

  const std::vector<StandingsEntry>& entries() const { return entries_; }
  TableSource source() const { return source_; }
  std::size_t size() const { return entries_.size(); }
  /// 1-based position, or nullopt for a team not in the table.
  std::optional<std::size_t> rank_of(const TeamName& team) const;
  const StandingsEntry* find(const TeamName& team) const;

 private:
  std::vector<StandingsEntry> entries_;
  TableSource source_ = TableSource::Actual;
};

struct MatchResult {
  TeamName home;
  TeamName away;
  Scoreline score;
};

StandingsTable tabulate(std::span<const MatchResult> results, TableSource source);

/// Table over the actual results of `training`; fixtures without a result are
/// ignored. EmptyTrainingSet if no fixture has a result.
StandingsTable build_training_table(std::span<const Fixture> training);

enum class Heuristic { HomeWin, Tradition, Recency };

inline constexpr std::array<Heuristic, 3> kHeuristics = {Heuristic::HomeWin, Heuristic::Tradition,
                                                         Heuristic::Recency};

std::string_view to_string(Heuristic heuristic);
/// Accepts "home-win"/"home_win", "tradition", "recency".
std::optional<Heuristic> parse_heuristic(std::string_view text);

Scoreline home_win_predict(const Fixture& fixture);

/// 1:0 to whichever side sits higher in `table`. Teams absent from the table
/// rank below every listed team, and alphabetically among themselves.
Scoreline tradition_predict(const Fixture& fixture, const StandingsTable& table);

inline constexpr int kRecencyDefaultGoals = 1;

/// Each team's goals in its latest completed match in `history` that kicked
/// off strictly before `fixture`.
Scoreline recency_predict(const Fixture& fixture, std::span<const Fixture> history);

}  // namespace scorecast
