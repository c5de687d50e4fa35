#include "scorecast/heuristics.hpp"

#include <algorithm>
#include <map>

#include "scorecast/error.hpp"

namespace scorecast {

StandingsTable::StandingsTable(std::vector<StandingsEntry> entries, TableSource source)
    : entries_(std::move(entries)), source_(source) {
  std::sort(entries_.begin(), entries_.end(), [](const StandingsEntry& a, const StandingsEntry& b) {
    if (a.points != b.points) return a.points > b.points;
    if (a.goal_difference() != b.goal_difference()) return a.goal_difference() > b.goal_difference();
    if (a.goals_for != b.goals_for) return a.goals_for > b.goals_for;
    return a.team < b.team;
  });
}

std::optional<std::size_t> StandingsTable::rank_of(const TeamName& team) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].team == team) return i + 1;
  }
  return std::nullopt;
}

const StandingsEntry* StandingsTable::find(const TeamName& team) const {
  for (const auto& e : entries_) {
    if (e.team == team) return &e;
  }
  return nullptr;
}

StandingsTable tabulate(std::span<const MatchResult> results, TableSource source) {
  std::map<TeamName, StandingsEntry> by_team;
  auto record = [&](const TeamName& team, int scored, int conceded) {
    StandingsEntry& e = by_team[team];
    e.team = team;
    ++e.played;
    e.goals_for += scored;
    e.goals_against += conceded;
    if (scored > conceded) {
      ++e.won;
      e.points += 3;
    } else if (scored == conceded) {
      ++e.drawn;
      e.points += 1;
    } else {
      ++e.lost;
    }
  };
  for (const auto& r : results) {
    record(r.home, r.score.home, r.score.away);
    record(r.away, r.score.away, r.score.home);
  }
  std::vector<StandingsEntry> entries;
  entries.reserve(by_team.size());
  for (auto& [team, e] : by_team) entries.push_back(std::move(e));
  return StandingsTable(std::move(entries), source);
}

StandingsTable build_training_table(std::span<const Fixture> training) {
  std::vector<MatchResult> results;
  for (const auto& f : training) {
    if (f.result) results.push_back({f.home_team, f.away_team, *f.result});
  }
  if (results.empty()) throw Error(ErrorKind::EmptyTrainingSet, "no completed training fixtures");
  return tabulate(results, TableSource::Actual);
}

std::string_view to_string(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::HomeWin: return "home-win";
    case Heuristic::Tradition: return "tradition";
    case Heuristic::Recency: return "recency";
  }
  return "?";
}

std::optional<Heuristic> parse_heuristic(std::string_view text) {
  if (text == "home-win" || text == "home_win") return Heuristic::HomeWin;
  if (text == "tradition") return Heuristic::Tradition;
  if (text == "recency") return Heuristic::Recency;
  return std::nullopt;
}

Scoreline home_win_predict(const Fixture&) { return {1, 0}; }

Scoreline tradition_predict(const Fixture& fixture, const StandingsTable& table) {
  const auto home = table.rank_of(fixture.home_team);
  const auto away = table.rank_of(fixture.away_team);
  bool home_higher = false;
  if (home && away) {
    home_higher = *home < *away;
  } else if (home || away) {
    home_higher = home.has_value();
  } else {
    home_higher = fixture.home_team < fixture.away_team;
  }
  return home_higher ? Scoreline{1, 0} : Scoreline{0, 1};
}

Scoreline recency_predict(const Fixture& fixture, std::span<const Fixture> history) {
  struct Latest {
    Kickoff kickoff{};
    int goals = kRecencyDefaultGoals;
    bool seen = false;
  };
  Latest home, away;
  auto consider = [](Latest& latest, Kickoff kickoff, int goals) {
    if (!latest.seen || kickoff > latest.kickoff) latest = {kickoff, goals, true};
  };
  for (const auto& f : history) {
    if (!f.result || f.kickoff >= fixture.kickoff) continue;
    for (const Side side : {Side::Home, Side::Away}) {
      const int goals = side == Side::Home ? f.result->home : f.result->away;
      if (f.team(side) == fixture.home_team) consider(home, f.kickoff, goals);
      if (f.team(side) == fixture.away_team) consider(away, f.kickoff, goals);
    }
  }
  return {home.goals, away.goals};
}

}  // namespace scorecast
