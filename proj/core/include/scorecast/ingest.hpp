#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "scorecast/types.hpp"

namespace scorecast {

inline constexpr std::size_t kLineupSize = 11;

struct Fixture {
  FixtureId id;
  std::string season;
  Kickoff kickoff{};
  TeamName home_team;
  TeamName away_team;
  std::optional<Scoreline> result;  // absent for fixtures not yet played
  std::vector<PlayerId> home_lineup;  // empty when not recorded
  std::vector<PlayerId> away_lineup;

  bool has_lineups() const { return !home_lineup.empty() && !away_lineup.empty(); }
  const TeamName& team(Side side) const { return side == Side::Home ? home_team : away_team; }
  const std::vector<PlayerId>& lineup(Side side) const {
    return side == Side::Home ? home_lineup : away_lineup;
  }
  /// Actual goals for one side; throws EmptyInput if the fixture has no result.
  int goals(Side side) const;
};

struct PlayerMatchStats {
  PlayerId player_id;
  FixtureId fixture_id;
  PositionGroup group = PositionGroup::GK;
  std::map<std::string, double> stats;
  // Joined from the fixture at load time.
  std::optional<TeamName> team;
  Kickoff kickoff{};
  std::string season;

  std::optional<double> stat(const std::string& name) const;
};

/// Immutable-after-load archive of per-player match records, kept in kickoff order.
class StatsArchive {
 public:
  StatsArchive() = default;
  explicit StatsArchive(std::vector<PlayerMatchStats> records);

  std::span<const PlayerMatchStats> records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  const PlayerMatchStats* find(const PlayerId& player, const FixtureId& fixture) const;
  /// Indices into records() for one player, in kickoff order.
  std::span<const std::size_t> player_records(const PlayerId& player) const;
  std::size_t player_count() const { return by_player_.size(); }

  /// Copy holding only records with kickoff strictly before `cutoff`.
  StatsArchive truncated_before(Kickoff cutoff) const;

 private:
  std::vector<PlayerMatchStats> records_;
  std::unordered_map<PlayerId, std::vector<std::size_t>> by_player_;
};

struct OddsRecord {
  FixtureId fixture_id;
  std::map<Scoreline, double> scoreline_odds;

  std::optional<double> quote(Scoreline scoreline) const;
};

using OddsBook = std::map<FixtureId, OddsRecord>;

/// Season labels ordered by the kickoff of their first fixture.
class SeasonCalendar {
 public:
  SeasonCalendar() = default;
  explicit SeasonCalendar(std::span<const Fixture> fixtures);

  /// The season immediately before `season`. Labels the calendar has never
  /// seen resolve to the latest known season that started before `kickoff`.
  std::optional<std::string> previous(const std::string& season, Kickoff kickoff) const;
  const std::vector<std::string>& ordered() const { return order_; }

 private:
  std::vector<std::string> order_;
  std::vector<Kickoff> starts_;
};

struct FixtureLoadOptions {
  bool require_result = true;
};

std::vector<Fixture> read_fixtures(std::istream& in, FixtureLoadOptions options = {});
std::vector<Fixture> load_fixtures(const std::filesystem::path& path,
                                   FixtureLoadOptions options = {});

/// The optional `team` column overrides lineup membership for attributing a
/// record to a squad.
StatsArchive read_player_stats(std::istream& in, std::span<const Fixture> fixtures);
StatsArchive load_player_stats(const std::filesystem::path& path,
                               std::span<const Fixture> fixtures);

OddsBook read_odds(std::istream& in, std::span<const Fixture> fixtures);
OddsBook load_odds(const std::filesystem::path& path, std::span<const Fixture> fixtures);

void write_fixtures(std::ostream& out, std::span<const Fixture> fixtures);
void write_player_stats(std::ostream& out, const StatsArchive& archive);
void write_odds(std::ostream& out, const OddsBook& odds);

struct Split {
  std::span<const Fixture> train;
  std::span<const Fixture> test;
};

/// `fixtures` must already be in kickoff order (as returned by load_fixtures).
Split chronological_split(std::span<const Fixture> fixtures, std::size_t test_size);

struct Dataset {
  std::vector<Fixture> fixtures;
  StatsArchive stats;
  OddsBook odds;
  SeasonCalendar seasons;
  std::size_t split_index = 0;

  std::span<const Fixture> train() const {
    return std::span<const Fixture>(fixtures).first(split_index);
  }
  std::span<const Fixture> test() const {
    return std::span<const Fixture>(fixtures).subspan(split_index);
  }
  const Fixture* find_fixture(const FixtureId& id) const;
};

/// Loads fixtures.csv, player_stats.csv and odds.csv from `dir` and splits off
/// the last `test_size` fixtures.
Dataset load_dataset(const std::filesystem::path& dir, std::size_t test_size);

}  // namespace scorecast
