#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scorecast/ingest.hpp"
#include "scorecast/schema.hpp"

namespace scorecast {

enum class Approach { Players, LineupStats, TeamStats };
inline constexpr std::array<Approach, 3> kApproaches = {Approach::Players, Approach::LineupStats,
                                                        Approach::TeamStats};

std::string_view to_string(Approach approach);
/// Accepts "players", "lineup-stats"/"lineup_stats", "team-stats"/"team_stats".
std::optional<Approach> parse_approach(std::string_view text);

/// Records that may inform a fixture's features: the fixture's season before
/// kickoff plus the whole of the previous season.
struct AggregationWindow {
  Kickoff before{};
  std::string season;
  std::optional<std::string> previous_season;

  bool contains(const PlayerMatchStats& record) const;
};

AggregationWindow window_for(const Fixture& fixture, const SeasonCalendar& seasons);

/// Per-stat mean over one player's records inside a window.
struct FormAverage {
  PositionGroup group;  // group of the player's most recent record in the window
  std::size_t matches = 0;
  std::map<std::string, double> mean;
};

std::optional<FormAverage> player_form_average(const PlayerId& player,
                                               const AggregationWindow& window,
                                               const StatsArchive& archive);

struct GroupAggregate {
  std::vector<double> values;
  std::vector<bool> fallback;  // true where the league-wide mean was substituted
  std::size_t contributors = 0;
};

/// Mean of the players' form averages over `stats`, restricted to players whose
/// latest group is `group`. Stats no contributing player has fall back to the
/// league mean of (group, stat) over the window; EmptyGroup if that is empty too.
GroupAggregate group_aggregate(std::span<const PlayerId> players, PositionGroup group,
                               std::span<const std::string> stats,
                               const AggregationWindow& window, const StatsArchive& archive);

struct FeatureRow {
  FixtureId fixture_id;
  Side side = Side::Home;
  std::vector<double> values;
  std::optional<int> target;  // goals scored by `side`; absent for unplayed fixtures
  std::vector<std::size_t> fallback_features;
  std::size_t unknown_players = 0;  // players approach: lineup players outside the universe
};

struct FeatureContext {
  const FeatureSchema& schema;
  const StatsArchive& archive;
  const SeasonCalendar& seasons;
  std::span<const PlayerId> universe;  // sorted; players approach only
};

FeatureRow assemble_lineup_features(const Fixture& fixture, Side side, const FeatureContext& ctx);
FeatureRow assemble_team_features(const Fixture& fixture, Side side, const FeatureContext& ctx);
FeatureRow encode_players(const Fixture& fixture, Side side, std::span<const PlayerId> universe);

/// Sorted distinct ids of every player named in a lineup of `training`.
std::vector<PlayerId> player_universe(std::span<const Fixture> training);

FeatureRow build_row(const Fixture& fixture, Approach approach, Side side,
                     const FeatureContext& ctx);
std::vector<std::string> feature_names(Approach approach, Side side, const FeatureContext& ctx);
std::uint64_t feature_fingerprint(Approach approach, Side side, const FeatureContext& ctx);

struct SkippedFixture {
  FixtureId fixture_id;
  std::string reason;
};

struct FeatureMatrix {
  Approach approach = Approach::LineupStats;
  Side side = Side::Home;
  std::vector<std::string> feature_names;
  std::uint64_t fingerprint = 0;
  std::vector<FeatureRow> rows;
  std::vector<SkippedFixture> skipped;

  std::size_t width() const { return feature_names.size(); }
};

/// One row per buildable fixture, in input order. Row-level data errors land
/// in `skipped`; EmptyMatrix if nothing could be built.
FeatureMatrix build_matrix(std::span<const Fixture> fixtures, Approach approach, Side side,
                           const FeatureContext& ctx);

void write_matrix_csv(std::ostream& out, const FeatureMatrix& matrix);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace scorecast
