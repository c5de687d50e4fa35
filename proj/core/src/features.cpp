#include "scorecast/features.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "scorecast/csv.hpp"
#include "scorecast/error.hpp"

namespace scorecast {

std::string_view to_string(Approach approach) {
  switch (approach) {
    case Approach::Players: return "players";
    case Approach::LineupStats: return "lineup-stats";
    case Approach::TeamStats: return "team-stats";
  }
  return "?";
}

std::optional<Approach> parse_approach(std::string_view text) {
  if (text == "players") return Approach::Players;
  if (text == "lineup-stats" || text == "lineup_stats") return Approach::LineupStats;
  if (text == "team-stats" || text == "team_stats") return Approach::TeamStats;
  return std::nullopt;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool AggregationWindow::contains(const PlayerMatchStats& record) const {
  if (record.kickoff >= before) return false;
  return record.season == season || (previous_season && record.season == *previous_season);
}

AggregationWindow window_for(const Fixture& fixture, const SeasonCalendar& seasons) {
  return {fixture.kickoff, fixture.season, seasons.previous(fixture.season, fixture.kickoff)};
}

std::optional<FormAverage> player_form_average(const PlayerId& player,
                                               const AggregationWindow& window,
                                               const StatsArchive& archive) {
  const auto records = archive.records();
  FormAverage form;
  std::map<std::string, std::size_t> counts;
  for (std::size_t idx : archive.player_records(player)) {
    const PlayerMatchStats& rec = records[idx];
    if (!window.contains(rec)) continue;
    ++form.matches;
    form.group = rec.group;  // records are in kickoff order, so the last one wins
    for (const auto& [name, value] : rec.stats) {
      form.mean[name] += value;
      ++counts[name];
    }
  }
  if (form.matches == 0) return std::nullopt;
  for (auto& [name, sum] : form.mean) sum /= static_cast<double>(counts[name]);
  return form;
}

namespace {

using FormCache = std::unordered_map<PlayerId, std::optional<FormAverage>>;

const std::optional<FormAverage>& cached_form(FormCache& cache, const PlayerId& player,
                                              const AggregationWindow& window,
                                              const StatsArchive& archive) {
  auto it = cache.find(player);
  if (it == cache.end()) {
    it = cache.emplace(player, player_form_average(player, window, archive)).first;
  }
  return it->second;
}

std::optional<double> league_mean(PositionGroup group, const std::string& stat,
                                  const AggregationWindow& window, const StatsArchive& archive) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& rec : archive.records()) {
    if (rec.group != group || !window.contains(rec)) continue;
    if (auto v = rec.stat(stat)) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

GroupAggregate aggregate_forms(std::span<const PlayerId> players, PositionGroup group,
                               std::span<const std::string> stats,
                               const AggregationWindow& window, const StatsArchive& archive,
                               FormCache& cache) {
  std::vector<const FormAverage*> members;
  for (const auto& p : players) {
    const auto& form = cached_form(cache, p, window, archive);
    if (form && form->group == group) members.push_back(&*form);
  }
  GroupAggregate out;
  out.contributors = members.size();
  out.values.reserve(stats.size());
  out.fallback.reserve(stats.size());
  for (const auto& stat : stats) {
    double sum = 0;
    std::size_t n = 0;
    for (const FormAverage* form : members) {
      if (auto it = form->mean.find(stat); it != form->mean.end()) {
        sum += it->second;
        ++n;
      }
    }
    if (n > 0) {
      out.values.push_back(sum / static_cast<double>(n));
      out.fallback.push_back(false);
      continue;
    }
    const auto prior = league_mean(group, stat, window, archive);
    if (!prior) {
      throw Error(ErrorKind::EmptyGroup, std::string(to_string(group)) + " (no " + stat +
                                             " records before kickoff)");
    }
    out.values.push_back(*prior);
    out.fallback.push_back(true);
  }
  return out;
}

/// Fills the 52 columns for `side` given the player pools representing each team.
FeatureRow assemble_from_pools(const Fixture& fixture, Side side, std::span<const PlayerId> own,
                               std::span<const PlayerId> opponent, const FeatureContext& ctx) {
  const AggregationWindow window = window_for(fixture, ctx.seasons);
  FormCache cache;
  FeatureRow row;
  row.fixture_id = fixture.id;
  row.side = side;
  row.values.reserve(ctx.schema.width());
  if (fixture.result) row.target = fixture.goals(side);
  for (const auto& block : ctx.schema.blocks()) {
    const auto pool = block.role == BlockRole::Offense ? own : opponent;
    const GroupAggregate agg =
        aggregate_forms(pool, block.group, block.stats, window, ctx.archive, cache);
    for (std::size_t i = 0; i < agg.values.size(); ++i) {
      if (agg.fallback[i]) row.fallback_features.push_back(row.values.size());
      row.values.push_back(agg.values[i]);
    }
  }
  return row;
}

void require_lineups(const Fixture& fixture) {
  if (!fixture.has_lineups()) throw Error(ErrorKind::MissingLineup, fixture.id);
}

std::vector<PlayerId> squad(const TeamName& team, const AggregationWindow& window,
                            const StatsArchive& archive) {
  bool known = false;
  std::set<PlayerId> members;
  for (const auto& rec : archive.records()) {
    if (rec.kickoff >= window.before || rec.team != team) continue;
    known = true;
    if (window.contains(rec)) members.insert(rec.player_id);
  }
  if (!known) throw Error(ErrorKind::UnknownTeam, team);
  return {members.begin(), members.end()};
}

}  // namespace

GroupAggregate group_aggregate(std::span<const PlayerId> players, PositionGroup group,
                               std::span<const std::string> stats,
                               const AggregationWindow& window, const StatsArchive& archive) {
  FormCache cache;
  return aggregate_forms(players, group, stats, window, archive, cache);
}

FeatureRow assemble_lineup_features(const Fixture& fixture, Side side, const FeatureContext& ctx) {
  require_lineups(fixture);
  return assemble_from_pools(fixture, side, fixture.lineup(side), fixture.lineup(opposite(side)),
                             ctx);
}

FeatureRow assemble_team_features(const Fixture& fixture, Side side, const FeatureContext& ctx) {
  const AggregationWindow window = window_for(fixture, ctx.seasons);
  const auto own = squad(fixture.team(side), window, ctx.archive);
  const auto opponent = squad(fixture.team(opposite(side)), window, ctx.archive);
  return assemble_from_pools(fixture, side, own, opponent, ctx);
}

FeatureRow encode_players(const Fixture& fixture, Side side, std::span<const PlayerId> universe) {
  require_lineups(fixture);
  FeatureRow row;
  row.fixture_id = fixture.id;
  row.side = side;
  row.values.assign(universe.size(), 0.0);
  if (fixture.result) row.target = fixture.goals(side);
  auto mark = [&](const std::vector<PlayerId>& lineup, double value) {
    for (const auto& p : lineup) {
      auto it = std::lower_bound(universe.begin(), universe.end(), p);
      if (it != universe.end() && *it == p) {
        row.values[static_cast<std::size_t>(it - universe.begin())] = value;
      } else {
        ++row.unknown_players;
      }
    }
  };
  mark(fixture.home_lineup, 1.0);
  mark(fixture.away_lineup, -1.0);
  return row;
}

std::vector<PlayerId> player_universe(std::span<const Fixture> training) {
  std::set<PlayerId> ids;
  for (const auto& f : training) {
    ids.insert(f.home_lineup.begin(), f.home_lineup.end());
    ids.insert(f.away_lineup.begin(), f.away_lineup.end());
  }
  return {ids.begin(), ids.end()};
}

FeatureRow build_row(const Fixture& fixture, Approach approach, Side side,
                     const FeatureContext& ctx) {
  switch (approach) {
    case Approach::Players: return encode_players(fixture, side, ctx.universe);
    case Approach::LineupStats: return assemble_lineup_features(fixture, side, ctx);
    case Approach::TeamStats: return assemble_team_features(fixture, side, ctx);
  }
  throw Error(ErrorKind::Config, "unknown approach");
}

std::vector<std::string> feature_names(Approach approach, Side side, const FeatureContext& ctx) {
  if (approach == Approach::Players) {
    std::vector<std::string> names;
    names.reserve(ctx.universe.size());
    for (const auto& p : ctx.universe) names.push_back("player_" + p);
    return names;
  }
  return ctx.schema.feature_names(side);
}

std::uint64_t feature_fingerprint(Approach approach, Side side, const FeatureContext& ctx) {
  std::string text = std::string(to_string(approach)) + "|" + std::string(to_string(side));
  for (const auto& name : feature_names(approach, side, ctx)) text += "|" + name;
  return fnv1a(text);
}

FeatureMatrix build_matrix(std::span<const Fixture> fixtures, Approach approach, Side side,
                           const FeatureContext& ctx) {
  FeatureMatrix m;
  m.approach = approach;
  m.side = side;
  m.feature_names = feature_names(approach, side, ctx);
  m.fingerprint = feature_fingerprint(approach, side, ctx);
  for (const auto& f : fixtures) {
    try {
      m.rows.push_back(build_row(f, approach, side, ctx));
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::MissingLineup:
        case ErrorKind::EmptyGroup:
        case ErrorKind::UnknownTeam:
          m.skipped.push_back({f.id, e.what()});
          break;
        default:
          throw;
      }
    }
  }
  if (m.rows.empty()) {
    throw Error(ErrorKind::EmptyMatrix, std::string(to_string(approach)) + "/" +
                                            std::string(to_string(side)) + ": no buildable rows");
  }
  return m;
}

void write_matrix_csv(std::ostream& out, const FeatureMatrix& matrix) {
  csv::Row header{"fixture_id", "side", "target"};
  header.insert(header.end(), matrix.feature_names.begin(), matrix.feature_names.end());
  csv::write_row(out, header);
  for (const auto& row : matrix.rows) {
    csv::Row cells{row.fixture_id, std::string(to_string(row.side)),
                   row.target ? std::to_string(*row.target) : ""};
    for (double v : row.values) cells.push_back(csv::format_double(v));
    csv::write_row(out, cells);
  }
}

}  // namespace scorecast
