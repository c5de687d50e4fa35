#include "scorecast/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "scorecast/csv.hpp"
#include "scorecast/error.hpp"

namespace scorecast {

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& reason) {
  throw Error(ErrorKind::Parse, "row " + std::to_string(line) + ": " + reason);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::optional<long> parse_int(std::string_view s) {
  s = trim(s);
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

const std::string& field(const csv::Row& row, std::size_t idx, std::size_t line,
                         std::string_view name) {
  static const std::string empty;
  if (idx >= row.size()) parse_error(line, "missing " + std::string(name));
  return row[idx];
}

std::string required_text(const csv::Row& row, std::size_t idx, std::size_t line,
                          std::string_view name) {
  std::string value(trim(field(row, idx, line, name)));
  if (value.empty()) parse_error(line, "missing " + std::string(name));
  return value;
}

std::vector<PlayerId> parse_lineup(std::string_view text, const FixtureId& fixture) {
  std::vector<PlayerId> ids;
  text = trim(text);
  if (text.empty()) return ids;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto token = trim(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (token.empty()) throw Error(ErrorKind::MalformedLineup, fixture + ": empty player id");
    ids.emplace_back(token);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (ids.size() != kLineupSize) {
    throw Error(ErrorKind::MalformedLineup,
                fixture + ": lineup has " + std::to_string(ids.size()) + " players");
  }
  std::set<PlayerId> distinct(ids.begin(), ids.end());
  if (distinct.size() != ids.size()) {
    throw Error(ErrorKind::MalformedLineup, fixture + ": repeated player id");
  }
  return ids;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

std::unordered_map<FixtureId, const Fixture*> index_fixtures(std::span<const Fixture> fixtures) {
  std::unordered_map<FixtureId, const Fixture*> index;
  for (const auto& f : fixtures) index.emplace(f.id, &f);
  return index;
}

}  // namespace

int Fixture::goals(Side side) const {
  if (!result) throw Error(ErrorKind::EmptyInput, id + ": fixture has no result");
  return side == Side::Home ? result->home : result->away;
}

std::optional<double> PlayerMatchStats::stat(const std::string& name) const {
  auto it = stats.find(name);
  if (it == stats.end()) return std::nullopt;
  return it->second;
}

StatsArchive::StatsArchive(std::vector<PlayerMatchStats> records) : records_(std::move(records)) {
  std::sort(records_.begin(), records_.end(), [](const auto& a, const auto& b) {
    if (a.kickoff != b.kickoff) return a.kickoff < b.kickoff;
    if (a.fixture_id != b.fixture_id) return a.fixture_id < b.fixture_id;
    return a.player_id < b.player_id;
  });
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (i > 0 && records_[i].player_id == records_[i - 1].player_id &&
        records_[i].fixture_id == records_[i - 1].fixture_id) {
      throw Error(ErrorKind::Parse, "duplicate record for player " + records_[i].player_id +
                                        " in fixture " + records_[i].fixture_id);
    }
    by_player_[records_[i].player_id].push_back(i);
  }
}

const PlayerMatchStats* StatsArchive::find(const PlayerId& player, const FixtureId& fixture) const {
  for (std::size_t idx : player_records(player)) {
    if (records_[idx].fixture_id == fixture) return &records_[idx];
  }
  return nullptr;
}

std::span<const std::size_t> StatsArchive::player_records(const PlayerId& player) const {
  auto it = by_player_.find(player);
  if (it == by_player_.end()) return {};
  return it->second;
}

StatsArchive StatsArchive::truncated_before(Kickoff cutoff) const {
  std::vector<PlayerMatchStats> kept;
  for (const auto& r : records_) {
    if (r.kickoff < cutoff) kept.push_back(r);
  }
  return StatsArchive(std::move(kept));
}

std::optional<double> OddsRecord::quote(Scoreline scoreline) const {
  auto it = scoreline_odds.find(scoreline);
  if (it == scoreline_odds.end()) return std::nullopt;
  return it->second;
}

SeasonCalendar::SeasonCalendar(std::span<const Fixture> fixtures) {
  std::map<std::string, Kickoff> first;
  for (const auto& f : fixtures) {
    auto [it, inserted] = first.emplace(f.season, f.kickoff);
    if (!inserted && f.kickoff < it->second) it->second = f.kickoff;
  }
  std::vector<std::pair<Kickoff, std::string>> ordered;
  for (const auto& [label, start] : first) ordered.emplace_back(start, label);
  std::sort(ordered.begin(), ordered.end());
  for (auto& [start, label] : ordered) {
    starts_.push_back(start);
    order_.push_back(std::move(label));
  }
}

std::optional<std::string> SeasonCalendar::previous(const std::string& season,
                                                    Kickoff kickoff) const {
  auto it = std::find(order_.begin(), order_.end(), season);
  if (it != order_.end()) {
    if (it == order_.begin()) return std::nullopt;
    return *(it - 1);
  }
  std::optional<std::string> latest;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (starts_[i] < kickoff) latest = order_[i];
  }
  return latest;
}

std::vector<Fixture> read_fixtures(std::istream& in, FixtureLoadOptions options) {
  csv::Reader reader(in);
  const auto c_id = reader.require_column("fixture_id");
  const auto c_season = reader.require_column("season");
  const auto c_kickoff = reader.require_column("kickoff");
  const auto c_home = reader.require_column("home_team");
  const auto c_away = reader.require_column("away_team");
  const auto c_hg = reader.require_column("home_goals");
  const auto c_ag = reader.require_column("away_goals");
  const auto c_hl = reader.column("home_lineup");
  const auto c_al = reader.column("away_lineup");

  std::vector<Fixture> fixtures;
  std::unordered_set<FixtureId> seen;
  csv::Row row;
  while (reader.next(row)) {
    const std::size_t line = reader.line_number();
    Fixture f;
    f.id = required_text(row, c_id, line, "fixture_id");
    f.season = required_text(row, c_season, line, "season");
    const auto kickoff = parse_kickoff(required_text(row, c_kickoff, line, "kickoff"));
    if (!kickoff) parse_error(line, "unparseable kickoff '" + row[c_kickoff] + "'");
    f.kickoff = *kickoff;
    f.home_team = required_text(row, c_home, line, "home_team");
    f.away_team = required_text(row, c_away, line, "away_team");
    if (f.home_team == f.away_team) parse_error(line, "home_team equals away_team");

    const std::string hg(trim(c_hg < row.size() ? row[c_hg] : std::string()));
    const std::string ag(trim(c_ag < row.size() ? row[c_ag] : std::string()));
    if (!hg.empty() || !ag.empty()) {
      const auto h = parse_int(hg);
      const auto a = parse_int(ag);
      if (!h || !a || *h < 0 || *a < 0) parse_error(line, "goals must be non-negative integers");
      f.result = Scoreline{static_cast<int>(*h), static_cast<int>(*a)};
    } else if (options.require_result) {
      parse_error(line, "missing home_goals/away_goals");
    }

    if (c_hl && *c_hl < row.size()) f.home_lineup = parse_lineup(row[*c_hl], f.id);
    if (c_al && *c_al < row.size()) f.away_lineup = parse_lineup(row[*c_al], f.id);
    if (f.home_lineup.empty() != f.away_lineup.empty()) {
      throw Error(ErrorKind::MalformedLineup, f.id + ": only one lineup recorded");
    }
    for (const auto& p : f.home_lineup) {
      if (std::find(f.away_lineup.begin(), f.away_lineup.end(), p) != f.away_lineup.end()) {
        throw Error(ErrorKind::MalformedLineup, f.id + ": player " + p + " in both lineups");
      }
    }

    if (!seen.insert(f.id).second) throw Error(ErrorKind::DuplicateFixture, f.id);
    fixtures.push_back(std::move(f));
  }
  std::stable_sort(fixtures.begin(), fixtures.end(), [](const Fixture& a, const Fixture& b) {
    if (a.kickoff != b.kickoff) return a.kickoff < b.kickoff;
    return a.id < b.id;
  });
  return fixtures;
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& path, FixtureLoadOptions options) {
  auto in = open_or_throw(path);
  return read_fixtures(in, options);
}

StatsArchive read_player_stats(std::istream& in, std::span<const Fixture> fixtures) {
  csv::Reader reader(in);
  const auto c_player = reader.require_column("player_id");
  const auto c_fixture = reader.require_column("fixture_id");
  const auto c_group = reader.require_column("position_group");
  const auto c_stat = reader.require_column("stat_name");
  const auto c_value = reader.require_column("value");
  const auto c_team = reader.column("team");

  const auto fixture_index = index_fixtures(fixtures);
  std::map<std::pair<PlayerId, FixtureId>, PlayerMatchStats> grouped;
  csv::Row row;
  while (reader.next(row)) {
    const std::size_t line = reader.line_number();
    const auto player = required_text(row, c_player, line, "player_id");
    const auto fixture_id = required_text(row, c_fixture, line, "fixture_id");
    const auto group = parse_position_group(required_text(row, c_group, line, "position_group"));
    if (!group) parse_error(line, "position_group must be one of GK, DF, MF, FW");
    const auto stat = required_text(row, c_stat, line, "stat_name");
    const auto value = parse_double(required_text(row, c_value, line, "value"));
    if (!value || !std::isfinite(*value)) parse_error(line, "non-numeric or non-finite value");
    if (*value < 0) throw Error(ErrorKind::NegativeStat, player + " " + stat);

    auto fit = fixture_index.find(fixture_id);
    if (fit == fixture_index.end()) throw Error(ErrorKind::UnknownFixture, fixture_id);
    const Fixture& fixture = *fit->second;

    auto [it, inserted] = grouped.try_emplace({player, fixture_id});
    PlayerMatchStats& rec = it->second;
    if (inserted) {
      rec.player_id = player;
      rec.fixture_id = fixture_id;
      rec.group = *group;
      rec.kickoff = fixture.kickoff;
      rec.season = fixture.season;
      if (std::find(fixture.home_lineup.begin(), fixture.home_lineup.end(), player) !=
          fixture.home_lineup.end()) {
        rec.team = fixture.home_team;
      } else if (std::find(fixture.away_lineup.begin(), fixture.away_lineup.end(), player) !=
                 fixture.away_lineup.end()) {
        rec.team = fixture.away_team;
      }
    } else if (rec.group != *group) {
      parse_error(line, "conflicting position_group for " + player + " in " + fixture_id);
    }
    if (c_team && *c_team < row.size()) {
      const std::string team(trim(row[*c_team]));
      if (!team.empty()) {
        if (team != fixture.home_team && team != fixture.away_team) {
          parse_error(line, "team '" + team + "' did not play in " + fixture_id);
        }
        rec.team = team;
      }
    }
    if (!rec.stats.emplace(stat, *value).second) {
      parse_error(line, "repeated stat " + stat + " for " + player + " in " + fixture_id);
    }
  }
  std::vector<PlayerMatchStats> records;
  records.reserve(grouped.size());
  for (auto& [key, rec] : grouped) records.push_back(std::move(rec));
  return StatsArchive(std::move(records));
}

StatsArchive load_player_stats(const std::filesystem::path& path,
                               std::span<const Fixture> fixtures) {
  auto in = open_or_throw(path);
  return read_player_stats(in, fixtures);
}

OddsBook read_odds(std::istream& in, std::span<const Fixture> fixtures) {
  csv::Reader reader(in);
  const auto c_fixture = reader.require_column("fixture_id");
  const auto c_hg = reader.require_column("home_goals");
  const auto c_ag = reader.require_column("away_goals");
  const auto c_odds = reader.require_column("odds");

  const auto fixture_index = index_fixtures(fixtures);
  OddsBook book;
  csv::Row row;
  while (reader.next(row)) {
    const std::size_t line = reader.line_number();
    const auto fixture_id = required_text(row, c_fixture, line, "fixture_id");
    const auto h = parse_int(required_text(row, c_hg, line, "home_goals"));
    const auto a = parse_int(required_text(row, c_ag, line, "away_goals"));
    if (!h || !a || *h < 0 || *a < 0) parse_error(line, "scoreline must be non-negative integers");
    const auto odds = parse_double(required_text(row, c_odds, line, "odds"));
    if (!odds || !std::isfinite(*odds)) parse_error(line, "non-numeric odds");
    const Scoreline score{static_cast<int>(*h), static_cast<int>(*a)};
    if (*odds <= 1.0) {
      throw Error(ErrorKind::OddsNotPositive, fixture_id + " " + std::to_string(score.home) + ":" +
                                                  std::to_string(score.away));
    }
    if (!fixture_index.contains(fixture_id)) throw Error(ErrorKind::UnknownFixture, fixture_id);

    OddsRecord& rec = book[fixture_id];
    rec.fixture_id = fixture_id;
    if (!rec.scoreline_odds.emplace(score, *odds).second) {
      parse_error(line, "repeated scoreline for " + fixture_id);
    }
  }
  return book;
}

OddsBook load_odds(const std::filesystem::path& path, std::span<const Fixture> fixtures) {
  auto in = open_or_throw(path);
  return read_odds(in, fixtures);
}

namespace {

std::string join_lineup(const std::vector<PlayerId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out.push_back(';');
    out += ids[i];
  }
  return out;
}

}  // namespace

void write_fixtures(std::ostream& out, std::span<const Fixture> fixtures) {
  csv::write_row(out, {"fixture_id", "season", "kickoff", "home_team", "away_team", "home_goals",
                       "away_goals", "home_lineup", "away_lineup"});
  for (const auto& f : fixtures) {
    csv::write_row(out, {f.id, f.season, format_kickoff(f.kickoff), f.home_team, f.away_team,
                         f.result ? std::to_string(f.result->home) : "",
                         f.result ? std::to_string(f.result->away) : "",
                         join_lineup(f.home_lineup), join_lineup(f.away_lineup)});
  }
}

void write_player_stats(std::ostream& out, const StatsArchive& archive) {
  csv::write_row(out, {"player_id", "fixture_id", "position_group", "stat_name", "value", "team"});
  for (const auto& r : archive.records()) {
    for (const auto& [name, value] : r.stats) {
      csv::write_row(out, {r.player_id, r.fixture_id, std::string(to_string(r.group)), name,
                           csv::format_double(value), r.team.value_or("")});
    }
  }
}

void write_odds(std::ostream& out, const OddsBook& odds) {
  csv::write_row(out, {"fixture_id", "home_goals", "away_goals", "odds"});
  for (const auto& [id, rec] : odds) {
    for (const auto& [score, price] : rec.scoreline_odds) {
      csv::write_row(out, {id, std::to_string(score.home), std::to_string(score.away),
                           csv::format_double(price)});
    }
  }
}

Split chronological_split(std::span<const Fixture> fixtures, std::size_t test_size) {
  if (test_size >= fixtures.size()) {
    throw Error(ErrorKind::TestTooLarge, "test size " + std::to_string(test_size) +
                                             " with only " + std::to_string(fixtures.size()) +
                                             " fixtures");
  }
  const std::size_t cut = fixtures.size() - test_size;
  return {fixtures.first(cut), fixtures.subspan(cut)};
}

const Fixture* Dataset::find_fixture(const FixtureId& id) const {
  for (const auto& f : fixtures) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

Dataset load_dataset(const std::filesystem::path& dir, std::size_t test_size) {
  Dataset ds;
  ds.fixtures = load_fixtures(dir / "fixtures.csv");
  ds.stats = load_player_stats(dir / "player_stats.csv", ds.fixtures);
  ds.odds = load_odds(dir / "odds.csv", ds.fixtures);
  ds.seasons = SeasonCalendar(ds.fixtures);
  ds.split_index = chronological_split(ds.fixtures, test_size).train.size();
  return ds;
}

}  // namespace scorecast
