#include "scorecast/types.hpp"

#include <cstdio>

#include "scorecast/error.hpp"

namespace scorecast {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::DuplicateFixture: return "DuplicateFixture";
    case ErrorKind::MalformedLineup: return "MalformedLineup";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::NegativeStat: return "NegativeStat";
    case ErrorKind::OddsNotPositive: return "OddsNotPositive";
    case ErrorKind::TestTooLarge: return "TestTooLarge";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::MissingLineup: return "MissingLineup";
    case ErrorKind::UnknownTeam: return "UnknownTeam";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::InvalidHyperparameter: return "InvalidHyperparameter";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::TooFewRows: return "TooFewRows";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ModelFormat: return "ModelFormatError";
    case ErrorKind::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::EmptyTestSet: return "EmptyTestSet";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::TeamSetMismatch: return "TeamSetMismatch";
    case ErrorKind::TooFewTeams: return "TooFewTeams";
    case ErrorKind::NegativeFeature: return "NegativeFeature";
    case ErrorKind::MissingScenario: return "MissingScenario";
    case ErrorKind::MissingArtifact: return "MissingArtifact";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

std::string_view to_string(PositionGroup group) {
  switch (group) {
    case PositionGroup::GK: return "GK";
    case PositionGroup::DF: return "DF";
    case PositionGroup::MF: return "MF";
    case PositionGroup::FW: return "FW";
  }
  return "?";
}

std::optional<PositionGroup> parse_position_group(std::string_view text) {
  for (PositionGroup g : kPositionGroups) {
    if (to_string(g) == text) return g;
  }
  return std::nullopt;
}

char feature_prefix(PositionGroup group) {
  switch (group) {
    case PositionGroup::GK: return 'g';
    case PositionGroup::DF: return 'd';
    case PositionGroup::MF: return 'm';
    case PositionGroup::FW: return 'a';
  }
  return '?';
}

std::string_view to_string(Side side) { return side == Side::Home ? "home" : "away"; }

std::optional<Side> parse_side(std::string_view text) {
  if (text == "home") return Side::Home;
  if (text == "away") return Side::Away;
  return std::nullopt;
}

std::optional<Kickoff> parse_kickoff(std::string_view text) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
  const std::string buf(text);
  int consumed = 0;
  if (std::sscanf(buf.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%n", &y, &mo, &d, &h, &mi, &s, &consumed) == 6) {
    std::string_view rest = text.substr(static_cast<std::size_t>(consumed));
    if (!(rest.empty() || rest == "Z")) return std::nullopt;
  } else if (std::sscanf(buf.c_str(), "%4d-%2u-%2u%n", &y, &mo, &d, &consumed) == 3 &&
             static_cast<std::size_t>(consumed) == text.size()) {
    h = mi = s = 0;
  } else {
    return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
}

std::string format_kickoff(Kickoff kickoff) {
  using namespace std::chrono;
  const auto day_point = floor<days>(kickoff);
  const year_month_day ymd{day_point};
  const hh_mm_ss tod{kickoff - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

}  // namespace scorecast
