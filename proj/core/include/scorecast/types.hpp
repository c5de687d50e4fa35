#pragma once

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scorecast {

using PlayerId = std::string;
using FixtureId = std::string;
using TeamName = std::string;
using Kickoff = std::chrono::sys_seconds;

enum class PositionGroup { GK, DF, MF, FW };
inline constexpr std::array<PositionGroup, 4> kPositionGroups = {
    PositionGroup::GK, PositionGroup::DF, PositionGroup::MF, PositionGroup::FW};

std::string_view to_string(PositionGroup group);
std::optional<PositionGroup> parse_position_group(std::string_view text);

/// Single-letter prefix used in feature names (g_CS, m_GCA, a_GCA, d_TklW).
char feature_prefix(PositionGroup group);

enum class Side { Home, Away };

std::string_view to_string(Side side);
std::optional<Side> parse_side(std::string_view text);
constexpr Side opposite(Side side) { return side == Side::Home ? Side::Away : Side::Home; }

struct Scoreline {
  int home = 0;
  int away = 0;

  friend bool operator==(const Scoreline&, const Scoreline&) = default;
  friend auto operator<=>(const Scoreline&, const Scoreline&) = default;
};

/// "YYYY-MM-DDTHH:MM:SSZ" (the trailing Z is optional; a bare date means midnight UTC).
std::optional<Kickoff> parse_kickoff(std::string_view text);
std::string format_kickoff(Kickoff kickoff);

}  // namespace scorecast
