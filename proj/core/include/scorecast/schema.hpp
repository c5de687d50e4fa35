#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "scorecast/types.hpp"

namespace scorecast {

/// Whose players a block of features describes: the side being modelled
/// (offense) or its opponent (defense).
enum class BlockRole { Offense, Defense };

struct FeatureBlock {
  BlockRole role;
  PositionGroup group;
  std::vector<std::string> stats;
};

/// The 52-column layout shared by the lineup-stats and team-stats approaches:
/// offense DF(13) MF(14) FW(13), then defense GK(5) DF(7), in that order.
class FeatureSchema {
 public:
  static constexpr std::array<std::size_t, 5> kBlockSizes = {13, 14, 13, 5, 7};
  static constexpr std::size_t kWidth = 52;

  /// Parses `offense.DF = a, b, ...` lines; '#' starts a comment.
  static FeatureSchema parse(std::istream& in);
  static FeatureSchema load(const std::filesystem::path& path);

  const std::array<FeatureBlock, 5>& blocks() const { return blocks_; }
  std::size_t width() const { return kWidth; }

  /// Column names for the model of `side`, e.g. "home_m_GCA" ... "away_g_CS".
  std::vector<std::string> feature_names(Side side) const;
  std::uint64_t fingerprint() const;

 private:
  std::array<FeatureBlock, 5> blocks_;
};

}  // namespace scorecast
