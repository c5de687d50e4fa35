#include "scorecast/schema.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "scorecast/error.hpp"
#include "scorecast/features.hpp"

namespace scorecast {

namespace {

struct BlockKey {
  const char* name;
  BlockRole role;
  PositionGroup group;
};

constexpr std::array<BlockKey, 5> kBlockKeys = {{
    {"offense.DF", BlockRole::Offense, PositionGroup::DF},
    {"offense.MF", BlockRole::Offense, PositionGroup::MF},
    {"offense.FW", BlockRole::Offense, PositionGroup::FW},
    {"defense.GK", BlockRole::Defense, PositionGroup::GK},
    {"defense.DF", BlockRole::Defense, PositionGroup::DF},
}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FeatureSchema FeatureSchema::parse(std::istream& in) {
  FeatureSchema schema;
  std::array<bool, 5> seen{};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Schema, "line " + std::to_string(line_no) + ": expected '<block> = ...'");
    }
    const std::string key = trim(line.substr(0, eq));
    std::size_t slot = kBlockKeys.size();
    for (std::size_t i = 0; i < kBlockKeys.size(); ++i) {
      if (key == kBlockKeys[i].name) slot = i;
    }
    if (slot == kBlockKeys.size()) {
      throw Error(ErrorKind::Schema, "line " + std::to_string(line_no) + ": unknown block '" + key + "'");
    }
    if (seen[slot]) throw Error(ErrorKind::Schema, "block " + key + " listed twice");
    seen[slot] = true;

    FeatureBlock& block = schema.blocks_[slot];
    block.role = kBlockKeys[slot].role;
    block.group = kBlockKeys[slot].group;
    std::stringstream items(line.substr(eq + 1));
    std::string item;
    std::set<std::string> distinct;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item.empty()) throw Error(ErrorKind::Schema, "block " + key + ": empty stat name");
      if (!distinct.insert(item).second) {
        throw Error(ErrorKind::Schema, "block " + key + ": repeated stat " + item);
      }
      block.stats.push_back(item);
    }
    if (block.stats.size() != kBlockSizes[slot]) {
      throw Error(ErrorKind::Schema, "block " + key + " needs " + std::to_string(kBlockSizes[slot]) +
                                         " stats, found " + std::to_string(block.stats.size()));
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw Error(ErrorKind::Schema, std::string("missing block ") + kBlockKeys[i].name);
  }
  // The two DF blocks become d_<stat> columns, so they must not share names.
  for (const auto& s : schema.blocks_[0].stats) {
    for (const auto& t : schema.blocks_[4].stats) {
      if (s == t) throw Error(ErrorKind::Schema, "stat " + s + " is both offensive and defensive for DF");
    }
  }
  return schema;
}

FeatureSchema FeatureSchema::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open schema " + path.string());
  return parse(in);
}

std::vector<std::string> FeatureSchema::feature_names(Side side) const {
  std::vector<std::string> names;
  names.reserve(kWidth);
  for (const auto& block : blocks_) {
    const Side owner = block.role == BlockRole::Offense ? side : opposite(side);
    for (const auto& stat : block.stats) {
      names.push_back(std::string(to_string(owner)) + "_" + feature_prefix(block.group) + "_" + stat);
    }
  }
  return names;
}

std::uint64_t FeatureSchema::fingerprint() const {
  std::string text;
  for (const auto& block : blocks_) {
    text += block.role == BlockRole::Offense ? "O" : "D";
    text += to_string(block.group);
    for (const auto& s : block.stats) text += "," + s;
    text += ";";
  }
  return fnv1a(text);
}

}  // namespace scorecast
