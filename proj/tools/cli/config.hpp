#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "scorecast/evaluate.hpp"
#include "scorecast/features.hpp"
#include "scorecast/heuristics.hpp"
#include "scorecast/regress.hpp"

namespace scorecast::cli {

struct RunConfig {
  std::string command;
  std::filesystem::path data_dir = "data/sample";
  std::size_t test_size = 100;
  std::optional<Approach> approach;
  std::optional<Technique> technique;
  std::optional<Heuristic> heuristic;
  bool all = false;
  RegressorSpec regressor;  // technique field unused; hyperparameters only
  std::uint64_t seed = 42;
  std::filesystem::path schema_path;
  std::filesystem::path out_dir = "out";
  std::optional<std::filesystem::path> model_dir;
  std::optional<std::filesystem::path> fixtures_file;
  MissingOddsPolicy missing_odds = MissingOddsPolicy::Skip;
  double stake = 1.0;

  std::filesystem::path resolved_model_dir() const { return model_dir.value_or(out_dir / "models"); }

  /// Every setting that can change an output, as sorted key=value lines. The
  /// output directory is left out.
  std::string canonical() const;
  std::string hash() const;
  /// "# scorecast config_hash=<hash> seed=<seed>"
  std::string provenance_line() const;
};

}  // namespace scorecast::cli
