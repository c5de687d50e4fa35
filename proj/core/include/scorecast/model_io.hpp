#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "scorecast/regress.hpp"

namespace scorecast {

/// Versioned JSON artifact ("format": "scorecast-model", "version": 1).
/// Doubles are written in shortest round-trip form, so load(save(m)) predicts
/// bit-identically to m.
inline constexpr int kModelFormatVersion = 1;

std::string serialize_model(const TrainedModel& model);
TrainedModel deserialize_model(std::string_view json_text);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

std::string hex64(std::uint64_t value);

}  // namespace scorecast
