#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "pipeline.hpp"

namespace scorecast::cli {

struct ReportBundle {
  std::vector<ModelEvaluation> evaluations;
  std::vector<ImportanceResult> importance;
  std::vector<ModelScores> scores;
  std::vector<OverviewRow> overview;
  std::vector<ModelScores> family_scores;
  std::vector<OverviewRow> family_overview;
  std::vector<SkippedFixture> training_skips;
};

/// Fills the per-model and per-family scores and overviews from `evaluations`.
void rank_models(ReportBundle& bundle);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string fitness_csv(const ReportBundle& bundle, const std::string& provenance);
std::string standings_csv(const ReportBundle& bundle, const std::string& provenance);
std::string tau_csv(const ReportBundle& bundle, const std::string& provenance);
std::string zones_csv(const ReportBundle& bundle, const std::string& provenance);
std::string betting_csv(const ReportBundle& bundle, const std::string& provenance);
std::string betting_ledger_csv(const ReportBundle& bundle, const std::string& provenance);
std::string importance_csv(const ReportBundle& bundle, const std::string& provenance);
std::string overview_csv(const ReportBundle& bundle, const std::string& provenance);
/// Same layout as overview.csv, one row per approach family.
std::string family_overview_csv(const ReportBundle& bundle, const std::string& provenance);
std::string predictions_csv(const ReportBundle& bundle, const std::string& provenance);
std::string summary_text(const ReportBundle& bundle, const RunConfig& config,
                         const std::string& data_fingerprint);

/// The full bundle: every csv above plus summary.txt. Returns the summary.
std::string write_bundle(const ReportBundle& bundle, const RunConfig& config,
                         const std::string& data_fingerprint);

}  // namespace scorecast::cli
