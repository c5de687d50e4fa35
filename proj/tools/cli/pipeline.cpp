#include "pipeline.hpp"

#include <fstream>
#include <sstream>

#include "scorecast/error.hpp"
#include "scorecast/model_io.hpp"

namespace scorecast::cli {

namespace {

std::string file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<PlayerId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ',';
    out += id;
  }
  return out;
}

}  // namespace

Workspace::Workspace(const RunConfig& config)
    : data_(load_dataset(config.data_dir, config.test_size)),
      schema_(FeatureSchema::load(config.schema_path)),
      universe_(player_universe(data_.train())) {
  std::uint64_t h = fnv1a("scorecast-data");
  for (const char* name : {"fixtures.csv", "player_stats.csv", "odds.csv"}) {
    h = fnv1a(file_bytes(config.data_dir / name), h);
  }
  data_fingerprint_ = hex64(h);
}

FeatureContext Workspace::context(Approach approach) const {
  return {schema_, data_.stats, data_.seasons,
          approach == Approach::Players ? std::span<const PlayerId>(universe_)
                                        : std::span<const PlayerId>()};
}

const TrainingSet& Trainer::training_set(Approach approach, Side side) {
  const auto key = std::make_pair(approach, side);
  if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  TrainingSet set;
  set.matrix = build_matrix(ws_.data().train(), approach, side, ws_.context(approach));
  std::vector<std::vector<double>> rows;
  for (const auto& row : set.matrix.rows) {
    if (!row.target) continue;
    rows.push_back(row.values);
    set.y.push_back(*row.target);
    set.classes.push_back(*row.target);
  }
  set.x = Matrix::from_rows(rows);
  return cache_.emplace(key, std::move(set)).first->second;
}

ModelPair Trainer::train(Approach approach, Technique technique) {
  ModelPair pair;
  pair.approach = approach;
  pair.technique = technique;
  pair.label = model_label(approach, technique);
  RegressorSpec spec = config_.regressor;
  spec.technique = technique;
  spec.seed = config_.seed;
  for (const Side side : {Side::Home, Side::Away}) {
    const TrainingSet& set = training_set(approach, side);
    TrainedModel model = fit(spec, set.x, set.y, set.matrix.fingerprint);
    model.metadata["label"] = pair.label;
    model.metadata["approach"] = std::string(to_string(approach));
    model.metadata["side"] = std::string(to_string(side));
    model.metadata["training_rows"] = std::to_string(set.x.rows());
    model.metadata["config_hash"] = config_.hash();
    model.metadata["seed"] = std::to_string(config_.seed);
    if (approach == Approach::Players) model.metadata["universe"] = join(ws_.universe());
    (side == Side::Home ? pair.home : pair.away) = std::move(model);
  }
  return pair;
}

std::filesystem::path artifact_path(const std::filesystem::path& dir, const std::string& label,
                                    Side side) {
  return dir / (label + "." + std::string(to_string(side)) + ".json");
}

void save_pair(const ModelPair& pair, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_model(pair.home, artifact_path(dir, pair.label, Side::Home));
  save_model(pair.away, artifact_path(dir, pair.label, Side::Away));
}

ModelPair load_pair(const std::filesystem::path& dir, Approach approach, Technique technique) {
  ModelPair pair;
  pair.approach = approach;
  pair.technique = technique;
  pair.label = model_label(approach, technique);
  for (const Side side : {Side::Home, Side::Away}) {
    const auto path = artifact_path(dir, pair.label, side);
    if (!std::filesystem::exists(path)) {
      throw Error(ErrorKind::MissingArtifact, path.string() + " (run `scorecast train` first)");
    }
    (side == Side::Home ? pair.home : pair.away) = load_model(path);
  }
  return pair;
}

std::vector<PlayerId> stored_universe(const TrainedModel& model) {
  std::vector<PlayerId> out;
  const auto it = model.metadata.find("universe");
  if (it == model.metadata.end() || it->second.empty()) return out;
  std::stringstream ss(it->second);
  std::string id;
  while (std::getline(ss, id, ',')) out.push_back(id);
  return out;
}

ModelScores ModelEvaluation::scores() const {
  ModelScores s;
  s.model = predictions.model;
  s.values[Scenario::HomeFitness] = home_fit.rmse;
  s.values[Scenario::AwayFitness] = away_fit.rmse;
  s.values[Scenario::Betting] = ledger.net_earnings;
  s.values[Scenario::Tau] = tau;
  s.values[Scenario::Top4] = top4;
  s.values[Scenario::Bottom3] = bottom3;
  return s;
}

ModelEvaluation evaluate_predictions(PredictionSet predictions, std::string family,
                                     const OddsBook& odds, const RunConfig& config) {
  ModelEvaluation ev;
  ev.family = std::move(family);
  ev.home_fit = fitness(predictions, Side::Home);
  ev.away_fit = fitness(predictions, Side::Away);
  ev.predicted_table = simulate_standings(predictions.predictions);
  ev.actual_table = actual_standings(std::span<const ScorelinePrediction>(predictions.predictions));
  ev.tau = kendall_tau(ev.predicted_table, ev.actual_table);
  ev.top4 = zone_accuracy(ev.predicted_table, ev.actual_table, Zone::Top4);
  ev.bottom3 = zone_accuracy(ev.predicted_table, ev.actual_table, Zone::Bottom3);
  ev.ledger = bet_run(predictions.predictions, odds, config.stake, config.missing_odds);
  ev.ledger.model = predictions.model;
  ev.predictions = std::move(predictions);
  return ev;
}

PredictionSet predict_pair(const ModelPair& pair, const Workspace& ws,
                           std::span<const Fixture> fixtures) {
  if (pair.approach == Approach::Players) {
    const auto universe = stored_universe(pair.home);
    const FeatureContext ctx{ws.schema(), ws.data().stats, ws.data().seasons, universe};
    return predict_scorelines(pair.home, pair.away, fixtures, ctx, pair.approach, pair.label);
  }
  return predict_scorelines(pair.home, pair.away, fixtures, ws.context(pair.approach),
                            pair.approach, pair.label);
}

PredictionSet predict_with(Heuristic heuristic, const Workspace& ws,
                           std::span<const Fixture> fixtures) {
  return predict_heuristic(heuristic, fixtures, {ws.data().train(), ws.data().fixtures});
}

ImportanceResult importance(Trainer& trainer, Approach approach, Side side) {
  const TrainingSet& set = trainer.training_set(approach, side);
  return {approach, side, chi2_importance(set.x, set.classes, set.matrix.feature_names)};
}

}  // namespace scorecast::cli
