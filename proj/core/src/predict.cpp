#include "scorecast/predict.hpp"

#include <cmath>

#include <json.hpp>

#include "scorecast/csv.hpp"
#include "scorecast/error.hpp"

namespace scorecast {

int round_goals(double raw) {
  if (!std::isfinite(raw)) throw Error(ErrorKind::NonFinite, "prediction is not finite");
  if (raw <= 0) return 0;
  return static_cast<int>(std::floor(raw + 0.5));
}

std::optional<Scoreline> ScorelinePrediction::actual() const {
  if (!actual_home || !actual_away) return std::nullopt;
  return Scoreline{*actual_home, *actual_away};
}

std::string model_label(Approach approach, Technique technique) {
  return std::string(to_string(approach)) + "-" + std::string(to_string(technique));
}

ScorelinePrediction make_prediction(const Fixture& fixture, const std::string& model,
                                    double raw_home, double raw_away) {
  ScorelinePrediction p;
  p.fixture_id = fixture.id;
  p.model = model;
  p.home_team = fixture.home_team;
  p.away_team = fixture.away_team;
  p.raw_home = raw_home;
  p.raw_away = raw_away;
  p.pred_home = round_goals(raw_home);
  p.pred_away = round_goals(raw_away);
  if (fixture.result) {
    p.actual_home = fixture.result->home;
    p.actual_away = fixture.result->away;
  }
  return p;
}

namespace {

bool is_row_error(ErrorKind kind) {
  return kind == ErrorKind::MissingLineup || kind == ErrorKind::EmptyGroup ||
         kind == ErrorKind::UnknownTeam;
}

}  // namespace

PredictionSet predict_scorelines(const TrainedModel& home_model, const TrainedModel& away_model,
                                 std::span<const Fixture> fixtures, const FeatureContext& ctx,
                                 Approach approach, const std::string& label) {
  if (fixtures.empty()) throw Error(ErrorKind::EmptyTestSet, "no fixtures to predict");
  const auto home_fp = feature_fingerprint(approach, Side::Home, ctx);
  const auto away_fp = feature_fingerprint(approach, Side::Away, ctx);
  if (home_model.schema_fingerprint != home_fp || away_model.schema_fingerprint != away_fp) {
    throw Error(ErrorKind::SchemaMismatch, label + ": models were trained on a different feature layout");
  }

  PredictionSet out;
  out.model = label;
  for (const auto& fixture : fixtures) {
    FeatureRow home_row, away_row;
    try {
      home_row = build_row(fixture, approach, Side::Home, ctx);
      away_row = build_row(fixture, approach, Side::Away, ctx);
    } catch (const Error& e) {
      if (!is_row_error(e.kind())) throw;
      out.skipped.push_back({fixture.id, e.what()});
      continue;
    }
    const std::size_t unknown = home_row.unknown_players;  // each row encodes both lineups
    if (approach == Approach::Players && unknown > 0) {
      out.warnings.push_back(fixture.id + ": " + std::to_string(unknown) +
                             " lineup players unseen in training");
    }
    const double raw_home = predict(home_model, Matrix::from_rows({home_row.values}), home_fp)[0];
    const double raw_away = predict(away_model, Matrix::from_rows({away_row.values}), away_fp)[0];
    out.predictions.push_back(make_prediction(fixture, label, raw_home, raw_away));
  }
  return out;
}

PredictionSet predict_heuristic(Heuristic heuristic, std::span<const Fixture> fixtures,
                                const HeuristicInputs& inputs) {
  if (fixtures.empty()) throw Error(ErrorKind::EmptyTestSet, "no fixtures to predict");
  PredictionSet out;
  out.model = std::string(to_string(heuristic));
  std::optional<StandingsTable> table;
  if (heuristic == Heuristic::Tradition) table = build_training_table(inputs.training);
  for (const auto& fixture : fixtures) {
    Scoreline s;
    switch (heuristic) {
      case Heuristic::HomeWin: s = home_win_predict(fixture); break;
      case Heuristic::Tradition: s = tradition_predict(fixture, *table); break;
      case Heuristic::Recency: s = recency_predict(fixture, inputs.history); break;
    }
    out.predictions.push_back(make_prediction(fixture, out.model, s.home, s.away));
  }
  return out;
}

void write_predictions_csv(std::ostream& out, std::span<const ScorelinePrediction> predictions) {
  csv::write_row(out, {"fixture_id", "model", "raw_home", "raw_away", "pred_home", "pred_away",
                       "actual_home", "actual_away"});
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  for (const auto& p : predictions) {
    csv::write_row(out, {p.fixture_id, p.model, csv::format_double(p.raw_home),
                         csv::format_double(p.raw_away), std::to_string(p.pred_home),
                         std::to_string(p.pred_away), opt(p.actual_home), opt(p.actual_away)});
  }
}

void write_predictions_json(std::ostream& out, std::span<const ScorelinePrediction> predictions) {
  nlohmann::json arr = nlohmann::json::array();
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  for (const auto& p : predictions) {
    arr.push_back({{"fixture_id", p.fixture_id},
                   {"model", p.model},
                   {"raw_home", p.raw_home},
                   {"raw_away", p.raw_away},
                   {"pred_home", p.pred_home},
                   {"pred_away", p.pred_away},
                   {"actual_home", opt(p.actual_home)},
                   {"actual_away", opt(p.actual_away)}});
  }
  out << arr.dump(1) << "\n";
}

}  // namespace scorecast
