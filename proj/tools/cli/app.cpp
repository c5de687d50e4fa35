#include "app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <set>
#include <sstream>

#include "config.hpp"
#include "pipeline.hpp"
#include "report.hpp"
#include "scorecast/csv.hpp"
#include "scorecast/error.hpp"
#include "scorecast/model_io.hpp"

#ifndef SCORECAST_DEFAULT_SCHEMA
#define SCORECAST_DEFAULT_SCHEMA "data/schema/default.schema"
#endif

namespace scorecast::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RawOptions {
  std::string approach;
  std::string technique;
  std::string model;
  std::string missing_odds = "skip";
  std::string svr_kernel = "linear";
  std::size_t forest_max_features = 0;
};

const std::vector<std::string> kApproachNames = {"players", "lineup-stats", "lineup_stats",
                                                 "team-stats", "team_stats"};
const std::vector<std::string> kTechniqueNames = {"lr", "knn", "dtr", "rfr", "svr"};
const std::vector<std::string> kHeuristicNames = {"home-win", "home_win", "tradition", "recency"};

void add_shared_options(CLI::App& app, RunConfig& c, RawOptions& raw) {
  app.add_option("--data-dir", c.data_dir, "Directory holding fixtures.csv, player_stats.csv, odds.csv")
      ->check(CLI::ExistingDirectory)
      ->capture_default_str();
  app.add_option("--out-dir", c.out_dir, "Directory for reports and artifacts")->capture_default_str();
  app.add_option("--model-dir", c.model_dir, "Directory for model artifacts (default <out-dir>/models)");
  app.add_option("--test-size", c.test_size, "Number of final fixtures held out for testing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed for forests")->capture_default_str();
  app.add_option("--schema", c.schema_path, "Feature schema file")
      ->check(CLI::ExistingFile)
      ->capture_default_str();
  app.add_option("--approach", raw.approach, "players | lineup-stats | team-stats")
      ->check(CLI::IsMember(kApproachNames));
  app.add_option("--technique", raw.technique, "lr | knn | dtr | rfr | svr")
      ->transform(CLI::IsMember(kTechniqueNames, CLI::ignore_case));
  app.add_option("--model", raw.model, "Heuristic: home-win | tradition | recency")
      ->check(CLI::IsMember(kHeuristicNames));
  app.add_option("--stake", c.stake, "Stake per bet")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--missing-odds", raw.missing_odds, "Unquoted predicted scorelines: skip | lose")
      ->check(CLI::IsMember({"skip", "lose"}))
      ->capture_default_str();

  RegressorSpec& r = c.regressor;
  app.add_flag("--lr-standardize", r.linear.standardize, "Standardize features before LR");
  app.add_option("--knn-k", r.knn.k, "Neighbours for KNN")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--tree-max-depth", r.tree.max_depth, "Maximum tree depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tree-min-leaf", r.tree.min_leaf, "Minimum rows per leaf")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--forest-trees", r.forest.n_trees, "Trees per forest")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--forest-bootstrap-fraction", r.forest.bootstrap_fraction,
                 "Bootstrap sample size as a fraction of the training rows")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--forest-max-features", raw.forest_max_features,
                 "Features considered per split (default ceil(sqrt(p)))")
      ->check(CLI::PositiveNumber);
  app.add_option("--svr-c", r.svr.c, "SVR box constraint")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--svr-epsilon", r.svr.epsilon, "SVR tube half-width")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--svr-kernel", raw.svr_kernel, "linear | rbf")
      ->check(CLI::IsMember({"linear", "rbf"}))
      ->capture_default_str();
  app.add_option("--svr-gamma", r.svr.gamma, "RBF gamma (0 means 1/features)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--svr-tolerance", r.svr.tolerance, "SVR stopping tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--svr-max-iterations", r.svr.max_iterations, "SVR iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void resolve(RunConfig& c, const RawOptions& raw) {
  if (!raw.approach.empty()) c.approach = parse_approach(raw.approach);
  if (!raw.technique.empty()) c.technique = parse_technique(raw.technique);
  if (!raw.model.empty()) c.heuristic = parse_heuristic(raw.model);
  c.missing_odds = *parse_missing_odds_policy(raw.missing_odds);
  c.regressor.svr.kernel = *parse_kernel(raw.svr_kernel);
  if (raw.forest_max_features > 0) c.regressor.forest.max_features = raw.forest_max_features;
}

enum class Selection { Heuristic, Learned, Grid };

Selection selection(const RunConfig& c, bool allow_grid) {
  if (allow_grid && c.all) return Selection::Grid;
  if (c.heuristic) {
    if (c.approach || c.technique) throw UsageError("--model cannot be combined with --approach/--technique");
    return Selection::Heuristic;
  }
  if (c.approach && c.technique) return Selection::Learned;
  throw UsageError(allow_grid ? "select --all, --model <heuristic>, or both --approach and --technique"
                              : "select --model <heuristic>, or both --approach and --technique");
}

void print_warnings(const PredictionSet& set, std::ostream& err) {
  for (const auto& w : set.warnings) err << "warning: " << w << "\n";
  for (const auto& s : set.skipped) err << "skipped " << s.fixture_id << ": " << s.reason << "\n";
}

std::string manifest_json(const RunConfig& c, const Workspace& ws, const std::vector<ModelPair>& pairs,
                          const std::vector<SkippedFixture>& skips,
                          const std::map<std::string, std::size_t>& rows) {
  nlohmann::json j;
  j["format"] = "scorecast-manifest";
  j["config_hash"] = c.hash();
  j["seed"] = c.seed;
  j["data_fingerprint"] = ws.data_fingerprint();
  j["schema_fingerprint"] = hex64(ws.schema().fingerprint());
  j["train_fixtures"] = ws.data().train().size();
  j["test_fixtures"] = ws.data().test().size();
  j["config"] = c.canonical();
  nlohmann::json models = nlohmann::json::array();
  for (const auto& p : pairs) {
    models.push_back({{"label", p.label},
                      {"home", artifact_path(c.resolved_model_dir(), p.label, Side::Home).filename().string()},
                      {"away", artifact_path(c.resolved_model_dir(), p.label, Side::Away).filename().string()},
                      {"training_rows", rows.at(p.label)}});
  }
  j["models"] = models;
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& s : skips) skipped.push_back({{"fixture_id", s.fixture_id}, {"reason", s.reason}});
  j["skipped"] = skipped;
  return j.dump(1) + "\n";
}

std::vector<SkippedFixture> merged_skips(Trainer& trainer, Approach approach) {
  std::vector<SkippedFixture> out;
  std::set<FixtureId> seen;
  for (const Side side : {Side::Home, Side::Away}) {
    for (const auto& s : trainer.training_set(approach, side).matrix.skipped) {
      if (seen.insert(s.fixture_id).second) out.push_back(s);
    }
  }
  return out;
}

int cmd_train(const RunConfig& c, std::ostream& out) {
  std::vector<std::pair<Approach, Technique>> grid;
  if (c.all) {
    for (Approach a : kApproaches)
      for (Technique t : kTechniques) grid.emplace_back(a, t);
  } else {
    if (!c.approach || !c.technique) throw UsageError("train needs --approach and --technique (or --all)");
    grid.emplace_back(*c.approach, *c.technique);
  }
  const Workspace ws(c);
  Trainer trainer(ws, c);
  std::vector<ModelPair> pairs;
  std::vector<SkippedFixture> skips;
  std::map<std::string, std::size_t> rows;
  std::set<Approach> seen_approach;
  for (const auto& [a, t] : grid) {
    pairs.push_back(trainer.train(a, t));
    save_pair(pairs.back(), c.resolved_model_dir());
    rows[pairs.back().label] = trainer.training_set(a, Side::Home).x.rows();
    if (seen_approach.insert(a).second) {
      for (auto& s : merged_skips(trainer, a)) {
        s.reason = std::string(to_string(a)) + ": " + s.reason;
        skips.push_back(std::move(s));
      }
    }
  }
  const std::string name = c.all ? "all" : pairs.front().label;
  const auto manifest_path = c.resolved_model_dir() / (name + ".manifest.json");
  write_file_atomic(manifest_path, manifest_json(c, ws, pairs, skips, rows));
  for (const auto& p : pairs) {
    out << "trained " << p.label << " on " << rows[p.label] << " fixtures -> "
        << artifact_path(c.resolved_model_dir(), p.label, Side::Home).string() << ", "
        << artifact_path(c.resolved_model_dir(), p.label, Side::Away).string() << "\n";
  }
  out << "manifest " << manifest_path.string() << "\n";
  return kExitOk;
}

int cmd_predict(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Selection sel = selection(c, false);
  const Workspace ws(c);
  std::vector<Fixture> fixtures;
  if (c.fixtures_file) {
    fixtures = load_fixtures(*c.fixtures_file, {.require_result = false});
  } else {
    const auto test = ws.data().test();
    fixtures.assign(test.begin(), test.end());
  }
  PredictionSet set;
  if (sel == Selection::Heuristic) {
    set = predict_heuristic(*c.heuristic, fixtures, {ws.data().train(), ws.data().fixtures});
  } else {
    const ModelPair pair = load_pair(c.resolved_model_dir(), *c.approach, *c.technique);
    set = predict_pair(pair, ws, fixtures);
  }
  print_warnings(set, err);
  std::filesystem::create_directories(c.out_dir);
  std::ostringstream os;
  os << c.provenance_line() << '\n';
  write_predictions_csv(os, set.predictions);
  const auto path = c.out_dir / "predictions.csv";
  write_file_atomic(path, os.str());
  if (!set.skipped.empty()) {
    std::ostringstream sk;
    sk << c.provenance_line() << "\nfixture_id,reason\n";
    for (const auto& s : set.skipped) csv::write_row(sk, {s.fixture_id, s.reason});
    write_file_atomic(c.out_dir / "skipped.csv", sk.str());
  }
  out << set.predictions.size() << " predictions (" << set.skipped.size() << " skipped) -> "
      << path.string() << "\n";
  return kExitOk;
}

ReportBundle run_selection(const RunConfig& c, const Workspace& ws, Trainer& trainer,
                           Selection sel, bool with_importance) {
  ReportBundle bundle;
  const auto test = ws.data().test();
  const OddsBook& odds = ws.data().odds;
  if (sel == Selection::Grid) {
    for (Approach a : kApproaches) {
      for (Technique t : kTechniques) {
        const ModelPair pair = trainer.train(a, t);
        save_pair(pair, c.resolved_model_dir());
        bundle.evaluations.push_back(evaluate_predictions(predict_pair(pair, ws, test), std::string(to_string(pair.approach)), odds, c));
      }
      for (auto& s : merged_skips(trainer, a)) {
        s.reason = std::string(to_string(a)) + ": " + s.reason;
        bundle.training_skips.push_back(std::move(s));
      }
    }
    for (Heuristic h : kHeuristics) {
      bundle.evaluations.push_back(evaluate_predictions(predict_with(h, ws, test), std::string(to_string(h)), odds, c));
    }
    if (with_importance) {
      for (Approach a : {Approach::LineupStats, Approach::TeamStats}) {
        for (Side s : {Side::Home, Side::Away}) bundle.importance.push_back(importance(trainer, a, s));
      }
    }
  } else if (sel == Selection::Heuristic) {
    bundle.evaluations.push_back(evaluate_predictions(predict_with(*c.heuristic, ws, test), std::string(to_string(*c.heuristic)), odds, c));
  } else {
    const ModelPair pair = load_pair(c.resolved_model_dir(), *c.approach, *c.technique);
    bundle.evaluations.push_back(evaluate_predictions(predict_pair(pair, ws, test), std::string(to_string(pair.approach)), odds, c));
    if (with_importance && *c.approach != Approach::Players) {
      for (Side s : {Side::Home, Side::Away}) bundle.importance.push_back(importance(trainer, *c.approach, s));
    }
  }
  rank_models(bundle);
  return bundle;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  const Selection sel = selection(c, true);
  const Workspace ws(c);
  Trainer trainer(ws, c);
  const ReportBundle bundle = run_selection(c, ws, trainer, sel, true);
  out << write_bundle(bundle, c, ws.data_fingerprint());
  out << "reports -> " << c.out_dir.string() << "\n";
  return kExitOk;
}

int cmd_bet(const RunConfig& c, std::ostream& out) {
  const Selection sel = selection(c, true);
  const Workspace ws(c);
  Trainer trainer(ws, c);
  const ReportBundle bundle = run_selection(c, ws, trainer, sel, false);
  std::filesystem::create_directories(c.out_dir);
  const std::string prov = c.provenance_line();
  write_file_atomic(c.out_dir / "betting.csv", betting_csv(bundle, prov));
  write_file_atomic(c.out_dir / "betting_ledger.csv", betting_ledger_csv(bundle, prov));
  for (const auto& ev : bundle.evaluations) {
    const auto& l = ev.ledger;
    out << ev.predictions.model << ": net " << csv::format_double(l.net_earnings) << " from "
        << l.bets_placed << " bets (" << l.bets_won << " won, " << l.bets_skipped << " skipped)\n";
  }
  return kExitOk;
}

int cmd_importance(const RunConfig& c, std::ostream& out) {
  const Approach approach = c.approach.value_or(Approach::LineupStats);
  if (approach == Approach::Players) {
    throw UsageError("importance needs a stat-based approach (lineup-stats or team-stats)");
  }
  const Workspace ws(c);
  Trainer trainer(ws, c);
  ReportBundle bundle;
  for (Side s : {Side::Home, Side::Away}) bundle.importance.push_back(importance(trainer, approach, s));
  std::filesystem::create_directories(c.out_dir);
  write_file_atomic(c.out_dir / "importance.csv", importance_csv(bundle, c.provenance_line()));
  for (const auto& imp : bundle.importance) {
    out << to_string(imp.approach) << " / " << to_string(imp.side) << " model, top features:\n";
    for (std::size_t i = 0; i < imp.ranking.size() && i < 10; ++i) {
      out << "  " << i + 1 << ". " << imp.ranking[i].feature << " "
          << csv::format_double(imp.ranking[i].score) << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.schema_path = SCORECAST_DEFAULT_SCHEMA;
  RawOptions raw;

  CLI::App app{"Football scoreline prediction: train, predict, evaluate, bet, importance", "scorecast"};
  app.set_config("--config", "", "Settings file of `key = value` lines (keys are long option names)");
  app.require_subcommand(1, 1);
  app.fallthrough();
  add_shared_options(app, config, raw);

  CLI::App* train = app.add_subcommand("train", "Fit home and away models for one approach/technique");
  train->add_flag("--all", config.all, "Train every approach/technique pair");
  CLI::App* predict = app.add_subcommand("predict", "Predict scorelines with trained artifacts or a heuristic");
  predict->add_option("--fixtures", config.fixtures_file, "Fixtures to predict (default: the test split)")
      ->check(CLI::ExistingFile);
  CLI::App* evaluate = app.add_subcommand("evaluate", "Write the report bundle for one model or the full grid");
  evaluate->add_flag("--all", config.all, "Evaluate all 15 learned models and 3 heuristics");
  CLI::App* importance_cmd = app.add_subcommand("importance", "Chi-squared feature ranking");
  CLI::App* bet = app.add_subcommand("bet", "Betting backtest only");
  bet->add_flag("--all", config.all, "Run every model");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    resolve(config, raw);
    if (train->parsed()) {
      config.command = "train";
      return cmd_train(config, out);
    }
    if (predict->parsed()) {
      config.command = "predict";
      return cmd_predict(config, out, err);
    }
    if (evaluate->parsed()) {
      config.command = "evaluate";
      return cmd_evaluate(config, out);
    }
    if (bet->parsed()) {
      config.command = "bet";
      return cmd_bet(config, out);
    }
    if (importance_cmd->parsed()) {
      config.command = "importance";
      return cmd_importance(config, out);
    }
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace scorecast::cli
