#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "scorecast/csv.hpp"
#include "scorecast/error.hpp"

namespace scorecast::cli {

namespace {

std::string num(double v) { return csv::format_double(v); }
std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

class CsvText {
 public:
  CsvText(const std::string& provenance, const csv::Row& header) {
    os_ << provenance << '\n';
    csv::write_row(os_, header);
  }
  void row(const csv::Row& r) { csv::write_row(os_, r); }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

void table_rows(CsvText& out, const std::string& model, const StandingsTable& table) {
  const std::string source = table.source() == TableSource::Actual ? "actual" : "predicted";
  std::size_t rank = 1;
  for (const auto& e : table.entries()) {
    out.row({model, source, std::to_string(rank++), e.team, std::to_string(e.played),
             std::to_string(e.won), std::to_string(e.drawn), std::to_string(e.lost),
             std::to_string(e.goals_for), std::to_string(e.goals_against),
             std::to_string(e.goal_difference()), std::to_string(e.points)});
  }
}

}  // namespace

void rank_models(ReportBundle& bundle) {
  bundle.scores.clear();
  for (const auto& ev : bundle.evaluations) bundle.scores.push_back(ev.scores());
  const auto ranks = scenario_ranks(bundle.scores);
  bundle.overview = rank_sum_overview(ranks);
  std::vector<std::string> families;
  for (const auto& ev : bundle.evaluations) families.push_back(ev.family);
  bundle.family_scores = best_by_family(bundle.scores, families);
  bundle.family_overview = rank_sum_overview(scenario_ranks(bundle.family_scores));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::Io, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string fitness_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"model", "side", "n", "mae", "rmse", "r2"});
  for (const auto& ev : bundle.evaluations) {
    for (const FitnessReport* f : {&ev.home_fit, &ev.away_fit}) {
      out.row({ev.predictions.model, std::string(to_string(f->side)), std::to_string(f->n),
               num(f->mae), num(f->rmse), opt_num(f->r2)});
    }
  }
  return out.str();
}

std::string standings_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"model", "source", "rank", "team", "played", "won", "drawn", "lost",
                           "goals_for", "goals_against", "goal_difference", "points"});
  for (const auto& ev : bundle.evaluations) {
    table_rows(out, ev.predictions.model, ev.actual_table);
    table_rows(out, ev.predictions.model, ev.predicted_table);
  }
  return out.str();
}

std::string tau_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"model", "kendall_tau_b"});
  for (const auto& ev : bundle.evaluations) out.row({ev.predictions.model, opt_num(ev.tau)});
  return out.str();
}

std::string zones_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"model", "top4_pct", "bottom3_pct"});
  for (const auto& ev : bundle.evaluations) {
    out.row({ev.predictions.model, num(ev.top4), num(ev.bottom3)});
  }
  return out.str();
}

std::string betting_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"model", "stake", "missing_odds", "bets_placed", "bets_skipped",
                           "bets_won", "net_earnings"});
  for (const auto& ev : bundle.evaluations) {
    const auto& l = ev.ledger;
    out.row({ev.predictions.model, num(l.stake), std::string(to_string(l.policy)),
             std::to_string(l.bets_placed), std::to_string(l.bets_skipped),
             std::to_string(l.bets_won), num(l.net_earnings)});
  }
  return out.str();
}

std::string betting_ledger_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"model", "fixture_id", "pred_home", "pred_away", "actual_home",
                           "actual_away", "odds", "placed", "correct", "payout"});
  for (const auto& ev : bundle.evaluations) {
    for (const auto& e : ev.ledger.entries) {
      out.row({ev.predictions.model, e.fixture_id, std::to_string(e.predicted.home),
               std::to_string(e.predicted.away),
               e.actual ? std::to_string(e.actual->home) : "",
               e.actual ? std::to_string(e.actual->away) : "", e.odds ? num(*e.odds) : "",
               e.placed ? "1" : "0", e.correct ? "1" : "0", num(e.payout)});
    }
  }
  return out.str();
}

std::string importance_csv(const ReportBundle& bundle, const std::string& provenance) {
  CsvText out(provenance, {"approach", "side", "rank", "feature", "chi2"});
  for (const auto& imp : bundle.importance) {
    std::size_t rank = 1;
    for (const auto& f : imp.ranking) {
      out.row({std::string(to_string(imp.approach)), std::string(to_string(imp.side)),
               std::to_string(rank++), f.feature, num(f.score)});
    }
  }
  return out.str();
}

namespace {

std::string overview_text(const std::vector<OverviewRow>& overview,
                          const std::vector<ModelScores>& all_scores, const std::string& provenance) {
  csv::Row header{"position", "model"};
  for (const Scenario s : kScenarios) header.push_back(std::string(to_string(s)) + "_rank");
  header.push_back("rank_sum");
  for (const Scenario s : kScenarios) header.push_back(std::string(to_string(s)));
  CsvText out(provenance, header);
  std::size_t position = 1;
  for (const auto& row : overview) {
    csv::Row r{std::to_string(position++), row.model};
    for (std::size_t rank : row.ranks) r.push_back(std::to_string(rank));
    r.push_back(std::to_string(row.rank_sum));
    const ModelScores* scores = nullptr;
    for (const auto& s : all_scores) {
      if (s.model == row.model) scores = &s;
    }
    for (const Scenario s : kScenarios) r.push_back(scores ? opt_num(scores->values.at(s)) : "NA");
    out.row(r);
  }
  return out.str();
}

}  // namespace

std::string overview_csv(const ReportBundle& bundle, const std::string& provenance) {
  return overview_text(bundle.overview, bundle.scores, provenance);
}

std::string family_overview_csv(const ReportBundle& bundle, const std::string& provenance) {
  return overview_text(bundle.family_overview, bundle.family_scores, provenance);
}

std::string predictions_csv(const ReportBundle& bundle, const std::string& provenance) {
  std::ostringstream os;
  os << provenance << '\n';
  std::vector<ScorelinePrediction> all;
  for (const auto& ev : bundle.evaluations) {
    all.insert(all.end(), ev.predictions.predictions.begin(), ev.predictions.predictions.end());
  }
  write_predictions_csv(os, all);
  return os.str();
}

std::string summary_text(const ReportBundle& bundle, const RunConfig& config,
                         const std::string& data_fingerprint) {
  std::ostringstream os;
  os << "scorecast evaluation\n";
  os << "config_hash      " << config.hash() << "\n";
  os << "seed             " << config.seed << "\n";
  os << "data_fingerprint " << data_fingerprint << "\n";
  os << "test_size        " << config.test_size << "\n";
  os << "stake            " << num(config.stake) << " (missing odds: " << to_string(config.missing_odds)
     << ")\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-4s %-22s %9s %9s %9s %8s %6s %6s %8s\n", "pos", "model",
                "home_rmse", "away_rmse", "bet_net", "tau_b", "top4", "bot3", "rank_sum");
  os << line;
  std::size_t position = 1;
  for (const auto& row : bundle.overview) {
    const ModelEvaluation* ev = nullptr;
    for (const auto& e : bundle.evaluations) {
      if (e.predictions.model == row.model) ev = &e;
    }
    if (ev == nullptr) continue;
    const std::string tau = ev->tau ? num(std::round(*ev->tau * 1000) / 1000) : "NA";
    std::snprintf(line, sizeof line, "%-4zu %-22s %9.3f %9.3f %9.2f %8s %6.0f %6.0f %8zu\n",
                  position++, row.model.c_str(), ev->home_fit.rmse, ev->away_fit.rmse,
                  ev->ledger.net_earnings, tau.c_str(), ev->top4, ev->bottom3, row.rank_sum);
    os << line;
  }
  bool any_skip = !bundle.training_skips.empty();
  for (const auto& ev : bundle.evaluations) any_skip = any_skip || !ev.predictions.skipped.empty();
  if (any_skip) {
    os << "\nskipped fixtures\n";
    for (const auto& s : bundle.training_skips) os << "  train " << s.fixture_id << ": " << s.reason << "\n";
    for (const auto& ev : bundle.evaluations) {
      for (const auto& s : ev.predictions.skipped) {
        os << "  " << ev.predictions.model << " " << s.fixture_id << ": " << s.reason << "\n";
      }
    }
  }
  return os.str();
}

std::string write_bundle(const ReportBundle& bundle, const RunConfig& config,
                         const std::string& data_fingerprint) {
  std::filesystem::create_directories(config.out_dir);
  const std::string prov = config.provenance_line();
  const auto& dir = config.out_dir;
  write_file_atomic(dir / "fitness.csv", fitness_csv(bundle, prov));
  write_file_atomic(dir / "standings.csv", standings_csv(bundle, prov));
  write_file_atomic(dir / "tau.csv", tau_csv(bundle, prov));
  write_file_atomic(dir / "zones.csv", zones_csv(bundle, prov));
  write_file_atomic(dir / "betting.csv", betting_csv(bundle, prov));
  write_file_atomic(dir / "betting_ledger.csv", betting_ledger_csv(bundle, prov));
  write_file_atomic(dir / "importance.csv", importance_csv(bundle, prov));
  write_file_atomic(dir / "overview.csv", overview_csv(bundle, prov));
  write_file_atomic(dir / "family_overview.csv", family_overview_csv(bundle, prov));
  write_file_atomic(dir / "predictions.csv", predictions_csv(bundle, prov));
  const std::string summary = summary_text(bundle, config, data_fingerprint);
  write_file_atomic(dir / "summary.txt", prov + "\n" + summary);
  return summary;
}

}  // namespace scorecast::cli
