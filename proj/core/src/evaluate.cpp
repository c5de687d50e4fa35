#include "scorecast/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "scorecast/error.hpp"

namespace scorecast {

FitnessReport fitness(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(predicted.size()) + " predictions vs " +
                                               std::to_string(actual.size()) + " actuals");
  }
  if (predicted.empty()) throw Error(ErrorKind::EmptyInput, "no predictions to score");
  const double n = static_cast<double>(actual.size());
  double abs_sum = 0, sq_sum = 0, mean = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = predicted[i] - actual[i];
    abs_sum += std::abs(d);
    sq_sum += d * d;
    mean += actual[i];
  }
  mean /= n;
  double ss_tot = 0;
  for (double y : actual) ss_tot += (y - mean) * (y - mean);

  FitnessReport r;
  r.n = actual.size();
  r.mae = abs_sum / n;
  r.rmse = std::sqrt(sq_sum / n);
  if (ss_tot > 0) r.r2 = 1.0 - sq_sum / ss_tot;
  return r;
}

FitnessReport fitness(const PredictionSet& set, Side side) {
  std::vector<double> predicted, actual;
  for (const auto& p : set.predictions) {
    const auto& a = side == Side::Home ? p.actual_home : p.actual_away;
    if (!a) continue;
    predicted.push_back(side == Side::Home ? p.raw_home : p.raw_away);
    actual.push_back(*a);
  }
  FitnessReport r = fitness(predicted, actual);
  r.model = set.model;
  r.side = side;
  return r;
}

StandingsTable simulate_standings(std::span<const ScorelinePrediction> predictions) {
  if (predictions.empty()) throw Error(ErrorKind::EmptyInput, "no predictions to tabulate");
  std::vector<MatchResult> results;
  results.reserve(predictions.size());
  for (const auto& p : predictions) results.push_back({p.home_team, p.away_team, p.predicted()});
  return tabulate(results, TableSource::Predicted);
}

StandingsTable actual_standings(std::span<const Fixture> fixtures) {
  std::vector<MatchResult> results;
  for (const auto& f : fixtures) {
    if (f.result) results.push_back({f.home_team, f.away_team, *f.result});
  }
  if (results.empty()) throw Error(ErrorKind::EmptyInput, "no completed fixtures to tabulate");
  return tabulate(results, TableSource::Actual);
}

StandingsTable actual_standings(std::span<const ScorelinePrediction> predictions) {
  std::vector<MatchResult> results;
  for (const auto& p : predictions) {
    if (const auto a = p.actual()) results.push_back({p.home_team, p.away_team, *a});
  }
  if (results.empty()) throw Error(ErrorKind::EmptyInput, "no completed fixtures to tabulate");
  return tabulate(results, TableSource::Actual);
}

namespace {

void require_same_teams(const StandingsTable& a, const StandingsTable& b) {
  std::set<TeamName> ta, tb;
  for (const auto& e : a.entries()) ta.insert(e.team);
  for (const auto& e : b.entries()) tb.insert(e.team);
  if (ta != tb) throw Error(ErrorKind::TeamSetMismatch, "tables cover different teams");
}

int sgn(int v) { return (v > 0) - (v < 0); }

}  // namespace

std::optional<double> kendall_tau(const StandingsTable& a, const StandingsTable& b) {
  require_same_teams(a, b);
  std::vector<std::pair<int, int>> points;
  for (const auto& e : a.entries()) points.emplace_back(e.points, b.find(e.team)->points);
  long long concordant_minus_discordant = 0, pairs = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const int da = sgn(points[i].first - points[j].first);
      const int db = sgn(points[i].second - points[j].second);
      ++pairs;
      if (da == 0) ++ties_a;
      if (db == 0) ++ties_b;
      concordant_minus_discordant += da * db;
    }
  }
  const double denom = std::sqrt(static_cast<double>(pairs - ties_a) * static_cast<double>(pairs - ties_b));
  if (denom == 0) return std::nullopt;
  return static_cast<double>(concordant_minus_discordant) / denom;
}

std::size_t zone_size(Zone zone) { return zone == Zone::Top4 ? 4 : 3; }

std::string_view to_string(Zone zone) { return zone == Zone::Top4 ? "top4" : "bottom3"; }

double zone_accuracy(const StandingsTable& predicted, const StandingsTable& actual, Zone zone) {
  const std::size_t k = zone_size(zone);
  if (predicted.size() < k || actual.size() < k) {
    throw Error(ErrorKind::TooFewTeams, std::to_string(actual.size()) + " teams for a zone of " +
                                            std::to_string(k));
  }
  require_same_teams(predicted, actual);
  auto members = [&](const StandingsTable& t) {
    std::set<TeamName> s;
    const auto& e = t.entries();
    const std::size_t first = zone == Zone::Top4 ? 0 : e.size() - k;
    for (std::size_t i = first; i < first + k; ++i) s.insert(e[i].team);
    return s;
  };
  const auto p = members(predicted);
  const auto a = members(actual);
  std::size_t hit = 0;
  for (const auto& team : a) hit += p.count(team);
  return 100.0 * static_cast<double>(hit) / static_cast<double>(k);
}

std::string_view to_string(MissingOddsPolicy policy) {
  return policy == MissingOddsPolicy::Skip ? "skip" : "lose";
}

std::optional<MissingOddsPolicy> parse_missing_odds_policy(std::string_view text) {
  if (text == "skip") return MissingOddsPolicy::Skip;
  if (text == "lose") return MissingOddsPolicy::Lose;
  return std::nullopt;
}

BettingLedger bet_run(std::span<const ScorelinePrediction> predictions, const OddsBook& odds,
                      double stake, MissingOddsPolicy policy) {
  if (!(stake > 0) || !std::isfinite(stake)) {
    throw Error(ErrorKind::InvalidHyperparameter, "stake must be a positive number");
  }
  BettingLedger ledger;
  ledger.stake = stake;
  ledger.policy = policy;
  if (!predictions.empty()) ledger.model = predictions.front().model;
  double payouts = 0;
  for (const auto& p : predictions) {
    BetEntry e;
    e.fixture_id = p.fixture_id;
    e.predicted = p.predicted();
    e.actual = p.actual();
    if (const auto it = odds.find(p.fixture_id); it != odds.end()) e.odds = it->second.quote(e.predicted);
    e.placed = e.actual.has_value() && (e.odds.has_value() || policy == MissingOddsPolicy::Lose);
    if (e.placed) {
      ++ledger.bets_placed;
      e.correct = e.odds.has_value() && e.predicted == *e.actual;
      if (e.correct) {
        e.payout = stake * *e.odds;
        payouts += e.payout;
        ++ledger.bets_won;
      }
    } else {
      ++ledger.bets_skipped;
    }
    ledger.entries.push_back(e);
  }
  ledger.net_earnings = payouts - stake * static_cast<double>(ledger.bets_placed);
  return ledger;
}

FeatureRanking chi2_importance(const Matrix& features, std::span<const int> targets,
                               std::span<const std::string> names) {
  if (features.rows() != targets.size()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(features.rows()) + " rows vs " +
                                               std::to_string(targets.size()) + " targets");
  }
  if (names.size() != features.cols()) {
    throw Error(ErrorKind::LengthMismatch, std::to_string(names.size()) + " names for " +
                                               std::to_string(features.cols()) + " columns");
  }
  if (features.empty()) throw Error(ErrorKind::EmptyInput, "no rows to score");
  std::map<int, std::size_t> class_index;
  for (int t : targets) {
    if (t < 0) throw Error(ErrorKind::NegativeFeature, "class label " + std::to_string(t) + " is negative");
    class_index.emplace(t, 0);
  }
  std::size_t next = 0;
  for (auto& [label, idx] : class_index) idx = next++;
  std::vector<double> class_share(class_index.size(), 0.0);
  for (int t : targets) class_share[class_index[t]] += 1.0;
  for (double& s : class_share) s /= static_cast<double>(targets.size());

  FeatureRanking ranking;
  ranking.reserve(features.cols());
  std::vector<double> observed(class_index.size());
  for (std::size_t c = 0; c < features.cols(); ++c) {
    double lo = features(0, c), hi = features(0, c);
    for (std::size_t r = 0; r < features.rows(); ++r) {
      const double v = features(r, c);
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, names[c] + " has a non-finite value");
      if (v < 0) throw Error(ErrorKind::NegativeFeature, names[c] + " has a negative value");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double range = hi - lo;
    std::fill(observed.begin(), observed.end(), 0.0);
    double total = 0;
    for (std::size_t r = 0; r < features.rows(); ++r) {
      const double scaled = range > 0 ? (features(r, c) - lo) / range : 0.0;
      observed[class_index[targets[r]]] += scaled;
      total += scaled;
    }
    double score = 0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
      const double expected = class_share[k] * total;
      if (expected <= 0) continue;
      const double d = observed[k] - expected;
      score += d * d / expected;
    }
    ranking.push_back({names[c], score});
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const FeatureScore& a, const FeatureScore& b) { return a.score > b.score; });
  return ranking;
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::HomeFitness: return "home_rmse";
    case Scenario::AwayFitness: return "away_rmse";
    case Scenario::Betting: return "betting_net";
    case Scenario::Tau: return "kendall_tau";
    case Scenario::Top4: return "top4_pct";
    case Scenario::Bottom3: return "bottom3_pct";
  }
  return "?";
}

bool higher_is_better(Scenario scenario) {
  return scenario != Scenario::HomeFitness && scenario != Scenario::AwayFitness;
}

std::vector<std::size_t> competition_ranks(std::span<const std::optional<double>> values,
                                           bool higher_better) {
  std::vector<std::size_t> ranks(values.size());
  std::size_t present = 0;
  for (const auto& v : values) present += v.has_value();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      ranks[i] = present + 1;
      continue;
    }
    std::size_t better = 0;
    for (const auto& other : values) {
      if (other && (higher_better ? *other > *values[i] : *other < *values[i])) ++better;
    }
    ranks[i] = better + 1;
  }
  return ranks;
}

std::vector<ModelRanks> scenario_ranks(std::span<const ModelScores> scores) {
  std::vector<ModelRanks> out(scores.size());
  for (std::size_t m = 0; m < scores.size(); ++m) out[m].model = scores[m].model;
  for (const Scenario s : kScenarios) {
    std::vector<std::optional<double>> column;
    for (const auto& model : scores) {
      const auto it = model.values.find(s);
      if (it == model.values.end()) {
        throw Error(ErrorKind::MissingScenario, model.model + " has no " + std::string(to_string(s)));
      }
      column.push_back(it->second);
    }
    const auto ranks = competition_ranks(column, higher_is_better(s));
    for (std::size_t m = 0; m < scores.size(); ++m) out[m].ranks[s] = ranks[m];
  }
  return out;
}

std::vector<ModelScores> best_by_family(std::span<const ModelScores> scores,
                                        std::span<const std::string> family_of) {
  if (scores.size() != family_of.size()) {
    throw Error(ErrorKind::LengthMismatch, "one family label per model is required");
  }
  std::vector<ModelScores> out;
  for (std::size_t m = 0; m < scores.size(); ++m) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const ModelScores& f) { return f.model == family_of[m]; });
    if (it == out.end()) {
      out.push_back({family_of[m], {}});
      it = std::prev(out.end());
      for (const Scenario s : kScenarios) it->values[s] = std::nullopt;
    }
    for (const Scenario s : kScenarios) {
      const auto v = scores[m].values.find(s);
      if (v == scores[m].values.end()) {
        throw Error(ErrorKind::MissingScenario, scores[m].model + " has no " + std::string(to_string(s)));
      }
      if (!v->second) continue;
      auto& best = it->values[s];
      if (!best || (higher_is_better(s) ? *v->second > *best : *v->second < *best)) best = v->second;
    }
  }
  return out;
}

std::vector<OverviewRow> rank_sum_overview(std::span<const ModelRanks> ranks) {
  std::vector<OverviewRow> rows;
  rows.reserve(ranks.size());
  for (const auto& model : ranks) {
    OverviewRow row;
    row.model = model.model;
    for (std::size_t i = 0; i < kScenarios.size(); ++i) {
      const auto it = model.ranks.find(kScenarios[i]);
      if (it == model.ranks.end()) {
        throw Error(ErrorKind::MissingScenario,
                    model.model + " has no rank for " + std::string(to_string(kScenarios[i])));
      }
      row.ranks[i] = it->second;
      row.rank_sum += it->second;
    }
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const OverviewRow& a, const OverviewRow& b) { return a.rank_sum < b.rank_sum; });
  return rows;
}

}  // namespace scorecast
