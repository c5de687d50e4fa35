#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "scorecast/features.hpp"
#include "scorecast/predict.hpp"
#include "scorecast/regress.hpp"
#include "test_support.hpp"

namespace scorecast {
namespace {

using testing::kind_of;

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, double lo = -2,
                     double hi = 2) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
  }
  return m;
}

double mean_abs_error(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s / static_cast<double>(a.size());
}

TEST(Scaler, ZScoresWithPopulationStdAndConstantColumns) {
  const Matrix x = Matrix::from_rows({{1, 5}, {3, 5}, {5, 5}});
  const Scaler s = standardize_fit(x);
  EXPECT_DOUBLE_EQ(s.mean[0], 3.0);
  EXPECT_DOUBLE_EQ(s.scale[0], std::sqrt(8.0 / 3.0));
  EXPECT_DOUBLE_EQ(s.scale[1], 0.0);
  const Matrix z = standardize_apply(s, x);
  EXPECT_DOUBLE_EQ(z(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(z(0, 0), -z(2, 0));
  for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(z(r, 1), 0.0);
}

TEST(LinearRegression, RecoversNoiselessCoefficients) {
  const Matrix x = random_matrix(40, 3, 1);
  std::vector<double> y;
  for (std::size_t r = 0; r < x.rows(); ++r) y.push_back(2 + 3 * x(r, 0) - 1.5 * x(r, 1) + 0.25 * x(r, 2));
  const auto model = fit_lr(x, y);
  const auto& f = std::get<LinearFit>(model.fit);
  EXPECT_NEAR(f.intercept, 2.0, 1e-6);
  EXPECT_NEAR(f.weights[0], 3.0, 1e-6);
  EXPECT_NEAR(f.weights[1], -1.5, 1e-6);
  EXPECT_NEAR(f.weights[2], 0.25, 1e-6);
  EXPECT_FALSE(f.ridge_fallback);
  EXPECT_LT(mean_abs_error(predict(model, x), y), 1e-9);
}

TEST(LinearRegression, ResidualsAreOrthogonalToColumns) {
  const Matrix x = random_matrix(60, 4, 2);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0, 1);
  std::vector<double> y;
  for (std::size_t r = 0; r < x.rows(); ++r) y.push_back(x(r, 0) - x(r, 3) + noise(rng));
  for (bool standardize : {false, true}) {
    const auto model = fit_lr(x, y, {.standardize = standardize});
    const auto p = predict(model, x);
    double sum = 0;
    std::vector<double> dots(x.cols(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
      const double e = y[r] - p[r];
      sum += e;
      for (std::size_t c = 0; c < x.cols(); ++c) dots[c] += e * x(r, c);
    }
    EXPECT_NEAR(sum, 0.0, 1e-8);
    for (double d : dots) EXPECT_NEAR(d, 0.0, 1e-8);
  }
}

TEST(LinearRegression, CollinearColumnsUseRidgeFallback) {
  Matrix x(20, 2);
  std::vector<double> y;
  for (std::size_t r = 0; r < 20; ++r) {
    x(r, 0) = static_cast<double>(r);
    x(r, 1) = 2.0 * static_cast<double>(r);
    y.push_back(1.0 + static_cast<double>(r));
  }
  const auto model = fit_lr(x, y);
  EXPECT_TRUE(std::get<LinearFit>(model.fit).ridge_fallback);
  EXPECT_EQ(model.metadata.at("ridge_fallback"), "true");
  EXPECT_LT(mean_abs_error(predict(model, x), y), 1e-4);
}

TEST(Knn, SingleNeighbourReproducesTrainingTargets) {
  const Matrix x = random_matrix(30, 3, 4);
  std::vector<double> y(30);
  std::iota(y.begin(), y.end(), 0.0);
  const auto model = fit_knn(x, y, {.k = 1});
  EXPECT_EQ(mean_abs_error(predict(model, x), y), 0.0);
}

TEST(Knn, MatchesBruteForceNeighbours) {
  const Matrix x = random_matrix(25, 3, 5, 0, 10);
  std::vector<double> y;
  for (std::size_t r = 0; r < 25; ++r) y.push_back(static_cast<double>(r % 7));
  const Matrix q = random_matrix(10, 3, 6, 0, 10);
  const std::size_t k = 4;
  const auto got = predict(fit_knn(x, y, {.k = k}), q);

  std::vector<double> mean(3, 0.0), sd(3, 0.0);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t r = 0; r < 25; ++r) mean[c] += x(r, c) / 25;
    for (std::size_t r = 0; r < 25; ++r) sd[c] += (x(r, c) - mean[c]) * (x(r, c) - mean[c]) / 25;
    sd[c] = std::sqrt(sd[c]);
  }
  for (std::size_t i = 0; i < q.rows(); ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t r = 0; r < 25; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < 3; ++c) {
        const double t = (x(r, c) - q(i, c)) / sd[c];
        s += t * t;
      }
      d.emplace_back(s, r);
    }
    std::sort(d.begin(), d.end());
    double expected = 0;
    for (std::size_t j = 0; j < k; ++j) expected += y[d[j].second] / k;
    EXPECT_NEAR(got[i], expected, 1e-12);
  }
}

TEST(Knn, RejectsKLargerThanTrainingSet) {
  const Matrix x = random_matrix(3, 2, 7);
  const std::vector<double> y = {1, 2, 3};
  EXPECT_EQ(kind_of([&] { fit_knn(x, y, {.k = 4}); }), ErrorKind::KTooLarge);
  EXPECT_EQ(kind_of([&] { fit_knn(x, y, {.k = 0}); }), ErrorKind::InvalidHyperparameter);
}

TEST(DecisionTree, SplitsAtMidpoint) {
  const Matrix x = Matrix::from_rows({{0}, {1}});
  const std::vector<double> y = {0, 1};
  const auto model = fit_dtr(x, y, {.max_depth = 3, .min_leaf = 1});
  const auto& tree = std::get<Tree>(model.fit);
  ASSERT_EQ(tree.nodes.size(), 3u);
  EXPECT_EQ(tree.nodes[0].feature, 0);
  EXPECT_DOUBLE_EQ(tree.nodes[0].threshold, 0.5);
  EXPECT_EQ(predict(model, Matrix::from_rows({{0.49}, {0.5}, {7}})),
            (std::vector<double>{0, 1, 1}));
}

TEST(DecisionTree, ConstantTargetIsSingleLeaf) {
  const Matrix x = random_matrix(20, 3, 8);
  const std::vector<double> y(20, 2.0);
  const auto model = fit_dtr(x, y, {.max_depth = 6, .min_leaf = 1});
  EXPECT_EQ(std::get<Tree>(model.fit).leaf_count(), 1u);
  for (double p : predict(model, random_matrix(5, 3, 9))) EXPECT_EQ(p, 2.0);
}

// Exhaustive recursive CART: every feature, every midpoint, first strict best wins.
struct BruteTree {
  const Matrix& x;
  std::span<const double> y;
  std::size_t max_depth;
  std::size_t min_leaf;

  double predict(std::vector<std::size_t> rows, std::span<const double> q, std::size_t depth) const {
    double mean = 0;
    for (auto r : rows) mean += y[r];
    mean /= static_cast<double>(rows.size());
    double sse = 0;
    for (auto r : rows) sse += (y[r] - mean) * (y[r] - mean);
    if (depth >= max_depth || rows.size() < 2 * min_leaf || sse <= 0) return mean;
    double best = sse;
    int bf = -1;
    double bt = 0;
    for (std::size_t f = 0; f < x.cols(); ++f) {
      std::vector<double> values;
      for (auto r : rows) values.push_back(x(r, f));
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (std::size_t i = 1; i < values.size(); ++i) {
        const double t = values[i - 1] + (values[i] - values[i - 1]) / 2;
        std::vector<double> l, r;
        for (auto row : rows) (x(row, f) < t ? l : r).push_back(y[row]);
        if (l.size() < min_leaf || r.size() < min_leaf) continue;
        auto part = [](const std::vector<double>& v) {
          const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
          double s = 0;
          for (double e : v) s += (e - m) * (e - m);
          return s;
        };
        const double s = part(l) + part(r);
        if (s < best - 1e-12 * std::max(1.0, sse)) {
          best = s;
          bf = static_cast<int>(f);
          bt = t;
        }
      }
    }
    if (bf < 0) return mean;
    std::vector<std::size_t> left, right;
    for (auto r : rows) (x(r, static_cast<std::size_t>(bf)) < bt ? left : right).push_back(r);
    return predict(q[static_cast<std::size_t>(bf)] < bt ? left : right, q, depth + 1);
  }
};

TEST(DecisionTree, MatchesExhaustiveSplitSearch) {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    const Matrix x = random_matrix(12, 3, seed);
    const Matrix yv = random_matrix(12, 1, seed + 100, 0, 5);
    const std::vector<double> y(yv.data().begin(), yv.data().end());
    for (std::size_t depth : {1, 2, 4}) {
      for (std::size_t leaf : {1, 2}) {
        const auto model = fit_dtr(x, y, {.max_depth = depth, .min_leaf = leaf});
        const BruteTree brute{x, y, depth, leaf};
        std::vector<std::size_t> all(12);
        std::iota(all.begin(), all.end(), 0);
        const Matrix q = random_matrix(8, 3, seed + 200);
        const auto got = predict(model, q);
        for (std::size_t i = 0; i < q.rows(); ++i) {
          EXPECT_NEAR(got[i], brute.predict(all, q.row(i), 0), 1e-12)
              << "seed " << seed << " depth " << depth << " leaf " << leaf;
        }
      }
    }
  }
}

TEST(DecisionTree, RespectsDepthAndLeafLimits) {
  const Matrix x = random_matrix(100, 4, 20);
  const Matrix yv = random_matrix(100, 1, 21);
  const std::vector<double> y(yv.data().begin(), yv.data().end());
  const auto model = fit_dtr(x, y, {.max_depth = 3, .min_leaf = 7});
  const auto& tree = std::get<Tree>(model.fit);
  EXPECT_LE(tree.depth(), 3u);
  for (const auto& node : tree.nodes) {
    if (node.feature < 0) EXPECT_GE(node.samples, 7u);
  }
  EXPECT_EQ(kind_of([&] { fit_dtr(random_matrix(5, 1, 1), std::vector<double>(5), {6, 3}); }),
            ErrorKind::TooFewRows);
}

TEST(RandomForest, SingleFullTreeEqualsDecisionTree) {
  const Matrix x = random_matrix(50, 5, 30);
  const Matrix yv = random_matrix(50, 1, 31);
  const std::vector<double> y(yv.data().begin(), yv.data().end());
  const TreeParams tree{.max_depth = 5, .min_leaf = 2};
  const ForestParams forest{.n_trees = 1, .bootstrap = false, .max_features = 5};
  const Matrix q = random_matrix(20, 5, 32);
  EXPECT_EQ(predict(fit_rfr(x, y, tree, forest, 99), q), predict(fit_dtr(x, y, tree), q));
}

TEST(RandomForest, DeterministicForSeed) {
  const Matrix x = random_matrix(50, 6, 40);
  const Matrix yv = random_matrix(50, 1, 41);
  const std::vector<double> y(yv.data().begin(), yv.data().end());
  const ForestParams forest{.n_trees = 20};
  const Matrix q = random_matrix(10, 6, 42);
  const auto a = predict(fit_rfr(x, y, {}, forest, 7), q);
  EXPECT_EQ(a, predict(fit_rfr(x, y, {}, forest, 7), q));
  EXPECT_NE(a, predict(fit_rfr(x, y, {}, forest, 8), q));
}

TEST(RandomForest, AveragesTreesBeforeRounding) {
  TrainedModel model;
  model.technique = Technique::RFR;
  model.n_features = 1;
  ForestFit forest;
  for (double v : {0.8, 1.2, 1.5, 0.9, 1.1}) {
    Tree t;
    t.nodes.push_back({-1, 0, -1, -1, v, 1});
    forest.trees.push_back(t);
  }
  model.fit = forest;
  const double raw = predict(model, Matrix(1, 1))[0];
  EXPECT_NEAR(raw, 1.1, 1e-12);
  EXPECT_EQ(round_goals(raw), 1);
}

double primal_objective(const Matrix& z, std::span<const double> y, std::span<const double> w,
                        double b, const SvrParams& p) {
  double obj = 0;
  for (double wi : w) obj += 0.5 * wi * wi;
  for (std::size_t r = 0; r < z.rows(); ++r) {
    double f = b;
    for (std::size_t c = 0; c < z.cols(); ++c) f += w[c] * z(r, c);
    obj += p.c * std::max(0.0, std::abs(y[r] - f) - p.epsilon);
  }
  return obj;
}

/// Plain subgradient descent on the primal, keeping the best iterate.
double reference_primal(const Matrix& z, std::span<const double> y, const SvrParams& p) {
  std::vector<double> w(z.cols(), 0.0);
  double b = 0;
  double best = primal_objective(z, y, w, b, p);
  for (int it = 1; it <= 200000; ++it) {
    std::vector<double> gw(w);
    double gb = 0;
    for (std::size_t r = 0; r < z.rows(); ++r) {
      double f = b;
      for (std::size_t c = 0; c < z.cols(); ++c) f += w[c] * z(r, c);
      const double e = y[r] - f;
      if (std::abs(e) <= p.epsilon) continue;
      const double s = e > 0 ? -p.c : p.c;
      for (std::size_t c = 0; c < z.cols(); ++c) gw[c] += s * z(r, c);
      gb += s;
    }
    const double step = 0.05 / std::sqrt(static_cast<double>(it)) / static_cast<double>(z.rows());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] -= step * gw[c];
    b -= step * gb;
    best = std::min(best, primal_objective(z, y, w, b, p));
  }
  return best;
}

TEST(Svr, FlatTubeGivesZeroWeights) {
  const Matrix x = random_matrix(30, 2, 50);
  std::vector<double> y;
  for (std::size_t r = 0; r < 30; ++r) y.push_back(2.0 + 0.05 * std::sin(static_cast<double>(r)));
  const SvrParams params{.c = 1.0, .epsilon = 0.1};
  const auto model = fit_svr(x, y, params);
  const auto& f = std::get<SvrFit>(model.fit);
  for (double w : f.weights) EXPECT_NEAR(w, 0.0, 1e-9);
  for (double p : predict(model, x)) {
    EXPECT_GE(p, 1.95 - 1e-3);
    EXPECT_LE(p, 2.05 + 1e-3);
  }
}

TEST(Svr, RecoversLinearSlope) {
  const Matrix x = random_matrix(40, 1, 51);
  std::vector<double> y;
  for (std::size_t r = 0; r < 40; ++r) y.push_back(3.0 * x(r, 0) + 1.0);
  const auto model = fit_svr(x, y, {.c = 100.0, .epsilon = 0.01});
  EXPECT_EQ(model.metadata.at("converged"), "true");
  const auto p = predict(model, x);
  for (std::size_t r = 0; r < 40; ++r) EXPECT_NEAR(p[r], y[r], 0.02);
}

TEST(Svr, ObjectiveWithinOnePercentOfPrimalReference) {
  const Matrix x = random_matrix(40, 3, 52);
  std::mt19937_64 rng(53);
  std::normal_distribution<double> noise(0, 0.5);
  std::vector<double> y;
  for (std::size_t r = 0; r < 40; ++r) y.push_back(x(r, 0) - 2 * x(r, 2) + noise(rng));
  const SvrParams params{.c = 1.0, .epsilon = 0.1};
  const auto model = fit_svr(x, y, params);
  const Matrix z = standardize_apply(*model.scaler, x);
  const auto& f = std::get<SvrFit>(model.fit);
  const double ours = primal_objective(z, y, f.weights, f.bias, params);
  const double reference = reference_primal(z, y, params);
  EXPECT_LE(ours, reference * 1.01);
  // Strong duality: the primal value and the (minimised) dual value cancel.
  const double dual = std::stod(model.metadata.at("dual_objective"));
  EXPECT_NEAR(ours, -dual, 0.01 * ours);
}

TEST(Svr, InvariantToAffineFeatureRescaling) {
  const Matrix x = random_matrix(30, 2, 54);
  std::vector<double> y;
  for (std::size_t r = 0; r < 30; ++r) y.push_back(x(r, 0) * x(r, 1) + x(r, 0));
  Matrix shifted = x;
  for (std::size_t r = 0; r < 30; ++r) {
    shifted(r, 0) = 10 * x(r, 0) + 3;
    shifted(r, 1) = 0.5 * x(r, 1) - 7;
  }
  for (Kernel kernel : {Kernel::Linear, Kernel::Rbf}) {
    const SvrParams params{.kernel = kernel, .tolerance = 1e-10};
    const auto a = predict(fit_svr(x, y, params), x);
    const auto b = predict(fit_svr(shifted, y, params), shifted);
    for (std::size_t r = 0; r < 30; ++r) EXPECT_NEAR(a[r], b[r], 1e-6);
  }
}

TEST(Svr, DualSolutionSatisfiesConstraints) {
  const Matrix x = random_matrix(20, 2, 55);
  std::vector<double> y;
  for (std::size_t r = 0; r < 20; ++r) y.push_back(x(r, 0) + 0.3 * x(r, 1));
  Matrix gram(20, 20);
  for (std::size_t a = 0; a < 20; ++a) {
    for (std::size_t b = 0; b < 20; ++b) gram(a, b) = x(a, 0) * x(b, 0) + x(a, 1) * x(b, 1);
  }
  const SvrParams params{.c = 0.5, .epsilon = 0.05};
  const auto sol = solve_svr_dual(gram, y, params);
  EXPECT_TRUE(sol.converged);
  double sum = 0;
  for (double c : sol.coefficients) {
    EXPECT_LE(std::abs(c), params.c + 1e-12);
    sum += c;
  }
  EXPECT_NEAR(sum, 0.0, 1e-9);
}

TEST(Svr, ConvergesOnSampleTrainingSets) {
  const auto& ds = testing::sample();
  const auto universe = player_universe(ds.train());
  const FeatureContext ctx{testing::default_schema(), ds.stats, ds.seasons, universe};
  for (const Approach approach : kApproaches) {
    for (const Side side : {Side::Home, Side::Away}) {
      const auto m = build_matrix(ds.train(), approach, side, ctx);
      std::vector<std::vector<double>> rows;
      std::vector<double> y;
      for (const auto& row : m.rows) {
        rows.push_back(row.values);
        y.push_back(*row.target);
      }
      RegressorSpec spec;
      spec.technique = Technique::SVR;
      const auto model = fit(spec, Matrix::from_rows(rows), y, m.fingerprint);
      EXPECT_EQ(model.metadata.at("converged"), "true") << to_string(approach);
    }
  }
}

TEST(Fit, ValidatesInputsAndStampsFingerprint) {
  const Matrix x = random_matrix(10, 2, 60);
  std::vector<double> y(10, 1.0);
  RegressorSpec spec;
  const auto model = fit(spec, x, y, 1234);
  EXPECT_EQ(model.schema_fingerprint, 1234u);
  EXPECT_NO_THROW(predict(model, x, 1234));
  EXPECT_EQ(kind_of([&] { predict(model, x, 999); }), ErrorKind::SchemaMismatch);
  EXPECT_EQ(kind_of([&] { predict(model, Matrix(1, 3)); }), ErrorKind::SchemaMismatch);

  Matrix bad = x;
  bad(3, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(kind_of([&] { fit(spec, bad, y); }), ErrorKind::NonFinite);
  y[2] = std::numeric_limits<double>::infinity();
  EXPECT_EQ(kind_of([&] { fit(spec, x, y); }), ErrorKind::NonFinite);
  y[2] = 1.0;
  EXPECT_EQ(kind_of([&] { fit(spec, x, std::vector<double>(9, 1.0)); }),
            ErrorKind::DimensionMismatch);

  auto invalid = [&](auto mutate) {
    RegressorSpec s;
    mutate(s);
    return kind_of([&] { s.validate(); });
  };
  EXPECT_EQ(invalid([](RegressorSpec& s) { s.knn.k = 0; }), ErrorKind::InvalidHyperparameter);
  EXPECT_EQ(invalid([](RegressorSpec& s) { s.svr.c = 0; }), ErrorKind::InvalidHyperparameter);
  EXPECT_EQ(invalid([](RegressorSpec& s) { s.svr.epsilon = -1; }), ErrorKind::InvalidHyperparameter);
  EXPECT_EQ(invalid([](RegressorSpec& s) { s.tree.max_depth = 0; }), ErrorKind::InvalidHyperparameter);
  EXPECT_EQ(invalid([](RegressorSpec& s) { s.forest.n_trees = 0; }), ErrorKind::InvalidHyperparameter);
  EXPECT_EQ(invalid([](RegressorSpec& s) { s.forest.max_features = 0; }),
            ErrorKind::InvalidHyperparameter);
}

TEST(Technique, NamesRoundTrip) {
  for (Technique t : kTechniques) EXPECT_EQ(parse_technique(to_string(t)), t);
  EXPECT_EQ(parse_technique("SVR"), Technique::SVR);
  EXPECT_FALSE(parse_technique("gbm"));
}

}  // namespace
}  // namespace scorecast
