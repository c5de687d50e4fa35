#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scorecast/matrix.hpp"

namespace scorecast {

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

/// Per-column z-scoring learned from training data. Zero-variance columns map to 0.
struct Scaler {
  std::vector<double> mean;
  std::vector<double> scale;  // population standard deviation; 0 marks a constant column
};

Scaler standardize_fit(const Matrix& x);
Matrix standardize_apply(const Scaler& scaler, const Matrix& x);
void standardize_row(const Scaler& scaler, std::span<const double> in, std::span<double> out);

// ---------------------------------------------------------------------------
// Hyperparameters
// ---------------------------------------------------------------------------

enum class Technique { LR, KNN, DTR, RFR, SVR };
inline constexpr std::array<Technique, 5> kTechniques = {Technique::LR, Technique::KNN,
                                                         Technique::DTR, Technique::RFR,
                                                         Technique::SVR};
std::string_view to_string(Technique technique);
std::optional<Technique> parse_technique(std::string_view text);  // case-insensitive

enum class Kernel { Linear, Rbf };
std::string_view to_string(Kernel kernel);
std::optional<Kernel> parse_kernel(std::string_view text);

struct LinearParams {
  bool standardize = false;
  double ridge_fallback = 1e-8;
};

struct KnnParams {
  std::size_t k = 5;
};

struct TreeParams {
  std::size_t max_depth = 6;
  std::size_t min_leaf = 5;
};

struct ForestParams {
  std::size_t n_trees = 100;
  bool bootstrap = true;
  double bootstrap_fraction = 1.0;
  /// Features considered per split; unset means ceil(sqrt(p)).
  std::optional<std::size_t> max_features;
};

struct SvrParams {
  double c = 1.0;
  double epsilon = 0.1;
  Kernel kernel = Kernel::Linear;
  double gamma = 0.0;  // RBF width; 0 means 1 / n_features
  double tolerance = 1e-6;
  std::size_t max_iterations = 50'000;
};

struct RegressorSpec {
  Technique technique = Technique::LR;
  LinearParams linear;
  KnnParams knn;
  TreeParams tree;  // shared by DTR and by every tree of RFR
  ForestParams forest;
  SvrParams svr;
  std::uint64_t seed = 42;

  /// Throws InvalidHyperparameter.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Fitted state
// ---------------------------------------------------------------------------

struct LinearFit {
  std::vector<double> weights;
  double intercept = 0.0;
  bool ridge_fallback = false;
};

struct KnnFit {
  std::size_t k = 0;
  Matrix train_x;  // standardized
  std::vector<double> train_y;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // rows with value < threshold go left
  int left = -1;
  int right = -1;
  double value = 0.0;  // mean target of the node's rows
  std::size_t samples = 0;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
};

struct ForestFit {
  std::vector<Tree> trees;
};

struct SvrFit {
  Kernel kernel = Kernel::Linear;
  double gamma = 0.0;
  double bias = 0.0;
  std::vector<double> weights;  // linear kernel: primal weights in standardized space
  Matrix support_vectors;       // RBF kernel: standardized rows with nonzero coefficient
  std::vector<double> coefficients;
};

struct TrainedModel {
  Technique technique = Technique::LR;
  RegressorSpec spec;
  std::variant<LinearFit, KnnFit, Tree, ForestFit, SvrFit> fit;
  std::optional<Scaler> scaler;
  std::size_t n_features = 0;
  std::uint64_t schema_fingerprint = 0;
  /// Solver diagnostics (ridge fallback, convergence, iterations, objective).
  std::map<std::string, std::string> metadata;
};

// ---------------------------------------------------------------------------
// Training and prediction
// ---------------------------------------------------------------------------

TrainedModel fit_lr(const Matrix& x, std::span<const double> y, const LinearParams& params = {});
TrainedModel fit_knn(const Matrix& x, std::span<const double> y, const KnnParams& params = {});
TrainedModel fit_dtr(const Matrix& x, std::span<const double> y, const TreeParams& params = {});
TrainedModel fit_rfr(const Matrix& x, std::span<const double> y, const TreeParams& tree,
                     const ForestParams& forest, std::uint64_t seed);
TrainedModel fit_svr(const Matrix& x, std::span<const double> y, const SvrParams& params = {});

/// Dispatches on spec.technique and stamps the schema fingerprint.
TrainedModel fit(const RegressorSpec& spec, const Matrix& x, std::span<const double> y,
                 std::uint64_t schema_fingerprint = 0);

/// Raw (unrounded) predictions. SchemaMismatch if the fingerprint or width differs.
std::vector<double> predict(const TrainedModel& model, const Matrix& x,
                            std::uint64_t schema_fingerprint);
/// Width-checked prediction that ignores the fingerprint.
std::vector<double> predict(const TrainedModel& model, const Matrix& x);

/// Greedy CART growth over the given rows; exposed so forests and tests share it.
/// `max_features` >= cols means every feature is considered at every split.
Tree grow_tree(const Matrix& x, std::span<const double> y, std::span<const std::size_t> rows,
               const TreeParams& params, std::size_t max_features, std::mt19937_64* rng);

/// Indices of the k nearest rows of `train` to `query` (Euclidean, ties to the lower index).
std::vector<std::size_t> nearest_neighbours(const Matrix& train, std::span<const double> query,
                                            std::size_t k);

struct SvrSolution {
  std::vector<double> coefficients;  // alpha_i - alpha_i^* per training row
  double bias = 0.0;
  double dual_objective = 0.0;
  double kkt_gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// SMO on the epsilon-SVR dual with an unpenalized bias. `kernel` is the full
/// n x n Gram matrix.
SvrSolution solve_svr_dual(const Matrix& kernel, std::span<const double> y, const SvrParams& params);

}  // namespace scorecast
