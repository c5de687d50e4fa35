#include <algorithm>
#include <cmath>
#include <numeric>

#include "scorecast/error.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

double Tree::predict(std::span<const double> x) const {
  std::size_t idx = 0;
  while (nodes[idx].feature >= 0) {
    const TreeNode& n = nodes[idx];
    idx = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                                        : n.right);
  }
  return nodes[idx].value;
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> d(nodes.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes[i].feature >= 0) {
      d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
    }
  }
  return best;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double sse = 0.0;
};

double node_sse(std::span<const double> y, std::span<const std::size_t> rows, double mean) {
  double s = 0;
  for (std::size_t r : rows) {
    const double d = y[r] - mean;
    s += d * d;
  }
  return s;
}

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const double> y, const TreeParams& params,
              std::size_t max_features, std::mt19937_64* rng)
      : x_(x), y_(y), params_(params), max_features_(std::min(max_features, x.cols())), rng_(rng) {}

  Tree build(std::vector<std::size_t> rows) {
    grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t> rows, std::size_t depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    double sum = 0;
    for (std::size_t r : rows) sum += y_[r];
    const double mean = sum / static_cast<double>(rows.size());
    const double sse = node_sse(y_, rows, mean);
    {
      TreeNode& node = tree_.nodes[static_cast<std::size_t>(id)];
      node.value = mean;
      node.samples = rows.size();
    }
    if (depth >= params_.max_depth || rows.size() < 2 * params_.min_leaf || sse <= 0.0) return id;

    const Split best = find_split(rows, sse);
    if (best.feature < 0) return id;

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (x_(r, static_cast<std::size_t>(best.feature)) < best.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    const int l = grow(std::move(left), depth + 1);
    const int rgt = grow(std::move(right), depth + 1);
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = rgt;
    return id;
  }

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> all(x_.cols());
    std::iota(all.begin(), all.end(), 0);
    if (max_features_ >= all.size() || rng_ == nullptr) return all;
    // Partial Fisher-Yates, then restore index order so ties still prefer low features.
    for (std::size_t i = 0; i < max_features_; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(*rng_)]);
    }
    all.resize(max_features_);
    std::sort(all.begin(), all.end());
    return all;
  }

  Split find_split(const std::vector<std::size_t>& rows, double parent_sse) {
    const std::size_t n = rows.size();
    const double tie_eps = 1e-12 * std::max(1.0, parent_sse);
    Split best;
    best.sse = parent_sse;
    std::vector<std::size_t> order(rows);
    for (std::size_t f : candidate_features()) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x_(a, f), vb = x_(b, f);
        return va < vb || (va == vb && a < b);
      });
      // Prefix sums give each candidate's child SSE as sumsq - sum^2 / count.
      double total = 0, total_sq = 0;
      for (std::size_t r : order) {
        total += y_[r];
        total_sq += y_[r] * y_[r];
      }
      double left = 0, left_sq = 0;
      for (std::size_t i = 1; i < n; ++i) {
        const double yv = y_[order[i - 1]];
        left += yv;
        left_sq += yv * yv;
        const double lo = x_(order[i - 1], f);
        const double hi = x_(order[i], f);
        if (!(lo < hi)) continue;
        if (i < params_.min_leaf || n - i < params_.min_leaf) continue;
        const double nl = static_cast<double>(i);
        const double nr = static_cast<double>(n - i);
        const double right = total - left;
        const double right_sq = total_sq - left_sq;
        const double sse = std::max(0.0, left_sq - left * left / nl) +
                           std::max(0.0, right_sq - right * right / nr);
        if (sse < best.sse - tie_eps) {
          double threshold = lo + (hi - lo) / 2;
          if (!(threshold > lo)) threshold = hi;
          best = {static_cast<int>(f), threshold, sse};
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  std::span<const double> y_;
  TreeParams params_;
  std::size_t max_features_;
  std::mt19937_64* rng_;
  Tree tree_;
};

void check_tree_inputs(const Matrix& x, std::span<const double> y, const TreeParams& params) {
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(x.rows()) + " rows vs " +
                                                  std::to_string(y.size()) + " targets");
  }
  if (params.max_depth < 1) throw Error(ErrorKind::InvalidHyperparameter, "max_depth must be >= 1");
  if (params.min_leaf < 1) throw Error(ErrorKind::InvalidHyperparameter, "min_leaf must be >= 1");
  if (x.rows() < 2 * params.min_leaf) {
    throw Error(ErrorKind::TooFewRows, std::to_string(x.rows()) + " rows with min_leaf " +
                                           std::to_string(params.min_leaf));
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Tree grow_tree(const Matrix& x, std::span<const double> y, std::span<const std::size_t> rows,
               const TreeParams& params, std::size_t max_features, std::mt19937_64* rng) {
  if (rows.empty()) throw Error(ErrorKind::TooFewRows, "cannot grow a tree on zero rows");
  return TreeBuilder(x, y, params, max_features, rng)
      .build(std::vector<std::size_t>(rows.begin(), rows.end()));
}

TrainedModel fit_dtr(const Matrix& x, std::span<const double> y, const TreeParams& params) {
  check_tree_inputs(x, y, params);
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), 0);
  TrainedModel model;
  model.technique = Technique::DTR;
  model.spec.technique = Technique::DTR;
  model.spec.tree = params;
  model.n_features = x.cols();
  model.fit = grow_tree(x, y, rows, params, x.cols(), nullptr);
  return model;
}

TrainedModel fit_rfr(const Matrix& x, std::span<const double> y, const TreeParams& tree,
                     const ForestParams& forest, std::uint64_t seed) {
  check_tree_inputs(x, y, tree);
  if (forest.n_trees < 1) throw Error(ErrorKind::InvalidHyperparameter, "n_trees must be >= 1");
  if (forest.bootstrap && !(forest.bootstrap_fraction > 0.0)) {
    throw Error(ErrorKind::InvalidHyperparameter, "bootstrap fraction must be > 0");
  }
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  const std::size_t mtry = forest.max_features.value_or(
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(p)))));
  if (mtry < 1) throw Error(ErrorKind::InvalidHyperparameter, "max_features must be >= 1");

  ForestFit fit;
  fit.trees.reserve(forest.n_trees);
  std::vector<std::size_t> rows;
  for (std::size_t t = 0; t < forest.n_trees; ++t) {
    std::mt19937_64 rng(splitmix64(seed + t));
    rows.clear();
    if (forest.bootstrap) {
      const auto draws = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::llround(forest.bootstrap_fraction * static_cast<double>(n))));
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t i = 0; i < draws; ++i) rows.push_back(pick(rng));
    } else {
      rows.resize(n);
      std::iota(rows.begin(), rows.end(), 0);
    }
    fit.trees.push_back(grow_tree(x, y, rows, tree, mtry, &rng));
  }

  TrainedModel model;
  model.technique = Technique::RFR;
  model.spec.technique = Technique::RFR;
  model.spec.tree = tree;
  model.spec.forest = forest;
  model.spec.seed = seed;
  model.n_features = p;
  model.fit = std::move(fit);
  return model;
}

}  // namespace scorecast
