#include <algorithm>
#include <utility>

#include "scorecast/error.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

std::vector<std::size_t> nearest_neighbours(const Matrix& train, std::span<const double> query,
                                            std::size_t k) {
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(train.rows());
  for (std::size_t r = 0; r < train.rows(); ++r) {
    const auto row = train.row(r);
    double d = 0;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double diff = row[c] - query[c];
      d += diff * diff;
    }
    dist.emplace_back(d, r);
  }
  k = std::min(k, dist.size());
  // Pair ordering breaks distance ties by the lower row index.
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = dist[i].second;
  return out;
}

TrainedModel fit_knn(const Matrix& x, std::span<const double> y, const KnnParams& params) {
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(x.rows()) + " rows vs " +
                                                  std::to_string(y.size()) + " targets");
  }
  if (params.k < 1) throw Error(ErrorKind::InvalidHyperparameter, "k must be >= 1");
  if (params.k > x.rows()) {
    throw Error(ErrorKind::KTooLarge, "k = " + std::to_string(params.k) + " with " +
                                          std::to_string(x.rows()) + " training rows");
  }
  TrainedModel model;
  model.technique = Technique::KNN;
  model.spec.technique = Technique::KNN;
  model.spec.knn = params;
  model.n_features = x.cols();
  model.scaler = standardize_fit(x);
  KnnFit fit;
  fit.k = params.k;
  fit.train_x = standardize_apply(*model.scaler, x);
  fit.train_y.assign(y.begin(), y.end());
  model.fit = std::move(fit);
  return model;
}

}  // namespace scorecast
