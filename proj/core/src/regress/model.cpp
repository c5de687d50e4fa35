#include <algorithm>
#include <cctype>
#include <cmath>

#include "scorecast/error.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

std::string_view to_string(Technique technique) {
  switch (technique) {
    case Technique::LR: return "lr";
    case Technique::KNN: return "knn";
    case Technique::DTR: return "dtr";
    case Technique::RFR: return "rfr";
    case Technique::SVR: return "svr";
  }
  return "?";
}

std::optional<Technique> parse_technique(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Technique t : kTechniques) {
    if (to_string(t) == lower) return t;
  }
  return std::nullopt;
}

std::string_view to_string(Kernel kernel) { return kernel == Kernel::Linear ? "linear" : "rbf"; }

std::optional<Kernel> parse_kernel(std::string_view text) {
  if (text == "linear") return Kernel::Linear;
  if (text == "rbf") return Kernel::Rbf;
  return std::nullopt;
}

void RegressorSpec::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::InvalidHyperparameter, what); };
  if (knn.k < 1) bad("k must be >= 1");
  if (tree.max_depth < 1) bad("max_depth must be >= 1");
  if (tree.min_leaf < 1) bad("min_leaf must be >= 1");
  if (forest.n_trees < 1) bad("n_trees must be >= 1");
  if (forest.bootstrap && !(forest.bootstrap_fraction > 0)) bad("bootstrap fraction must be > 0");
  if (forest.max_features && *forest.max_features < 1) bad("max_features must be >= 1");
  if (!(svr.c > 0)) bad("C must be > 0");
  if (!(svr.epsilon >= 0)) bad("epsilon must be >= 0");
  if (!(svr.tolerance > 0)) bad("tolerance must be > 0");
  if (svr.max_iterations < 1) bad("max_iterations must be >= 1");
  if (svr.gamma < 0) bad("gamma must be >= 0");
  if (!(linear.ridge_fallback > 0)) bad("ridge fallback must be > 0");
}

TrainedModel fit(const RegressorSpec& spec, const Matrix& x, std::span<const double> y,
                 std::uint64_t schema_fingerprint) {
  spec.validate();
  for (double v : x.data()) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "feature matrix has a non-finite value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "target has a non-finite value");
  }
  TrainedModel model;
  switch (spec.technique) {
    case Technique::LR: model = fit_lr(x, y, spec.linear); break;
    case Technique::KNN: model = fit_knn(x, y, spec.knn); break;
    case Technique::DTR: model = fit_dtr(x, y, spec.tree); break;
    case Technique::RFR: model = fit_rfr(x, y, spec.tree, spec.forest, spec.seed); break;
    case Technique::SVR: model = fit_svr(x, y, spec.svr); break;
  }
  model.spec = spec;
  model.schema_fingerprint = schema_fingerprint;
  return model;
}

namespace {

struct RowPredictor {
  std::span<const double> z;

  double operator()(const LinearFit& f) const {
    double s = f.intercept;
    for (std::size_t c = 0; c < z.size(); ++c) s += f.weights[c] * z[c];
    return s;
  }
  double operator()(const KnnFit& f) const {
    const auto idx = nearest_neighbours(f.train_x, z, f.k);
    double s = 0;
    for (std::size_t i : idx) s += f.train_y[i];
    return s / static_cast<double>(idx.size());
  }
  double operator()(const Tree& t) const { return t.predict(z); }
  double operator()(const ForestFit& f) const {
    double s = 0;
    for (const auto& t : f.trees) s += t.predict(z);
    return s / static_cast<double>(f.trees.size());
  }
  double operator()(const SvrFit& f) const {
    double s = f.bias;
    if (f.kernel == Kernel::Linear) {
      for (std::size_t c = 0; c < z.size(); ++c) s += f.weights[c] * z[c];
      return s;
    }
    for (std::size_t r = 0; r < f.support_vectors.rows(); ++r) {
      const auto sv = f.support_vectors.row(r);
      double d = 0;
      for (std::size_t c = 0; c < z.size(); ++c) {
        const double t = sv[c] - z[c];
        d += t * t;
      }
      s += f.coefficients[r] * std::exp(-f.gamma * d);
    }
    return s;
  }
};

}  // namespace

std::vector<double> predict(const TrainedModel& model, const Matrix& x) {
  if (x.cols() != model.n_features) {
    throw Error(ErrorKind::SchemaMismatch, "model expects " + std::to_string(model.n_features) +
                                               " features, got " + std::to_string(x.cols()));
  }
  std::vector<double> out;
  out.reserve(x.rows());
  std::vector<double> buffer(x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::span<const double> z = x.row(r);
    if (model.scaler) {
      standardize_row(*model.scaler, z, buffer);
      z = buffer;
    }
    out.push_back(std::visit(RowPredictor{z}, model.fit));
  }
  return out;
}

std::vector<double> predict(const TrainedModel& model, const Matrix& x,
                            std::uint64_t schema_fingerprint) {
  if (schema_fingerprint != model.schema_fingerprint) {
    throw Error(ErrorKind::SchemaMismatch, "feature schema differs from the one the model was trained on");
  }
  return predict(model, x);
}

}  // namespace scorecast
