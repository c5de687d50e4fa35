#include <cmath>
#include <sstream>

#include "scorecast/error.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

namespace {

/// In-place Cholesky of a symmetric matrix (lower triangle). Fails on pivots at
/// or below `min_pivot`.
bool cholesky(Matrix& a, double min_pivot) {
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > min_pivot)) return false;
    const double l = std::sqrt(d);
    a(j, j) = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / l;
    }
  }
  return true;
}

std::vector<double> cholesky_solve(const Matrix& l, std::vector<double> b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
  return b;
}

}  // namespace

TrainedModel fit_lr(const Matrix& x, std::span<const double> y, const LinearParams& params) {
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(x.rows()) + " rows vs " +
                                                  std::to_string(y.size()) + " targets");
  }
  if (x.empty()) throw Error(ErrorKind::TooFewRows, "linear regression needs at least one row");

  TrainedModel model;
  model.technique = Technique::LR;
  model.spec.technique = Technique::LR;
  model.spec.linear = params;
  model.n_features = x.cols();

  const Matrix* design = &x;
  Matrix scaled;
  if (params.standardize) {
    model.scaler = standardize_fit(x);
    scaled = standardize_apply(*model.scaler, x);
    design = &scaled;
  }

  // Normal equations on [X | 1]; the intercept is the last unknown.
  const std::size_t n = design->rows();
  const std::size_t p = design->cols();
  const std::size_t m = p + 1;
  Matrix gram(m, m);
  std::vector<double> rhs(m, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = design->row(r);
    for (std::size_t i = 0; i < m; ++i) {
      const double xi = i < p ? row[i] : 1.0;
      rhs[i] += xi * y[r];
      for (std::size_t j = 0; j <= i; ++j) gram(i, j) += xi * (j < p ? row[j] : 1.0);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) gram(i, j) = gram(j, i);
  }

  double max_diag = 0;
  for (std::size_t i = 0; i < m; ++i) max_diag = std::max(max_diag, gram(i, i));

  Matrix factor = gram;
  double lambda = 0.0;
  bool ok = cholesky(factor, 1e-12 * std::max(1.0, max_diag));
  if (!ok) {
    lambda = params.ridge_fallback;
    for (int attempt = 0; !ok; ++attempt) {
      if (attempt == 40) throw Error(ErrorKind::NonFinite, "normal equations could not be factored");
      factor = gram;
      for (std::size_t i = 0; i < m; ++i) factor(i, i) += lambda;
      ok = cholesky(factor, 0.0);
      if (!ok) lambda *= 10;
    }
  }
  Matrix system = gram;
  for (std::size_t i = 0; i < m; ++i) system(i, i) += lambda;

  std::vector<double> beta = cholesky_solve(factor, rhs);
  // One step of iterative refinement against the unfactored system.
  std::vector<double> residual(rhs);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) residual[i] -= system(i, j) * beta[j];
  }
  const auto correction = cholesky_solve(factor, residual);
  for (std::size_t i = 0; i < m; ++i) beta[i] += correction[i];

  LinearFit fit;
  fit.weights.assign(beta.begin(), beta.begin() + static_cast<std::ptrdiff_t>(p));
  fit.intercept = beta[p];
  fit.ridge_fallback = lambda > 0;
  model.metadata["ridge_fallback"] = fit.ridge_fallback ? "true" : "false";
  if (fit.ridge_fallback) {
    std::ostringstream lam;
    lam << lambda;
    model.metadata["ridge_lambda"] = lam.str();
  }
  model.fit = std::move(fit);
  return model;
}

}  // namespace scorecast
