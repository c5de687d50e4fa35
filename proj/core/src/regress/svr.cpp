#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "scorecast/error.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return std::exp(-gamma * d);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_text(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// The dual is written over 2n variables beta = (alpha, alpha*) with signs
// s = (+1..., -1...), linear term p = (eps - y, eps + y) and Q_tu = s_t s_u K_tu,
// minimised subject to 0 <= beta <= C and sum s_t beta_t = 0. Pairs are chosen
// by maximal violation for the first index and second-order gain for the second.
SvrSolution solve_svr_dual(const Matrix& kernel, std::span<const double> y, const SvrParams& params) {
  const std::size_t n = y.size();
  const std::size_t m = 2 * n;
  const double c = params.c;
  constexpr double kTau = 1e-12;

  auto row_of = [n](std::size_t t) { return t < n ? t : t - n; };
  auto sign = [n](std::size_t t) { return t < n ? 1.0 : -1.0; };
  auto q = [&](std::size_t t, std::size_t u) {
    return sign(t) * sign(u) * kernel(row_of(t), row_of(u));
  };

  std::vector<double> beta(m, 0.0);
  std::vector<double> p(m);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = params.epsilon - y[i];
    p[i + n] = params.epsilon + y[i];
  }
  std::vector<double> grad(p);

  auto in_up = [&](std::size_t t) { return sign(t) > 0 ? beta[t] < c : beta[t] > 0; };
  auto in_low = [&](std::size_t t) { return sign(t) > 0 ? beta[t] > 0 : beta[t] < c; };
  auto objective = [&] {
    double f = 0;
    for (std::size_t t = 0; t < m; ++t) f += beta[t] * (grad[t] + p[t]);
    return 0.5 * f;
  };

  SvrSolution sol;
  const std::size_t check_every = std::max<std::size_t>(10, m);
  double last_checked = objective();
  std::size_t iter = 0;
  double gap = std::numeric_limits<double>::infinity();
  while (iter < params.max_iterations) {
    // First index: maximal -s_t G_t over the "up" set.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = m;
    for (std::size_t t = 0; t < m; ++t) {
      if (in_up(t) && -sign(t) * grad[t] >= gmax) {
        if (-sign(t) * grad[t] > gmax || i == m) i = t;
        gmax = -sign(t) * grad[t];
      }
    }
    // Second index and the stopping gap.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_gain = std::numeric_limits<double>::infinity();
    std::size_t j = m;
    for (std::size_t t = 0; t < m; ++t) {
      if (!in_low(t)) continue;
      gmax2 = std::max(gmax2, sign(t) * grad[t]);
      if (i == m) continue;
      const double b = gmax + sign(t) * grad[t];
      if (b > 0) {
        double a = q(i, i) + q(t, t) - 2.0 * sign(i) * sign(t) * q(i, t);
        if (a <= 0) a = kTau;
        const double gain = -(b * b) / a;
        if (gain < best_gain) {
          best_gain = gain;
          j = t;
        }
      }
    }
    gap = gmax + gmax2;
    if (i == m || j == m || gap < params.tolerance) {
      sol.converged = true;
      break;
    }

    ++iter;
    const double old_i = beta[i];
    const double old_j = beta[j];
    const double qii = q(i, i), qjj = q(j, j), qij = q(i, j);
    if (sign(i) != sign(j)) {
      double quad = qii + qjj + 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = beta[i] - beta[j];
      beta[i] += delta;
      beta[j] += delta;
      if (diff > 0) {
        if (beta[j] < 0) {
          beta[j] = 0;
          beta[i] = diff;
        }
      } else if (beta[i] < 0) {
        beta[i] = 0;
        beta[j] = -diff;
      }
      if (diff > 0) {
        if (beta[i] > c) {
          beta[i] = c;
          beta[j] = c - diff;
        }
      } else if (beta[j] > c) {
        beta[j] = c;
        beta[i] = c + diff;
      }
    } else {
      double quad = qii + qjj - 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = beta[i] + beta[j];
      beta[i] -= delta;
      beta[j] += delta;
      if (sum > c) {
        if (beta[i] > c) {
          beta[i] = c;
          beta[j] = sum - c;
        }
      } else if (beta[j] < 0) {
        beta[j] = 0;
        beta[i] = sum;
      }
      if (sum > c) {
        if (beta[j] > c) {
          beta[j] = c;
          beta[i] = sum - c;
        }
      } else if (beta[i] < 0) {
        beta[i] = 0;
        beta[j] = sum;
      }
    }
    const double di = beta[i] - old_i;
    const double dj = beta[j] - old_j;
    for (std::size_t t = 0; t < m; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;

    if (iter % check_every == 0) {
      const double now = objective();
      if (last_checked - now < params.tolerance) {
        sol.converged = true;
        break;
      }
      last_checked = now;
    }
  }

  // Bias from free variables, or the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < m; ++t) {
    const double yg = sign(t) * grad[t];
    if (beta[t] >= c) {
      if (sign(t) < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (beta[t] <= 0) {
      if (sign(t) > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2;

  sol.coefficients.resize(n);
  for (std::size_t r = 0; r < n; ++r) sol.coefficients[r] = beta[r] - beta[r + n];
  sol.bias = -rho;
  sol.dual_objective = objective();
  sol.kkt_gap = gap;
  sol.iterations = iter;
  return sol;
}

TrainedModel fit_svr(const Matrix& x, std::span<const double> y, const SvrParams& params) {
  if (x.rows() != y.size()) {
    throw Error(ErrorKind::DimensionMismatch, std::to_string(x.rows()) + " rows vs " +
                                                  std::to_string(y.size()) + " targets");
  }
  if (x.rows() < 2) throw Error(ErrorKind::TooFewRows, "SVR needs at least two rows");
  if (!(params.c > 0)) throw Error(ErrorKind::InvalidHyperparameter, "C must be > 0");
  if (!(params.epsilon >= 0)) throw Error(ErrorKind::InvalidHyperparameter, "epsilon must be >= 0");
  if (!(params.tolerance > 0)) throw Error(ErrorKind::InvalidHyperparameter, "tolerance must be > 0");

  TrainedModel model;
  model.technique = Technique::SVR;
  model.spec.technique = Technique::SVR;
  model.spec.svr = params;
  model.n_features = x.cols();
  model.scaler = standardize_fit(x);
  const Matrix z = standardize_apply(*model.scaler, x);
  const std::size_t n = z.rows();

  SvrFit fit;
  fit.kernel = params.kernel;
  fit.gamma = params.gamma > 0 ? params.gamma : 1.0 / static_cast<double>(std::max<std::size_t>(1, z.cols()));

  Matrix gram(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      const double k = params.kernel == Kernel::Linear ? dot(z.row(a), z.row(b))
                                                       : rbf(z.row(a), z.row(b), fit.gamma);
      gram(a, b) = k;
      gram(b, a) = k;
    }
  }
  const SvrSolution sol = solve_svr_dual(gram, y, params);
  fit.bias = sol.bias;
  if (params.kernel == Kernel::Linear) {
    fit.weights.assign(z.cols(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      if (sol.coefficients[r] == 0.0) continue;
      const auto row = z.row(r);
      for (std::size_t c = 0; c < z.cols(); ++c) fit.weights[c] += sol.coefficients[r] * row[c];
    }
  } else {
    std::vector<std::size_t> support;
    for (std::size_t r = 0; r < n; ++r) {
      if (sol.coefficients[r] != 0.0) support.push_back(r);
    }
    fit.support_vectors = Matrix(support.size(), z.cols());
    for (std::size_t s = 0; s < support.size(); ++s) {
      const auto src = z.row(support[s]);
      std::copy(src.begin(), src.end(), fit.support_vectors.row(s).begin());
      fit.coefficients.push_back(sol.coefficients[support[s]]);
    }
  }
  model.metadata["converged"] = sol.converged ? "true" : "false";
  model.metadata["iterations"] = std::to_string(sol.iterations);
  model.metadata["kkt_gap"] = to_text(sol.kkt_gap);
  model.metadata["dual_objective"] = to_text(sol.dual_objective);
  model.fit = std::move(fit);
  return model;
}

}  // namespace scorecast
