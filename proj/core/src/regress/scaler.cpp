#include <cmath>

#include "scorecast/error.hpp"
#include "scorecast/regress.hpp"

namespace scorecast {

Scaler standardize_fit(const Matrix& x) {
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "cannot standardize an empty matrix");
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  Scaler s;
  s.mean.assign(p, 0.0);
  s.scale.assign(p, 0.0);
  for (std::size_t c = 0; c < p; ++c) {
    double sum = 0;
    for (std::size_t r = 0; r < n; ++r) sum += x(r, c);
    const double mean = sum / static_cast<double>(n);
    double ss = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = x(r, c) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n));
    s.mean[c] = mean;
    // Relative cut so that columns equal up to rounding count as constant.
    s.scale[c] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 0.0;
  }
  return s;
}

void standardize_row(const Scaler& scaler, std::span<const double> in, std::span<double> out) {
  for (std::size_t c = 0; c < in.size(); ++c) {
    out[c] = scaler.scale[c] > 0 ? (in[c] - scaler.mean[c]) / scaler.scale[c] : 0.0;
  }
}

Matrix standardize_apply(const Scaler& scaler, const Matrix& x) {
  if (x.cols() != scaler.mean.size()) {
    throw Error(ErrorKind::DimensionMismatch, "scaler fitted on " +
                                                  std::to_string(scaler.mean.size()) +
                                                  " columns, got " + std::to_string(x.cols()));
  }
  Matrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) standardize_row(scaler, x.row(r), out.row(r));
  return out;
}

}  // namespace scorecast
