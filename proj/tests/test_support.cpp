#include "test_support.hpp"

namespace testing_support {

double jacobi_spectral(const matnorm::Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<std::vector<double>> col(n, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j][i] = a(i, j);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        double alpha = 0, beta = 0, gamma = 0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += col[j][i] * col[j][i];
          beta += col[k][i] * col[k][i];
          gamma += col[j][i] * col[k][i];
        }
        if (gamma == 0.0) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double x = col[j][i];
          const double y = col[k][i];
          col[j][i] = c * x - s * y;
          col[k][i] = s * x + c * y;
        }
      }
    }
    if (off < 1e-15) break;
  }
  double best = 0.0;
  for (const auto& c : col) best = std::max(best, norm(c, 2.0));
  return best;
}

namespace {

double sign_max(const matnorm::Matrix& a, double q) {
  const std::size_t n = a.cols();
  double best = 0.0;
  std::vector<double> t(n), y(a.rows());
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    for (std::size_t j = 0; j < n; ++j) t[j] = (mask >> j) & 1 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * t[j];
      y[i] = acc;
    }
    best = std::max(best, norm(y, q));
  }
  return best;
}

}  // namespace

double corner_opnorm(const matnorm::Matrix& a, double p, double q) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (p == 1.0) {
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> c(m);
      for (std::size_t i = 0; i < m; ++i) c[i] = a(i, j);
      best = std::max(best, norm(c, q));
    }
    return best;
  }
  if (std::isinf(q)) {
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = a(i, j);
      best = std::max(best, norm(r, conj(p)));
    }
    return best;
  }
  if (p == 2.0 && q == 2.0) return jacobi_spectral(a);
  if (std::isinf(p)) return sign_max(a, q);
  if (q == 1.0) return sign_max(a.transpose(), conj(p));
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace testing_support
