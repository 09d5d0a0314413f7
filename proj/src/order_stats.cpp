#include "matnorm/order_stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace matnorm {

namespace {

void check_args(std::size_t m, std::size_t k, double r) {
  if (k < 1 || k > m) throw std::domain_error("order statistics: need 1 <= k <= m");
  if (!(r >= 1.0 && r <= 2.0)) {
    std::ostringstream msg;
    msg << "shape r must lie in [1, 2], got " << r;
    throw std::domain_error(msg.str());
  }
}

void check_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw std::domain_error("order statistics: q must be finite and >= 1");
}

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Kronrod estimate and |Kronrod - Gauss| on [a, b].
std::pair<double, double> gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kKronrod[7] * fc;
  double gauss = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kNodes[i];
    const double s = f(c - x) + f(c + x);
    kron += kKronrod[i] * s;
    if (i % 2 == 1) gauss += kGauss[i / 2] * s;
  }
  return {kron * h, std::abs(kron - gauss) * h};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
  const auto [value, err] = gk15(f, a, b);
  if (err <= tol || depth >= 40) return value;
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol, depth + 1) + adapt(f, c, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  const auto [rough, err] = gk15(f, a, b);
  (void)err;
  const double tol = std::max(rel_tol * std::abs(rough), 1e-300);
  return adapt(f, a, b, tol, 0);
}

double order_stat_qmoment_bound(std::size_t m, std::size_t k, double q, double r) {
  check_args(m, k, r);
  check_q(q);
  const double kk = static_cast<double>(k);
  return std::pow(kk, 1.0 / q) * std::pow(std::max(log_plus(static_cast<double>(m) / kk), q), 1.0 / r);
}

double weibull_truncated_moment(double q, double r, double t) {
  check_q(q);
  if (!(t >= 0.0)) throw std::domain_error("weibull_truncated_moment: t must be >= 0");
  // With u = |X|^r the quantity is the upper incomplete integral of u^{q/r} e^{-u}.
  const double a = q / r;
  const double u0 = std::pow(t, r / q);
  const double upper = std::max(u0, 2.0 * a) + 80.0;
  auto density = [a](double u) { return u <= 0.0 ? 0.0 : std::exp(a * std::log(u) - u); };
  // Split at the mode so the peak never sits inside a single coarse panel.
  if (u0 < a) return integrate(density, u0, a) + integrate(density, a, upper);
  return integrate(density, u0, upper);
}

double order_stat_threshold(std::size_t m, std::size_t k, double q, double r) {
  check_args(m, k, r);
  check_q(q);
  const double ratio = static_cast<double>(k) / static_cast<double>(m);
  auto g = [&](double t) { return weibull_truncated_moment(q, r, t) - t * ratio; };
  double lo = 0.0;
  double hi = std::pow(2.0 * q + std::log(1.0 / ratio), q / r);
  while (g(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

OrderStatForms order_stat_lq_forms(std::size_t m, std::size_t k, const Exponent& q, double r) {
  check_args(m, k, r);
  const double M = static_cast<double>(m);
  const double K = static_cast<double>(k);
  const double log_k = log_plus(K);
  const double log_mk = log_plus(M / K);
  OrderStatForms out{};
  if (q.is_infinite()) {
    out.compact = std::pow(log_plus(M), 1.0 / r);
    out.branched = out.compact;
    out.branch = "q>=Log k";
    return out;
  }
  const double qv = q.value();
  out.compact = std::pow(K, 1.0 / qv) * std::pow(std::max(log_mk, std::min(qv, log_k)), 1.0 / r);
  if (qv >= log_k) {
    out.branch = "q>=Log k";
    out.branched = std::pow(log_plus(M), 1.0 / r);
  } else {
    out.branch = "q<Log k";
    out.branched = std::pow(K, 1.0 / qv) * std::pow(std::max(log_mk, qv), 1.0 / r);
  }
  if (out.compact > 4.0 * out.branched || out.branched > 4.0 * out.compact) {
    throw std::logic_error("order_stat_lq_forms: compact and branch forms differ by more than a factor 4");
  }
  return out;
}

double order_stat_lq_expect_bound(std::size_t m, std::size_t k, const Exponent& q, double r) {
  return order_stat_lq_forms(m, k, q, r).compact;
}

}  // namespace matnorm
