#include "matnorm/opnorm.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace matnorm {

std::string to_string(OpNormMethod method) {
  switch (method) {
    case OpNormMethod::ExactColumn: return "ExactColumn";
    case OpNormMethod::ExactRow: return "ExactRow";
    case OpNormMethod::ExactSpectral: return "ExactSpectral";
    case OpNormMethod::SignEnum: return "SignEnum";
    case OpNormMethod::PowerMethod: return "PowerMethod";
    case OpNormMethod::Dualized: return "Dualized";
  }
  return "unknown";
}

nlohmann::json to_json(const OpNormResult& r) {
  return {{"value", r.value},
          {"method", to_string(r.method)},
          {"witness_s", r.witness_s},
          {"witness_t", r.witness_t},
          {"starts_used", r.starts_used},
          {"converged", r.converged},
          {"certified", r.certified}};
}

namespace {

// s with ||s||_{rho*} <= 1 and <s, y> = ||y||_rho, written into `out`.
void dual_into(std::span<const double> y, const Exponent& rho, std::span<double> out) {
  const double norm = lp_norm(y, rho);
  std::fill(out.begin(), out.end(), 0.0);
  if (norm == 0.0) return;
  if (rho.is_infinite()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (std::abs(y[i]) > std::abs(y[best])) best = i;
    }
    out[best] = y[best] >= 0.0 ? 1.0 : -1.0;
    return;
  }
  const double e = rho.value();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) continue;
    const double sign = y[i] > 0.0 ? 1.0 : -1.0;
    if (e == 1.0) {
      out[i] = sign;
    } else if (e == 2.0) {
      out[i] = y[i] / norm;
    } else {
      out[i] = sign * std::pow(std::abs(y[i]) / norm, e - 1.0);
    }
  }
}

std::vector<double> unit_vector(std::size_t n, std::size_t i) {
  std::vector<double> v(n, 0.0);
  v[i] = 1.0;
  return v;
}

OpNormResult zero_result(const Matrix& a) {
  OpNormResult r;
  r.value = 0.0;
  r.method = OpNormMethod::ExactColumn;
  r.witness_s = unit_vector(a.rows(), 0);
  r.witness_t = unit_vector(a.cols(), 0);
  return r;
}

OpNormResult max_column(const Matrix& a, const NormPair& pair) {
  std::vector<double> col(a.rows());
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) col[i] = a(i, j);
    const double v = lp_norm(col, pair.q);
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  OpNormResult r;
  r.value = best;
  r.method = OpNormMethod::ExactColumn;
  r.witness_t = unit_vector(a.cols(), arg);
  r.witness_s.assign(a.rows(), 0.0);
  dual_into(a.column(arg), pair.q, r.witness_s);
  return r;
}

OpNormResult max_row(const Matrix& a, const NormPair& pair) {
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double v = lp_norm(a.row(i), pair.p_star);
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  OpNormResult r;
  r.value = best;
  r.method = OpNormMethod::ExactRow;
  r.witness_s = unit_vector(a.rows(), arg);
  r.witness_t.assign(a.cols(), 0.0);
  dual_into(a.row(arg), pair.p_star, r.witness_t);
  return r;
}

// Symmetric k x k product c = a * b.
void square_into(const std::vector<double>& a, std::vector<double>& c, std::size_t k) {
  std::fill(c.begin(), c.end(), 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      const double ail = a[i * k + l];
      if (ail == 0.0) continue;
      for (std::size_t j = 0; j < k; ++j) c[i * k + j] += ail * a[l * k + j];
    }
}

struct SignSearch {
  std::vector<double> signs;
  double value = -1.0;
  bool exhaustive = true;
};

// sum_i |y_i|^q, a monotone stand-in for ||y||_q when comparing candidates.
double power_sum(std::span<const double> y, double q) {
  double acc = 0.0;
  if (q == 1.0) {
    for (double x : y) acc += std::abs(x);
  } else if (q == 2.0) {
    for (double x : y) acc += x * x;
  } else if (q == 4.0) {
    for (double x : y) acc += (x * x) * (x * x);
  } else if (q == 1.5) {
    for (double x : y) acc += std::abs(x) * std::sqrt(std::abs(x));
  } else if (q == 3.0) {
    for (double x : y) acc += std::abs(x) * x * x;
  } else {
    for (double x : y) acc += std::pow(std::abs(x), q);
  }
  return acc;
}

// max over t in {-1, 1}^n of ||A t||_q for finite q.
SignSearch search_signs(const Matrix& a, const Exponent& q, const SolverBudget& budget) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double qv = q.value();
  const Matrix at = a.transpose();  // columns of A as contiguous rows
  auto column = [&](std::size_t j) { return at.data().data() + j * m; };
  SignSearch out;
  std::vector<double> t(n, 1.0);
  std::vector<double> y(m);

  if (n <= budget.enum_limit) {
    a.multiply(t, y);
    out.signs = t;
    double best = power_sum(y, qv);
    // Gray code over coordinates 1..n-1; t_0 = +1 by sign symmetry.
    const std::uint64_t classes = std::uint64_t{1} << (n - 1);
    for (std::uint64_t g = 1; g < classes; ++g) {
      const std::size_t j = 1 + static_cast<std::size_t>(std::countr_zero(g));
      const double* col = column(j);
      const double f = -2.0 * t[j];
      for (std::size_t i = 0; i < m; ++i) y[i] += f * col[i];
      t[j] = -t[j];
      const double v = power_sum(y, qv);
      if (v > best) {
        best = v;
        out.signs = t;
      }
    }
  } else {
    out.exhaustive = false;
    std::vector<double> s(m), z(n), trial(m), next(n);
    double best = -1.0;
    for (int restart = 0; restart < std::max(1, budget.sign_restarts); ++restart) {
      CounterRng rng(budget.seed ^ 0x51a5ULL, static_cast<std::uint64_t>(restart));
      for (double& x : t) x = rng.sign();
      // Alternating ascent t <- sign(A^T dual(A t)) to a fixed point.
      for (std::size_t iter = 0; iter < 4 * n + 8; ++iter) {
        a.multiply(t, y);
        for (std::size_t i = 0; i < m; ++i) {
          const double ay = std::abs(y[i]);
          s[i] = y[i] == 0.0 ? 0.0 : (y[i] > 0.0 ? 1.0 : -1.0) * (qv == 1.0 ? 1.0 : std::pow(ay, qv - 1.0));
        }
        a.multiply_transpose(s, z);
        bool changed = false;
        for (std::size_t j = 0; j < n; ++j) {
          next[j] = z[j] > 0.0 ? 1.0 : (z[j] < 0.0 ? -1.0 : t[j]);
          changed |= next[j] != t[j];
        }
        if (!changed) break;
        t.swap(next);
      }
      // Single bit flips until none improves.
      a.multiply(t, y);
      double value = power_sum(y, qv);
      for (std::size_t sweep = 0; sweep < 4 * n; ++sweep) {
        bool improved = false;
        for (std::size_t j = 0; j < n; ++j) {
          const double* col = column(j);
          const double f = -2.0 * t[j];
          for (std::size_t i = 0; i < m; ++i) trial[i] = y[i] + f * col[i];
          const double v = power_sum(trial, qv);
          if (v > value * (1.0 + 1e-13)) {
            y.swap(trial);
            t[j] = -t[j];
            value = v;
            improved = true;
          }
        }
        if (!improved) break;
      }
      if (value > best) {
        best = value;
        out.signs = t;
      }
    }
  }
  // Recompute from the witness to shed accumulated rounding.
  a.multiply(out.signs, y);
  out.value = lp_norm(y, q);
  return out;
}

OpNormResult sign_enum(const Matrix& a, const NormPair& pair, const SolverBudget& budget) {
  const SignSearch found = search_signs(a, pair.q, budget);
  OpNormResult r;
  r.value = found.value;
  r.method = OpNormMethod::SignEnum;
  r.witness_t = found.signs;
  r.witness_s.assign(a.rows(), 0.0);
  dual_into(a * r.witness_t, pair.q, r.witness_s);
  r.certified = found.exhaustive;
  r.starts_used = found.exhaustive ? 1 : budget.sign_restarts;
  return r;
}

OpNormResult dual_sign_enum(const Matrix& a, const NormPair& pair, const SolverBudget& budget) {
  const Matrix at = a.transpose();
  const SignSearch found = search_signs(at, pair.p_star, budget);
  OpNormResult r;
  r.value = found.value;
  r.method = OpNormMethod::Dualized;
  r.witness_s = found.signs;
  r.witness_t.assign(a.cols(), 0.0);
  dual_into(at * r.witness_s, pair.p_star, r.witness_t);
  r.certified = found.exhaustive;
  r.starts_used = found.exhaustive ? 1 : budget.sign_restarts;
  return r;
}

struct PowerRun {
  double value = -1.0;
  std::vector<double> t;
  std::vector<double> s;
  bool converged = false;
};

bool lexicographically_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void normalize_p(std::vector<double>& t, const Exponent& p) {
  const double norm = lp_norm(t, p);
  if (norm > 0.0)
    for (double& x : t) x /= norm;
}

// Multistart alternating maximization of s^T A t over B_{q*} x B_p.
PowerRun power_method(const Matrix& a, const NormPair& pair, const SolverBudget& budget, std::uint64_t salt) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<double> t(n), y(m), s(m), z(n);
  PowerRun best;
  const int starts = std::max(1, budget.max_starts);
  const std::size_t coordinate_starts = std::min<std::size_t>(n, static_cast<std::size_t>(starts) / 2);

  for (int start = 0; start < starts; ++start) {
    CounterRng rng(hash_combine(budget.seed, salt), static_cast<std::uint64_t>(start));
    const auto idx = static_cast<std::size_t>(start);
    if (idx == 0) {
      std::fill(t.begin(), t.end(), 1.0);
    } else if (idx <= coordinate_starts) {
      std::fill(t.begin(), t.end(), 0.0);
      t[idx - 1] = 1.0;
    } else {
      for (double& x : t) x = rng.normal();
    }
    normalize_p(t, pair.p);

    double value = -1.0;
    bool converged = false;
    for (int iter = 0; iter < budget.max_iters; ++iter) {
      a.multiply(t, y);
      const double v = lp_norm(y, pair.q);
      if (v == 0.0) {
        for (double& x : t) x = rng.normal();
        normalize_p(t, pair.p);
        continue;
      }
      if (iter > 0 && v - value <= budget.tol * v) {
        value = std::max(value, v);
        converged = true;
        break;
      }
      value = v;
      dual_into(y, pair.q, s);
      a.multiply_transpose(s, z);
      dual_into(z, pair.p_star, t);
    }
    a.multiply(t, y);
    const double final_value = lp_norm(y, pair.q);
    if (final_value > best.value ||
        (final_value == best.value && lexicographically_less(t, best.t))) {
      best.value = final_value;
      best.t = t;
      best.s.assign(m, 0.0);
      dual_into(y, pair.q, best.s);
      best.converged = converged;
    }
  }
  return best;
}

OpNormResult general_case(const Matrix& a, const NormPair& pair, const SolverBudget& budget) {
  const PowerRun primal = power_method(a, pair, budget, 0x9a1ULL);
  const PowerRun dual = power_method(a.transpose(), pair.transposed(), budget, 0xd0a1ULL);
  OpNormResult r;
  r.method = OpNormMethod::PowerMethod;
  r.starts_used = 2 * std::max(1, budget.max_starts);
  r.certified = false;
  if (dual.value > primal.value) {
    // Dual witnesses: t' in B_{q*}^m, s' in B_p^n with s'^T A^T t' = t'^T A s'.
    r.value = dual.value;
    r.witness_s = dual.t;
    r.witness_t = dual.s;
    r.converged = dual.converged;
  } else {
    r.value = primal.value;
    r.witness_s = primal.s;
    r.witness_t = primal.t;
    r.converged = primal.converged;
  }
  return r;
}

}  // namespace

SpectralResult spectral_norm(const Matrix& a, double rel_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const bool right_side = m >= n;  // Gram A^T A (n x n) when tall
  const std::size_t k = right_side ? n : m;

  std::vector<double> gram(k * k, 0.0);
  if (right_side) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = a.row(i);
      for (std::size_t u = 0; u < n; ++u) {
        const double ru = r[u];
        if (ru == 0.0) continue;
        for (std::size_t v = 0; v < n; ++v) gram[u * n + v] += ru * r[v];
      }
    }
  } else {
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = u; v < m; ++v) {
        double acc = 0.0;
        const auto ru = a.row(u);
        const auto rv = a.row(v);
        for (std::size_t j = 0; j < n; ++j) acc += ru[j] * rv[j];
        gram[u * m + v] = acc;
        gram[v * m + u] = acc;
      }
  }

  SpectralResult out{0.0, std::vector<double>(m, 0.0), std::vector<double>(n, 0.0)};
  double trace = 0.0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < k; ++i) {
    trace += gram[i * k + i];
    if (gram[i * k + i] > gram[start * k + start]) start = i;
  }
  if (trace == 0.0) {
    out.left[0] = 1.0;
    out.right[0] = 1.0;
    return out;
  }

  // Iterate with G^16 (by repeated squaring) on small Grams.
  std::vector<double> power(gram);
  for (double& x : power) x /= trace;
  if (k > 1 && k <= 128) {
    std::vector<double> tmp(k * k);
    for (int sq = 0; sq < 4; ++sq) {
      square_into(power, tmp, k);
      double peak = 0.0;
      for (double x : tmp) peak = std::max(peak, std::abs(x));
      if (peak == 0.0) break;
      for (double& x : tmp) x /= peak;
      power.swap(tmp);
    }
  }

  auto rayleigh = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < k; ++j) row += gram[i * k + j] * v[j];
      acc += v[i] * row;
    }
    return acc;
  };

  std::vector<double> v(k), w(k);
  for (std::size_t i = 0; i < k; ++i) v[i] = gram[i * k + start];
  normalize_p(v, Exponent(2.0));
  double lambda = rayleigh(v);
  const double stop = std::min(rel_tol * rel_tol, 1e-14);
  for (int iter = 0; iter < 20000; ++iter) {
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += power[i * k + j] * v[j];
      w[i] = acc;
    }
    const double norm = lp_norm(w, Exponent(2.0));
    if (norm == 0.0) break;
    for (double& x : w) x /= norm;
    const double next = rayleigh(w);
    v.swap(w);
    const double prev = lambda;
    lambda = std::max(lambda, next);
    if (next - prev <= stop * next) break;
  }
  out.value = std::sqrt(std::max(lambda, 0.0));

  if (right_side) {
    out.right = v;
    a.multiply(out.right, out.left);
    normalize_p(out.left, Exponent(2.0));
  } else {
    out.left = v;
    a.multiply_transpose(out.left, out.right);
    normalize_p(out.right, Exponent(2.0));
  }
  return out;
}

PowerStep power_method_step(const Matrix& a, std::span<const double> t, const NormPair& pair, CounterRng* rng) {
  if (pair.p.is_infinite() || pair.q.is_infinite() || pair.p == Exponent(1.0) || pair.q == Exponent(1.0)) {
    throw std::domain_error("power_method_step requires 1 < p, q < inf");
  }
  PowerStep out;
  std::vector<double> y = a * t;
  const double v = lp_norm(y, pair.q);
  out.value = v;
  out.t.assign(a.cols(), 0.0);
  if (v == 0.0) {
    CounterRng local(0x7e57ULL, 0);
    CounterRng& g = rng ? *rng : local;
    for (double& x : out.t) x = g.normal();
    normalize_p(out.t, pair.p);
    out.restarted = true;
    return out;
  }
  std::vector<double> s(a.rows());
  dual_into(y, pair.q, s);
  std::vector<double> z(a.cols());
  a.multiply_transpose(s, z);
  dual_into(z, pair.p_star, out.t);
  return out;
}

OpNormResult opnorm(const Matrix& a, const NormPair& pair, const SolverBudget& budget) {
  if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("opnorm: empty matrix");
  if (!a.all_finite()) throw std::invalid_argument("opnorm: matrix has non-finite entries");
  if (a.is_zero()) return zero_result(a);

  if (pair.p == Exponent(1.0)) return max_column(a, pair);
  if (pair.q.is_infinite()) return max_row(a, pair);
  if (pair.p == Exponent(2.0) && pair.q == Exponent(2.0)) {
    SpectralResult sv = spectral_norm(a);
    OpNormResult r;
    r.value = sv.value;
    r.method = OpNormMethod::ExactSpectral;
    r.witness_s = std::move(sv.left);
    r.witness_t = std::move(sv.right);
    r.starts_used = 1;
    return r;
  }
  if (pair.p.is_infinite()) return sign_enum(a, pair, budget);
  if (pair.q == Exponent(1.0)) return dual_sign_enum(a, pair, budget);
  return general_case(a, pair, budget);
}

double opnorm_value(const Matrix& a, const NormPair& pair, const SolverBudget& budget) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m == 1 && n == 1) {
    if (!std::isfinite(a(0, 0))) throw std::invalid_argument("opnorm: matrix has non-finite entries");
    return std::abs(a(0, 0));
  }
  if (pair.q.is_infinite()) {
    if (!a.all_finite()) throw std::invalid_argument("opnorm: matrix has non-finite entries");
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) best = std::max(best, lp_norm(a.row(i), pair.p_star));
    return best;
  }
  if (pair.p == Exponent(1.0) && m <= 16) {
    if (!a.all_finite()) throw std::invalid_argument("opnorm: matrix has non-finite entries");
    std::array<double, 16> col{};
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) col[i] = a(i, j);
      best = std::max(best, lp_norm(std::span<const double>(col.data(), m), pair.q));
    }
    return best;
  }
  if (pair.p == Exponent(2.0) && pair.q == Exponent(2.0) && std::min(m, n) <= 2) {
    if (!a.all_finite()) throw std::invalid_argument("opnorm: matrix has non-finite entries");
    if (std::min(m, n) == 1) return lp_norm(a.data(), Exponent(2.0));
    // Largest eigenvalue of the 2 x 2 Gram matrix in closed form.
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    if (n == 2) {
      for (std::size_t i = 0; i < m; ++i) {
        g00 += a(i, 0) * a(i, 0);
        g01 += a(i, 0) * a(i, 1);
        g11 += a(i, 1) * a(i, 1);
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        g00 += a(0, j) * a(0, j);
        g01 += a(0, j) * a(1, j);
        g11 += a(1, j) * a(1, j);
      }
    }
    const double half_gap = 0.5 * (g00 - g11);
    const double lambda = 0.5 * (g00 + g11) + std::hypot(half_gap, g01);
    return std::sqrt(std::max(lambda, 0.0));
  }
  return opnorm(a, pair, budget).value;
}

FinitePointSet::FinitePointSet(std::size_t dim, std::vector<std::vector<double>> points)
    : dim_(dim), points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("FinitePointSet: set must be nonempty");
  if (dim_ == 0) throw std::invalid_argument("FinitePointSet: dimension must be >= 1");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw std::invalid_argument("FinitePointSet: points must share the dimension");
  }
}

FinitePointSet FinitePointSet::scaled(double c) const {
  auto pts = points_;
  for (auto& p : pts)
    for (double& x : p) x *= c;
  return FinitePointSet(dim_, std::move(pts));
}

double FinitePointSet::sup_norm(const Exponent& rho) const {
  double best = 0.0;
  for (const auto& p : points_) best = std::max(best, lp_norm(p, rho));
  return best;
}

nlohmann::json to_json(const FinitePointSet& set) { return {{"dim", set.dim()}, {"points", set.points()}}; }

FinitePointSet point_set_from_json(const nlohmann::json& j) {
  if (j.is_array()) {
    auto pts = j.get<std::vector<std::vector<double>>>();
    if (pts.empty()) throw std::invalid_argument("point set: empty");
    const std::size_t dim = pts.front().size();
    return FinitePointSet(dim, std::move(pts));
  }
  if (!j.is_object() || !j.contains("points")) throw std::invalid_argument("point set: expected {\"dim\":..,\"points\":[..]}");
  auto pts = j.at("points").get<std::vector<std::vector<double>>>();
  const std::size_t dim = j.contains("dim") ? j.at("dim").get<std::size_t>() : (pts.empty() ? 0 : pts.front().size());
  return FinitePointSet(dim, std::move(pts));
}

double bilinear_sup(const Matrix& a, const FinitePointSet& s_set, const FinitePointSet& t_set) {
  if (s_set.dim() != a.rows() || t_set.dim() != a.cols()) {
    throw std::invalid_argument("bilinear_sup: set dimensions do not match the matrix");
  }
  std::vector<double> z(a.cols());
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& s : s_set.points()) {
    a.multiply_transpose(s, z);
    for (const auto& t : t_set.points()) {
      double acc = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j) acc += z[j] * t[j];
      best = std::max(best, acc);
    }
  }
  return best;
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

namespace {

// Next k-subset of {0..n-1} in lexicographic order; false after the last.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (idx[pos] < n - k + pos) {
      ++idx[pos];
      for (std::size_t j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double restricted_value(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols,
                        const NormPair& pair, const SolverBudget& budget, Matrix& buffer) {
  buffer.assign_submatrix(a, rows, cols);
  if (buffer.size() == 1) return std::abs(buffer(0, 0));
  return opnorm_value(buffer, pair, budget);
}

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, CounterRng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

SubmatrixResult submatrix_sup(const Matrix& a, std::size_t k, std::size_t l, const NormPair& pair,
                              SubmatrixMode mode, const SubmatrixOptions& options) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (k < 1 || k > m || l < 1 || l > n) throw std::invalid_argument("submatrix_sup: need 1 <= k <= m and 1 <= l <= n");
  if (!a.all_finite()) throw std::invalid_argument("submatrix_sup: matrix has non-finite entries");

  Matrix buffer;
  SubmatrixResult best;
  best.value = -1.0;

  if (mode == SubmatrixMode::Exact) {
    const double count = binomial(m, k) * binomial(n, l);
    if (count > options.subset_budget) {
      throw BudgetError("submatrix_sup: C(m,k)*C(n,l) exceeds the exact budget; use LocalSearch");
    }
    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<std::size_t> cols(l);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        const double v = restricted_value(a, rows, cols, pair, options.solver, buffer);
        if (v > best.value) {
          best.value = v;
          best.rows = rows;
          best.cols = cols;
        }
      } while (next_combination(cols, n));
    } while (next_combination(rows, m));
    return best;
  }

  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    CounterRng rng(options.seed, static_cast<std::uint64_t>(restart));
    std::vector<std::size_t> rows = random_subset(m, k, rng);
    std::vector<std::size_t> cols = random_subset(n, l, rng);
    double value = restricted_value(a, rows, cols, pair, options.solver, buffer);
    for (;;) {
      double best_gain = 0.0;
      int best_axis = -1;
      std::size_t best_pos = 0;
      std::size_t best_new = 0;
      for (int axis = 0; axis < 2; ++axis) {
        auto& chosen = axis == 0 ? rows : cols;
        const std::size_t limit = axis == 0 ? m : n;
        std::vector<char> used(limit, 0);
        for (std::size_t x : chosen) used[x] = 1;
        for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
          const std::size_t old = chosen[pos];
          for (std::size_t cand = 0; cand < limit; ++cand) {
            if (used[cand]) continue;
            chosen[pos] = cand;
            const double v = restricted_value(a, rows, cols, pair, options.solver, buffer);
            if (v - value > best_gain) {
              best_gain = v - value;
              best_axis = axis;
              best_pos = pos;
              best_new = cand;
            }
          }
          chosen[pos] = old;
        }
      }
      if (best_axis < 0 || best_gain <= 1e-12 * value) break;
      (best_axis == 0 ? rows : cols)[best_pos] = best_new;
      value += best_gain;
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    value = restricted_value(a, rows, cols, pair, options.solver, buffer);
    if (value > best.value) {
      best.value = value;
      best.rows = rows;
      best.cols = cols;
    }
  }
  return best;
}

}  // namespace matnorm
