#include "matnorm/vector_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace matnorm {

Exponent::Exponent(double value) {
  if (std::isnan(value) || value < 1.0) {
    std::ostringstream msg;
    msg << "exponent must lie in [1, inf], got " << value;
    throw std::domain_error(msg.str());
  }
  if (std::isinf(value)) {
    infinite_ = true;
  } else {
    value_ = value;
  }
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  return e;
}

double Exponent::value() const {
  if (infinite_) throw std::domain_error("value() called on an infinite exponent");
  return value_;
}

double Exponent::min_with(double x) const { return infinite_ ? x : std::min(value_, x); }

double Exponent::as_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out << value_;
  return out.str();
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::partial_ordering operator<=>(const Exponent& a, const Exponent& b) {
  if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
  if (a.infinite_) return std::partial_ordering::greater;
  if (b.infinite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

Exponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF" || text == "∞") {
    return Exponent::infinity();
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse exponent '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("cannot parse exponent '" + text + "'");
  return Exponent(v);
}

Exponent holder_conjugate(const Exponent& rho) {
  if (rho.is_infinite()) return Exponent(1.0);
  const double v = rho.value();
  if (v == 1.0) return Exponent::infinity();
  return Exponent(v / (v - 1.0));
}

Exponent holder_conjugate(double rho) {
  if (!(rho >= 1.0)) throw std::domain_error("holder_conjugate: rho must be >= 1");
  return holder_conjugate(Exponent(rho));
}

double log_plus(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_plus: argument must be positive");
  return std::max(1.0, std::log(x));
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::BothLE2: return "p*,q<=2";
    case Regime::PstarBig: return "q<=2<=p*";
    case Regime::QBig: return "p*<=2<=q";
    case Regime::BothGE2: return "2<=p*,q";
  }
  return "unknown";
}

Regime classify(const Exponent& p_star, const Exponent& q) {
  const bool pstar_small = p_star <= Exponent(2.0);
  const bool q_small = q <= Exponent(2.0);
  if (pstar_small && q_small) return Regime::BothLE2;
  if (q_small) return Regime::PstarBig;
  if (pstar_small) return Regime::QBig;
  return Regime::BothGE2;
}

NormPair::NormPair(Exponent p_in, Exponent q_in)
    : NormPair(p_in, q_in, holder_conjugate(p_in), holder_conjugate(q_in)) {}

NormPair::NormPair(Exponent p_in, Exponent q_in, Exponent ps, Exponent qs)
    : p(p_in), q(q_in), p_star(ps), q_star(qs), regime(classify(ps, q_in)) {}

NormPair NormPair::transposed() const { return NormPair(q_star, p_star, q, p); }

double lp_norm(std::span<const double> v, const Exponent& rho) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (rho.is_infinite() || peak == 0.0) return peak;
  const double e = rho.value();
  if (e == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  double s = 0.0;
  if (e == 2.0) {
    for (double x : v) {
      const double y = x / peak;
      s += y * y;
    }
    return peak * std::sqrt(s);
  }
  for (double x : v) s += std::pow(std::abs(x) / peak, e);
  return peak * std::pow(s, 1.0 / e);
}

std::vector<double> rearrange(std::span<const double> v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return std::abs(x); });
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

WeightVector::WeightVector(std::vector<double> values)
    : values_(std::move(values)), sorted_abs_(rearrange(values_)) {
  for (double x : values_) {
    if (!std::isfinite(x)) throw std::invalid_argument("WeightVector: non-finite entry");
  }
}

WeightVector WeightVector::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return WeightVector(std::move(v));
}

std::span<const double> WeightVector::head(std::size_t count) const {
  return std::span<const double>(sorted_abs_).first(std::min(count, sorted_abs_.size()));
}

std::span<const double> WeightVector::tail(std::size_t count) const {
  return std::span<const double>(sorted_abs_).subspan(std::min(count, sorted_abs_.size()));
}

double lp_norm(const WeightVector& v, const Exponent& rho) { return lp_norm(v.values(), rho); }

namespace {

// Consecutive equal |c_i| collapsed to (value, count); zeros dropped.
std::vector<std::pair<double, double>> abs_runs(std::span<const double> c) {
  std::vector<std::pair<double, double>> runs;
  for (double x : c) {
    const double a = std::abs(x);
    if (a == 0.0) continue;
    if (!runs.empty() && runs.back().first == a) {
      runs.back().second += 1.0;
    } else {
      runs.emplace_back(a, 1.0);
    }
  }
  return runs;
}

// sum_i phi_rho(|c_i| / t) over the runs (phi(0) = 0).
double phi_sum(const std::vector<std::pair<double, double>>& runs, double rho, double t) {
  double s = 0.0;
  for (const auto& [a, count] : runs) s += count * std::exp(2.0 - 2.0 * std::pow(t / a, rho));
  return s;
}

}  // namespace

double orlicz_phi_norm(std::span<const double> c, double rho) {
  if (!(rho >= 1.0)) throw std::domain_error("orlicz_phi_norm: rho must be >= 1");
  const auto runs = abs_runs(c);
  double peak = 0.0;
  double nonzero = 0.0;
  for (const auto& [a, count] : runs) {
    peak = std::max(peak, a);
    nonzero += count;
  }
  if (nonzero == 0.0) return 0.0;
  if (nonzero == 1.0) return peak;

  // At t = peak the largest term alone is phi(1) = 1. At the upper end every
  // term is at most 1/nonzero.
  double lo = peak;
  double hi = peak * std::pow((2.0 + std::log(nonzero)) / 2.0, 1.0 / rho);
  for (int step = 0; step < 200; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi_sum(runs, rho, mid) <= 1.0) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return hi;
}

double orlicz_phi_norm(const WeightVector& c, double rho) { return orlicz_phi_norm(c.values(), rho); }

std::size_t head_count(const Exponent& rho, std::size_t k) {
  if (rho.is_infinite()) return k;
  const double bound = std::floor(std::exp(rho.value()));
  if (!(bound < static_cast<double>(k))) return k;
  return static_cast<std::size_t>(bound);
}

double multiplier_sup(std::span<const double> c, const Exponent& rho1, const Exponent& rho2) {
  if (rho1 <= rho2) return lp_norm(c, Exponent::infinity());
  if (rho1.is_infinite()) return lp_norm(c, rho2);
  const double a = rho1.value();
  const double b = rho2.value();
  return lp_norm(c, Exponent(a * b / (a - b)));
}

double gk_moment(std::span<const double> t, double rho, double r) {
  if (!(rho >= 1.0) || !std::isfinite(rho)) throw std::domain_error("gk_moment: rho must be finite and >= 1");
  if (!(r >= 1.0 && r <= 2.0)) throw std::domain_error("gk_moment: r must lie in [1, 2]");
  const Exponent r_star = holder_conjugate(r);
  return std::pow(rho, 1.0 / r) * lp_norm(t, r_star) + std::sqrt(rho) * lp_norm(t, Exponent(2.0));
}

SupBallMoment sup_ball_moment_forms(const Exponent& rho1, double rho2, double r, std::size_t k) {
  if (!(rho2 >= 1.0) || !std::isfinite(rho2)) throw std::domain_error("sup_ball_moment: rho2 must be finite and >= 1");
  if (!(r >= 1.0 && r <= 2.0)) throw std::domain_error("sup_ball_moment: r must lie in [1, 2]");
  if (k == 0) throw std::invalid_argument("sup_ball_moment: k must be >= 1");

  const double kd = static_cast<double>(k);
  const double inv_rho1 = rho1.reciprocal();
  const double inv_rho1_star = 1.0 - inv_rho1;
  const Exponent r_star = holder_conjugate(r);
  const double a = std::pow(rho2, 1.0 / r);
  const double b = std::sqrt(rho2);

  SupBallMoment out{};
  out.compact = a * std::pow(kd, std::max(inv_rho1_star - 1.0 / r, 0.0)) +
                b * std::pow(kd, std::max(inv_rho1_star - 0.5, 0.0));

  if (rho1 <= Exponent(2.0)) {
    out.branch = "rho1<=2";
    out.branched = a;
  } else if (rho1 <= r_star) {
    out.branch = "2<=rho1<=r*";
    out.branched = a + b * std::pow(kd, 0.5 - inv_rho1);
  } else {
    out.branch = "rho1>=r*";
    out.branched = a * std::pow(kd, r_star.reciprocal() - inv_rho1) + b * std::pow(kd, 0.5 - inv_rho1);
  }

  const double ratio = out.compact / out.branched;
  if (ratio > 3.0 || ratio < 1.0 / 3.0) {
    throw std::logic_error("sup_ball_moment: compact and branched forms disagree beyond factor 3");
  }
  return out;
}

double sup_ball_moment(const Exponent& rho1, double rho2, double r, std::size_t k) {
  return sup_ball_moment_forms(rho1, rho2, r, k).compact;
}

std::vector<double> duality_map(std::span<const double> y, const Exponent& rho) {
  std::vector<double> s(y.size(), 0.0);
  const double norm = lp_norm(y, rho);
  if (norm == 0.0) return s;
  if (rho.is_infinite()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (std::abs(y[i]) > std::abs(y[best])) best = i;
    }
    s[best] = y[best] >= 0.0 ? 1.0 : -1.0;
    return s;
  }
  const double e = rho.value();
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0) continue;
    const double sign = y[i] > 0.0 ? 1.0 : -1.0;
    s[i] = e == 1.0 ? sign : sign * std::pow(std::abs(y[i]) / norm, e - 1.0);
  }
  return s;
}

}  // namespace matnorm
