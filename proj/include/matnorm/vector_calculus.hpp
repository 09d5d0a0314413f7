#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace matnorm {

/// An exponent in [1, inf]. Infinity is its own state and every formula that
/// is singular there has to branch on is_infinite() explicitly.
class Exponent {
 public:
  /// Accepts any value >= 1; IEEE +inf maps to the infinite state.
  Exponent(double value);  // NOLINT(google-explicit-constructor)

  static Exponent infinity();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Throws std::domain_error on the infinite state.
  double value() const;

  /// 1/rho, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

  /// min(rho, x) for a finite x.
  double min_with(double x) const;

  /// Value as a double, mapping the infinite state to IEEE +inf. Only for
  /// printing and serialization.
  double as_double() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b);
  friend std::partial_ordering operator<=>(const Exponent& a, const Exponent& b);

 private:
  Exponent() = default;
  bool infinite_ = false;
  double value_ = 1.0;
};

/// Parses "inf", "infinity", "∞" or a decimal number >= 1.
Exponent parse_exponent(const std::string& text);

/// rho* with 1/rho + 1/rho* = 1; 1* = inf, inf* = 1.
Exponent holder_conjugate(const Exponent& rho);

/// Conjugate of a raw double; rho < 1 raises std::domain_error.
Exponent holder_conjugate(double rho);

/// Log x = max(1, ln x).
double log_plus(double x);

enum class Regime {
  BothLE2,   // p* <= 2, q <= 2
  PstarBig,  // q <= 2 < p*
  QBig,      // p* <= 2 < q
  BothGE2,   // p* > 2, q > 2
};

std::string to_string(Regime regime);

/// Exponent pair (p, q) of an l_p^n -> l_q^m operator norm. The conjugates are
/// stored, not recomputed, so transposed() is exact.
struct NormPair {
  Exponent p;
  Exponent q;
  Exponent p_star;
  Exponent q_star;
  Regime regime;

  NormPair(Exponent p_in, Exponent q_in);

  /// The pair (q*, p*) of the transposed problem.
  NormPair transposed() const;

 private:
  NormPair(Exponent p_in, Exponent q_in, Exponent ps, Exponent qs);
};

Regime classify(const Exponent& p_star, const Exponent& q);

double lp_norm(std::span<const double> v, const Exponent& rho);

/// Weight sequence with its nonincreasing rearrangement cached at construction.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::span<const double> sorted_abs() const { return sorted_abs_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double max_abs() const { return sorted_abs_.empty() ? 0.0 : sorted_abs_.front(); }

  WeightVector scaled(double c) const;

  /// First `count` entries of the rearrangement (clamped to size()).
  std::span<const double> head(std::size_t count) const;
  /// Entries of the rearrangement after the first `count`.
  std::span<const double> tail(std::size_t count) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_abs_;
};

/// Nonincreasing rearrangement of |v|.
std::vector<double> rearrange(std::span<const double> v);

double lp_norm(const WeightVector& v, const Exponent& rho);

/// inf{t > 0 : sum_i phi(|c_i|/t) <= 1} with phi(x) = exp(2 - 2 x^-rho),
/// phi(0) = 0. The argument does not need to be sorted.
double orlicz_phi_norm(std::span<const double> c, double rho);
double orlicz_phi_norm(const WeightVector& c, double rho);

/// Number of indices i with i <= e^rho, capped at k. rho = inf keeps all.
std::size_t head_count(const Exponent& rho, std::size_t k);

/// sup over t in B_{rho1} of ||(c_i t_i)||_{rho2}.
double multiplier_sup(std::span<const double> c, const Exponent& rho1, const Exponent& rho2);

/// rho^{1/r} ||t||_{r*} + rho^{1/2} ||t||_2, the two-sided surrogate for the
/// rho-th moment of sum_i t_i X_i with X_i iid symmetric Weibull(r).
double gk_moment(std::span<const double> t, double rho, double r);

struct SupBallMoment {
  double compact;
  double branched;
  std::string branch;  // "rho1<=2", "2<=rho1<=r*", "rho1>=r*"
};

/// sup over t in B_{rho1}^k of the rho2-th moment of sum t_i X_i, in the
/// compact form and the three-case form. Throws std::logic_error when the two
/// disagree by more than a factor 3.
SupBallMoment sup_ball_moment_forms(const Exponent& rho1, double rho2, double r, std::size_t k);

/// Compact form of sup_ball_moment_forms.
double sup_ball_moment(const Exponent& rho1, double rho2, double r, std::size_t k);

/// Unit vector of the rho-dual: s with ||s||_{rho*} = 1 and <s, y> = ||y||_rho.
/// Returns the zero vector when y = 0.
std::vector<double> duality_map(std::span<const double> y, const Exponent& rho);

}  // namespace matnorm
