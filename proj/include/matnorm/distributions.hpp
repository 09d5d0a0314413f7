#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "matnorm/matrix.hpp"
#include "matnorm/rng.hpp"

namespace matnorm {

enum class DistKind { WeibullSym, Gaussian, RademacherScaled, PsiRExample, LogConcaveUncProduct };

/// Isotropic unconditional log-concave product laws.
enum class LogConcaveKind {
  UniformSym,     // uniform on [-sqrt 3, sqrt 3]
  ExpNormalized,  // symmetric exponential divided by sqrt 2
};

/// Law of a single entry. Every law here is symmetric about 0, so product
/// samples are unconditional.
class DistributionSpec {
 public:
  /// Symmetric Weibull: P(|X| >= t) = exp(-t^r), r in [1, 2].
  static DistributionSpec weibull(double r);
  static DistributionSpec gaussian(double std_dev = 1.0);
  static DistributionSpec rademacher(double scale = 1.0);
  /// sigma * Weibull(r), the extremal member of the psi_r class with constant sigma.
  static DistributionSpec psi_r(double r, double sigma);
  static DistributionSpec log_concave(LogConcaveKind sub_kind);

  DistKind kind() const { return kind_; }
  LogConcaveKind log_concave_kind() const { return lc_kind_; }
  /// Weibull shape (WeibullSym, PsiRExample).
  double shape() const { return shape_; }
  /// std (Gaussian), scale (Rademacher), sigma (PsiRExample); 1 otherwise.
  double scale() const { return scale_; }

  double draw(CounterRng& rng) const;

  /// E|X|^rho for rho > 0.
  double abs_moment(double rho) const;

  /// P(|X| >= t).
  double tail_prob(double t) const;

  std::string name() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec() = default;
  DistKind kind_ = DistKind::Gaussian;
  LogConcaveKind lc_kind_ = LogConcaveKind::UniformSym;
  double shape_ = 2.0;
  double scale_ = 1.0;
};

/// sign * (-ln u)^{1/r}: inverse CDF of |X| composed with a sign.
double weibull_from_uniform(double r, double u, double sign);

/// ||X||_rho = Gamma(rho/r + 1)^{1/rho} for X symmetric Weibull(r).
double weibull_moment(double r, double rho);

/// Survival function of |X|. Throws std::invalid_argument for t < 0.
double tail_prob(const DistributionSpec& spec, double t);

struct SampleMatrix {
  std::size_t m = 0;
  std::size_t n = 0;
  Matrix entries;
  std::uint64_t seed = 0;
  DistributionSpec spec = DistributionSpec::gaussian();
};

/// Entries in row-major order from the stream (seed, 0).
SampleMatrix sample_matrix(const DistributionSpec& spec, std::size_t m, std::size_t n, std::uint64_t seed);

/// Overwrite every entry of `out` with a fresh draw from `rng`, row-major.
void fill_sample(const DistributionSpec& spec, CounterRng& rng, Matrix& out);
void fill_sample(const DistributionSpec& spec, CounterRng& rng, std::span<double> out);

/// {"kind": "...", "params": {...}}.
nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const nlohmann::json& j);

}  // namespace matnorm
