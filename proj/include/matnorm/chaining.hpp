#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "matnorm/distributions.hpp"
#include "matnorm/mc.hpp"
#include "matnorm/opnorm.hpp"

namespace matnorm {

/// l_2 distance, or l_{r*} distance for a Weibull shape r (r = 1 gives l_inf).
struct ChainMetric {
  enum class Kind { L2, LRstar };
  Kind kind = Kind::L2;
  double r = 2.0;

  static ChainMetric l2() { return {Kind::L2, 2.0}; }
  static ChainMetric lr_star(double r);

  Exponent exponent() const;
  std::string name() const;
};

/// Levels U_0, U_1, ... as indices into the ambient point set. |U_0| = 1,
/// |U_l| <= 2^{2^l}; the last level is the whole set.
struct AdmissibleSequence {
  std::vector<std::vector<std::size_t>> levels;
};

struct GammaResult {
  double value = 0.0;
  AdmissibleSequence sequence;
  bool exact = false;
};

/// Pairwise distances of the set under the metric.
std::vector<double> distance_table(const FinitePointSet& u, const ChainMetric& metric);

/// sup_u sum_l 2^{l/rho} d(u, U_l) for a given sequence (levels past the end
/// are taken equal to the last one).
double chaining_sum(const FinitePointSet& u, const AdmissibleSequence& seq, double rho, const ChainMetric& metric);

/// Farthest-point order starting from a 1-center, ties broken by index; level l
/// keeps the first min(2^{2^l}, |U|) points of the order.
GammaResult gamma_greedy_chain(const FinitePointSet& u, double rho, const ChainMetric& metric);

/// Exact gamma_rho for |U| <= 4: all choices of U_0, U_1, U_2, with U_l = U
/// afterwards.
GammaResult gamma_exhaustive(const FinitePointSet& u, double rho, const ChainMetric& metric);

/// Exhaustive when |U| <= 4, greedy otherwise. Always an upper bound on gamma_rho.
GammaResult gamma_upper_greedy(const FinitePointSet& u, double rho, const ChainMetric& metric);

/// {s (x) t}, flattened row-major to dimension m n, duplicates removed.
FinitePointSet tensor_set(const FinitePointSet& s_set, const FinitePointSet& t_set);

/// gamma_r(S (x) T, d_{r*}) against sup ||t||_{r*} gamma_r(S) + sup ||s||_{r*} gamma_r(T).
/// empirical.mean holds the left side (reps = 0); 0/0 counts as ratio 1.
RatioRecord verify_tensor_separation(const FinitePointSet& s_set, const FinitePointSet& t_set, double r);

/// E sup_u <u, X> against gamma_2(U, d_2) (Gaussian spec) or
/// gamma_r(U, d_{r*}) + gamma_2(U, d_2) (other specs, shape r).
RatioRecord verify_gamma_esup(const FinitePointSet& u, const DistributionSpec& spec, double r, int reps,
                              std::uint64_t seed);

}  // namespace matnorm
