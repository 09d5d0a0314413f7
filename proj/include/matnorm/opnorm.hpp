#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "matnorm/matrix.hpp"
#include "matnorm/rng.hpp"
#include "matnorm/vector_calculus.hpp"

namespace matnorm {

enum class OpNormMethod { ExactColumn, ExactRow, ExactSpectral, SignEnum, PowerMethod, Dualized };

std::string to_string(OpNormMethod method);

struct SolverBudget {
  int max_starts = 64;
  int max_iters = 10000;
  /// Relative change of the bilinear value that stops a power-method run.
  double tol = 1e-12;
  /// Largest sign-vector dimension that is enumerated exhaustively.
  std::size_t enum_limit = 16;
  /// Restarts of the bit-flip search once enumeration is out of budget.
  int sign_restarts = 64;
  std::uint64_t seed = 0x5eedULL;
};

struct OpNormResult {
  double value = 0.0;
  OpNormMethod method = OpNormMethod::ExactColumn;
  /// s in B_{q*}^m and t in B_p^n with value = s^T A t (exact methods) or
  /// value >= s^T A t.
  std::vector<double> witness_s;
  std::vector<double> witness_t;
  int starts_used = 0;
  bool converged = true;
  /// False when the value is only the best of a heuristic search.
  bool certified = true;
};

nlohmann::json to_json(const OpNormResult& result);

/// ||A||_{l_p^n -> l_q^m}. Dispatch, in order: p = 1 (max column l_q
/// norm), q = inf (max row l_{p*} norm), p = q = 2 (Gram power iteration),
/// p = inf (sign vectors), q = 1 (sign vectors of the transpose), otherwise
/// multistart nonlinear power method on both the primal and the dual problem.
OpNormResult opnorm(const Matrix& a, const NormPair& pair, const SolverBudget& budget = {});

/// opnorm(a, pair, budget).value without building witnesses; small shapes of
/// the exact cases take allocation-free paths.
double opnorm_value(const Matrix& a, const NormPair& pair, const SolverBudget& budget = {});

struct PowerStep {
  std::vector<double> t;
  double value = 0.0;  // s^T A t for the input t and its dual s
  bool restarted = false;
};

/// One nonlinear power iteration for 1 < p, q < inf: y = A t, s = dual_q(y),
/// z = A^T s, returns dual_{p*}(z) on the unit p-sphere. A zero image is
/// replaced by a random unit vector drawn from `rng`.
PowerStep power_method_step(const Matrix& a, std::span<const double> t, const NormPair& pair,
                            CounterRng* rng = nullptr);

/// Largest singular value by power iteration on the smaller Gram matrix.
struct SpectralResult {
  double value;
  std::vector<double> left;   // unit, length m
  std::vector<double> right;  // unit, length n
};
SpectralResult spectral_norm(const Matrix& a, double rel_tol = 1e-10);

/// Finite nonempty set of vectors of a common dimension.
class FinitePointSet {
 public:
  FinitePointSet(std::size_t dim, std::vector<std::vector<double>> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<double>& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<std::vector<double>>& points() const { return points_; }

  FinitePointSet scaled(double c) const;
  /// sup over the set of ||u||_rho.
  double sup_norm(const Exponent& rho) const;

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> points_;
};

nlohmann::json to_json(const FinitePointSet& set);
FinitePointSet point_set_from_json(const nlohmann::json& j);

/// max over s in S, t in T of s^T A t.
double bilinear_sup(const Matrix& a, const FinitePointSet& s_set, const FinitePointSet& t_set);

enum class SubmatrixMode { Exact, LocalSearch };

struct SubmatrixResult {
  double value = 0.0;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

struct SubmatrixOptions {
  /// Exact mode refuses more than this many (I, J) pairs.
  double subset_budget = 1e5;
  int restarts = 16;
  std::uint64_t seed = 0x5b5ULL;
  SolverBudget solver{};
};

/// Thrown when exact enumeration would exceed its budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sup over |I| = k, |J| = l of ||A_{I,J}||_{p -> q}. LocalSearch returns a
/// lower bound found by single-index swap hill climbing from random restarts.
SubmatrixResult submatrix_sup(const Matrix& a, std::size_t k, std::size_t l, const NormPair& pair,
                              SubmatrixMode mode, const SubmatrixOptions& options = {});

/// C(n, k) as a double.
double binomial(std::size_t n, std::size_t k);

}  // namespace matnorm
