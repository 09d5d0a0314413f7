#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matnorm/bounds.hpp"
#include "matnorm/distributions.hpp"
#include "matnorm/opnorm.hpp"
#include "matnorm/rng.hpp"

namespace matnorm {

/// Replicates are grouped in batches of this size; the standard error is the
/// standard deviation of the batch means over sqrt(batches).
inline constexpr int kBatchSize = 100;

struct MCEstimate {
  double mean = 0.0;
  /// Infinite when there is a single batch.
  double std_error = 0.0;
  int reps = 0;
  int batches = 0;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const MCEstimate& e);

/// Raised when a replicate fails; carries the seed and replicate index.
class MCError : public std::runtime_error {
 public:
  MCError(const std::string& what, std::uint64_t seed, int replicate)
      : std::runtime_error(what), seed_(seed), replicate_(replicate) {}
  std::uint64_t seed() const { return seed_; }
  int replicate() const { return replicate_; }

 private:
  std::uint64_t seed_;
  int replicate_;
};

/// One draw of the statistic from the replicate's own stream.
using Sampler = std::function<double(CounterRng&)>;
/// Builds a sampler with private scratch; called once per worker thread.
using SamplerFactory = std::function<Sampler()>;

struct MCOptions {
  int threads = 1;
};

/// Mean of `reps` draws, replicate r using CounterRng(seed, r). The result
/// does not depend on the thread count. reps must be a positive multiple of
/// kBatchSize.
MCEstimate monte_carlo(int reps, std::uint64_t seed, const SamplerFactory& factory, const MCOptions& options = {});

/// E||(w_ij X_ij)||_{p->q}; with weights the entries are scaled by a_i b_j.
MCEstimate estimate_opnorm(const DistributionSpec& spec, const std::optional<TensorWeights>& weights, std::size_t m,
                           std::size_t n, const NormPair& pair, int reps, std::uint64_t seed,
                           const SolverBudget& budget = {}, const MCOptions& options = {});

/// E sup_{s in S, t in T} s^T X t.
MCEstimate estimate_esup_bilinear(const DistributionSpec& spec, const FinitePointSet& s_set,
                                  const FinitePointSet& t_set, int reps, std::uint64_t seed,
                                  const MCOptions& options = {});

/// E sup_{u in U} <u, Y>.
MCEstimate estimate_esup_linear(const DistributionSpec& spec, const FinitePointSet& u_set, int reps,
                                std::uint64_t seed, const MCOptions& options = {});

/// E (sum_{i<=k} (Y*_i)^q)^{1/q} for m iid entries; q = inf gives E max |Y_i|.
MCEstimate estimate_order_stat_lq(const DistributionSpec& spec, std::size_t m, std::size_t k, const Exponent& q,
                                  int reps, std::uint64_t seed, const MCOptions& options = {});

/// E sup_{|I|=k, |J|=l} ||X_{I,J}||_{p->q}.
MCEstimate estimate_submatrix_sup(const DistributionSpec& spec, std::size_t m, std::size_t n, std::size_t k,
                                  std::size_t l, const NormPair& pair, SubmatrixMode mode, int reps,
                                  std::uint64_t seed, const SubmatrixOptions& submatrix = {},
                                  const MCOptions& options = {});

using GridPoint = std::map<std::string, double>;

/// Cartesian product of named axes; the first axis varies slowest.
std::vector<GridPoint> expand_grid(const std::vector<std::pair<std::string, std::vector<double>>>& axes);

/// "key=value;..." in key order, values printed with 17 significant digits.
std::string canonical_key(const GridPoint& point);

struct RatioRecord {
  MCEstimate empirical;
  BoundValue formula;
  double ratio = 0.0;
  GridPoint grid_point;
  /// Nonempty when the point could not be evaluated; ratio is then NaN.
  std::string error;
};

struct CampaignSummary {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;
  int failed_points = 0;
};

using PointEstimator = std::function<MCEstimate(const GridPoint&, std::uint64_t seed)>;
using PointFormula = std::function<BoundValue(const GridPoint&)>;

/// Seed of a grid point: hash_combine(seed, hash_string(canonical_key(point))).
std::uint64_t point_seed(std::uint64_t seed, const GridPoint& point);

/// One RatioRecord per grid point. A non-positive formula value or a thrown
/// error marks that point and the campaign moves on.
std::vector<RatioRecord> ratio_campaign(const std::vector<GridPoint>& grid, const PointEstimator& estimator,
                                        const PointFormula& formula, std::uint64_t seed);

/// min, max and max/min over the records without an error.
CampaignSummary summarize(const std::vector<RatioRecord>& records);

}  // namespace matnorm
