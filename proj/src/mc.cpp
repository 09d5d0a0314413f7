#include "matnorm/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace matnorm {

nlohmann::json to_json(const MCEstimate& e) {
  nlohmann::json j = {{"mean", e.mean}, {"reps", e.reps}, {"batches", e.batches}, {"seed", e.seed}};
  if (std::isfinite(e.std_error)) {
    j["stderr"] = e.std_error;
  } else {
    j["stderr"] = nullptr;
  }
  return j;
}

MCEstimate monte_carlo(int reps, std::uint64_t seed, const SamplerFactory& factory, const MCOptions& options) {
  if (reps < kBatchSize || reps % kBatchSize != 0) {
    throw std::invalid_argument("monte_carlo: reps must be a positive multiple of " + std::to_string(kBatchSize));
  }
  std::vector<double> values(static_cast<std::size_t>(reps));
  const int threads = std::clamp(options.threads, 1, reps);

  std::mutex failure_lock;
  int failed_rep = -1;
  std::string failure;
  auto work = [&](int worker) {
    Sampler sample = factory();
    for (int r = worker; r < reps; r += threads) {
      try {
        CounterRng rng(seed, static_cast<std::uint64_t>(r));
        values[static_cast<std::size_t>(r)] = sample(rng);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> hold(failure_lock);
        if (failed_rep < 0 || r < failed_rep) {
          failed_rep = r;
          failure = e.what();
        }
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failed_rep >= 0) {
    throw MCError("replicate " + std::to_string(failed_rep) + " (seed " + std::to_string(seed) + ") failed: " + failure,
                  seed, failed_rep);
  }

  MCEstimate est;
  est.reps = reps;
  est.batches = reps / kBatchSize;
  est.seed = seed;
  std::vector<double> batch_means(static_cast<std::size_t>(est.batches));
  for (int b = 0; b < est.batches; ++b) {
    double acc = 0.0;
    for (int i = 0; i < kBatchSize; ++i) acc += values[static_cast<std::size_t>(b * kBatchSize + i)];
    batch_means[static_cast<std::size_t>(b)] = acc / kBatchSize;
  }
  double total = 0.0;
  for (double x : batch_means) total += x;
  est.mean = total / est.batches;
  if (est.batches == 1) {
    est.std_error = std::numeric_limits<double>::infinity();
  } else {
    double ss = 0.0;
    for (double x : batch_means) ss += (x - est.mean) * (x - est.mean);
    est.std_error = std::sqrt(ss / (est.batches - 1)) / std::sqrt(static_cast<double>(est.batches));
  }
  return est;
}

MCEstimate estimate_opnorm(const DistributionSpec& spec, const std::optional<TensorWeights>& weights, std::size_t m,
                           std::size_t n, const NormPair& pair, int reps, std::uint64_t seed,
                           const SolverBudget& budget, const MCOptions& options) {
  if (m == 0 || n == 0) throw std::invalid_argument("estimate_opnorm: m and n must be >= 1");
  std::optional<Matrix> profile;
  if (weights) {
    if (weights->a.size() != m || weights->b.size() != n) {
      throw std::invalid_argument("estimate_opnorm: weight lengths must match m and n");
    }
    profile = weights->profile();
  }
  auto factory = [&]() -> Sampler {
    return [&, buffer = Matrix(m, n)](CounterRng& rng) mutable {
      fill_sample(spec, rng, buffer);
      if (profile) {
        auto out = buffer.data();
        const auto w = profile->data();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= w[i];
      }
      return opnorm_value(buffer, pair, budget);
    };
  };
  return monte_carlo(reps, seed, factory, options);
}

MCEstimate estimate_esup_bilinear(const DistributionSpec& spec, const FinitePointSet& s_set,
                                  const FinitePointSet& t_set, int reps, std::uint64_t seed,
                                  const MCOptions& options) {
  const std::size_t m = s_set.dim();
  const std::size_t n = t_set.dim();
  auto factory = [&]() -> Sampler {
    return [&, buffer = Matrix(m, n)](CounterRng& rng) mutable {
      fill_sample(spec, rng, buffer);
      return bilinear_sup(buffer, s_set, t_set);
    };
  };
  return monte_carlo(reps, seed, factory, options);
}

MCEstimate estimate_esup_linear(const DistributionSpec& spec, const FinitePointSet& u_set, int reps,
                                std::uint64_t seed, const MCOptions& options) {
  const std::size_t k = u_set.dim();
  auto factory = [&]() -> Sampler {
    return [&, y = std::vector<double>(k)](CounterRng& rng) mutable {
      fill_sample(spec, rng, std::span<double>(y));
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& u : u_set.points()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) acc += u[i] * y[i];
        best = std::max(best, acc);
      }
      return best;
    };
  };
  return monte_carlo(reps, seed, factory, options);
}

MCEstimate estimate_order_stat_lq(const DistributionSpec& spec, std::size_t m, std::size_t k, const Exponent& q,
                                  int reps, std::uint64_t seed, const MCOptions& options) {
  if (k < 1 || k > m) throw std::invalid_argument("estimate_order_stat_lq: need 1 <= k <= m");
  auto factory = [&]() -> Sampler {
    return [&, y = std::vector<double>(m)](CounterRng& rng) mutable {
      fill_sample(spec, rng, std::span<double>(y));
      for (double& x : y) x = std::abs(x);
      if (q.is_infinite()) return *std::max_element(y.begin(), y.end());
      if (k < m) {
        std::nth_element(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k - 1), y.end(), std::greater<>());
      }
      return lp_norm(std::span<const double>(y.data(), k), q);
    };
  };
  return monte_carlo(reps, seed, factory, options);
}

MCEstimate estimate_submatrix_sup(const DistributionSpec& spec, std::size_t m, std::size_t n, std::size_t k,
                                  std::size_t l, const NormPair& pair, SubmatrixMode mode, int reps,
                                  std::uint64_t seed, const SubmatrixOptions& submatrix, const MCOptions& options) {
  if (mode == SubmatrixMode::Exact && binomial(m, k) * binomial(n, l) > submatrix.subset_budget) {
    throw BudgetError("estimate_submatrix_sup: C(m,k)*C(n,l) exceeds the exact budget; use LocalSearch");
  }
  auto factory = [&]() -> Sampler {
    return [&, buffer = Matrix(m, n)](CounterRng& rng) mutable {
      fill_sample(spec, rng, buffer);
      return submatrix_sup(buffer, k, l, pair, mode, submatrix).value;
    };
  };
  return monte_carlo(reps, seed, factory, options);
}

std::vector<GridPoint> expand_grid(const std::vector<std::pair<std::string, std::vector<double>>>& axes) {
  std::vector<GridPoint> out(1);
  for (const auto& [name, values] : axes) {
    if (values.empty()) throw std::invalid_argument("expand_grid: axis '" + name + "' is empty");
    std::vector<GridPoint> next;
    next.reserve(out.size() * values.size());
    for (const auto& base : out) {
      for (double v : values) {
        GridPoint p = base;
        p[name] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string canonical_key(const GridPoint& point) {
  std::string out;
  char buf[64];
  for (const auto& [key, v] : point) {
    if (!out.empty()) out += ';';
    if (std::isinf(v)) {
      std::snprintf(buf, sizeof buf, "%s", v > 0 ? "inf" : "-inf");
    } else {
      std::snprintf(buf, sizeof buf, "%.17g", v);
    }
    out += key + "=" + buf;
  }
  return out;
}

std::uint64_t point_seed(std::uint64_t seed, const GridPoint& point) {
  return hash_combine(seed, hash_string(canonical_key(point)));
}

std::vector<RatioRecord> ratio_campaign(const std::vector<GridPoint>& grid, const PointEstimator& estimator,
                                        const PointFormula& formula, std::uint64_t seed) {
  std::vector<RatioRecord> records;
  records.reserve(grid.size());
  for (const auto& point : grid) {
    RatioRecord rec;
    rec.grid_point = point;
    rec.ratio = std::numeric_limits<double>::quiet_NaN();
    try {
      rec.formula = formula(point);
      if (!(rec.formula.value > 0.0)) {
        rec.error = "formula value is not positive";
      } else {
        rec.empirical = estimator(point, point_seed(seed, point));
        rec.ratio = rec.empirical.mean / rec.formula.value;
      }
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

CampaignSummary summarize(const std::vector<RatioRecord>& records) {
  CampaignSummary s;
  s.min_ratio = std::numeric_limits<double>::infinity();
  s.max_ratio = -std::numeric_limits<double>::infinity();
  int ok = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) {
      ++s.failed_points;
      continue;
    }
    ++ok;
    s.min_ratio = std::min(s.min_ratio, r.ratio);
    s.max_ratio = std::max(s.max_ratio, r.ratio);
  }
  if (ok == 0) {
    s.min_ratio = s.max_ratio = s.spread = std::numeric_limits<double>::quiet_NaN();
  } else {
    s.spread = s.min_ratio > 0.0 ? s.max_ratio / s.min_ratio : std::numeric_limits<double>::infinity();
  }
  return s;
}

}  // namespace matnorm
