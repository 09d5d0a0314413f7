// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. `--pilot` reruns the band-based checks with shifted
// seeds and prints observed ranges instead of judging them; `--only N` runs a
// single criterion.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matnorm/bounds.hpp"
#include "matnorm/campaign.hpp"
#include "matnorm/chaining.hpp"
#include "matnorm/mc.hpp"
#include "matnorm/opnorm.hpp"
#include "test_support.hpp"

using namespace matnorm;

namespace {

// Pinned tolerances. Bands are pilot ranges (seeds shifted by 1000) widened
// by a factor 1.5.
constexpr double kOracleRelTol = 1e-9;
constexpr double kDualityRelTol = 1e-4;
constexpr double kOrliczRelTol = 1e-10;
constexpr double kIdentityRelTol = 1e-12;
constexpr double kBranchFactor = 4.0;
constexpr double kChainFactor = 2.0;
// Weibull Chevet ratio LHS / RHS over random (S, T).
constexpr double kChevetLow = 0.20;
constexpr double kChevetHigh = 1.05;
// Log-concave over exponential estimate.
constexpr double kLogConcaveC = 1.14;
// Tensor separation ratio.
constexpr double kSeparationLow = 0.19;
constexpr double kSeparationHigh = 1.99;

bool g_pilot = false;
std::uint64_t g_seed_shift = 0;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  std::string str() const {
    std::ostringstream s;
    s << "[" << lo << ", " << hi << "]";
    return s.str();
  }
};

std::string source_path(const std::string& rel) { return std::string(MATNORM_SOURCE_DIR) + "/" + rel; }

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

std::vector<Exponent> corners() { return {1.0, 2.0, Exponent::infinity()}; }

Outcome oracle_suite() {
  std::mt19937_64 gen(101 + g_seed_shift);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = testing_support::random_gaussian(5, 5, gen);
    for (const auto& p : corners())
      for (const auto& q : corners()) {
        const double want = testing_support::corner_opnorm(a, testing_support::as_double(p), testing_support::as_double(q));
        worst = std::max(worst, rel_err(opnorm(a, NormPair(p, q)).value, want));
      }
  }
  std::ostringstream s;
  s << "max rel err " << worst << " (tol " << kOracleRelTol << ")";
  return {worst <= kOracleRelTol, s.str()};
}

Outcome duality() {
  std::mt19937_64 gen(202 + g_seed_shift);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = testing_support::random_gaussian(6, 6, gen);
    const Matrix at = a.transpose();
    for (double p : {1.5, 2.0, 3.0})
      for (double q : {1.5, 2.0, 3.0}) {
        const NormPair pair(p, q);
        const NormPair dual = pair.transposed();
        worst = std::max(worst, rel_err(opnorm(a, pair).value, opnorm(at, dual).value));
      }
  }
  std::ostringstream s;
  s << "max rel gap " << worst << " (tol " << kDualityRelTol << ")";
  return {worst <= kDualityRelTol, s.str()};
}

Outcome orlicz_closed_form() {
  const double c = 0.7;
  double worst = 0.0;
  std::vector<double> v;
  for (std::size_t k = 1; k <= 10000; ++k) {
    v.assign(k, c);
    for (double rho : {1.0, 1.5, 2.0}) {
      const double want = std::pow((2.0 + std::log(static_cast<double>(k))) / 2.0, 1.0 / rho) * c;
      // k = 1 is the peak itself.
      worst = std::max(worst, rel_err(orlicz_phi_norm(v, rho), k == 1 ? c : want));
    }
  }
  std::ostringstream s;
  s << "max rel err " << worst << " (tol " << kOrliczRelTol << ")";
  return {worst <= kOrliczRelTol, s.str()};
}

Outcome campaign(const std::string& file) {
  CampaignConfig config = load_campaign_config(source_path("configs/" + file));
  if (g_pilot) config.seed += 1000;
  const CampaignReport report = run_campaign(config);
  write_campaign_outputs(report, "acceptance_out");
  std::ostringstream s;
  s << config.name << ": " << report.records.size() << " points, ratios [" << report.summary.min_ratio << ", "
    << report.summary.max_ratio << "] in band [" << config.band.low << ", " << config.band.high << "], spread "
    << report.summary.spread;
  if (config.max_spread > 0) s << " (max " << config.max_spread << ")";
  if (report.summary.failed_points) s << ", " << report.summary.failed_points << " failed points";
  return {report.pass, s.str()};
}

FinitePointSet random_set(std::size_t size, std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> pts(size, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& x : p) x = nd(gen);
  return FinitePointSet(dim, pts);
}

Outcome chevet_campaign() {
  std::mt19937_64 gen(505 + g_seed_shift);
  std::uniform_int_distribution<int> size(2, 16), dim(1, 12);
  constexpr int kReps = 2000;
  Range range;
  int instance = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const FinitePointSet s = random_set(size(gen), dim(gen), gen);
    const FinitePointSet t = random_set(size(gen), dim(gen), gen);
    for (double r : {1.0, 1.5, 2.0}) {
      const std::uint64_t seed = 5000 + g_seed_shift + 10 * instance++;
      const auto w = DistributionSpec::weibull(r);
      const auto g = DistributionSpec::gaussian();
      const Exponent rs = holder_conjugate(r);
      ChevetInputs in;
      in.sup_s_l2 = s.sup_norm(2.0);
      in.sup_t_l2 = t.sup_norm(2.0);
      in.sup_s_lrstar = s.sup_norm(rs);
      in.sup_t_lrstar = t.sup_norm(rs);
      in.esup_S_gauss = estimate_esup_linear(g, s, kReps, seed + 1).mean;
      in.esup_T_gauss = estimate_esup_linear(g, t, kReps, seed + 2).mean;
      in.esup_S_weib = estimate_esup_linear(w, s, kReps, seed + 3).mean;
      in.esup_T_weib = estimate_esup_linear(w, t, kReps, seed + 4).mean;
      const double lhs = estimate_esup_bilinear(w, s, t, kReps, seed).mean;
      range.add(lhs / chevet_weibull_rhs(in, r).value);
    }
  }
  std::ostringstream out;
  out << instance << " instances, ratios " << range.str() << " band [" << kChevetLow << ", " << kChevetHigh << "]";
  return {range.lo >= kChevetLow && range.hi <= kChevetHigh, out.str()};
}

Outcome formula_identities() {
  std::vector<Exponent> dense;
  for (double x = 1.0; x <= 6.0; x += 0.25) dense.push_back(x);
  dense.push_back(Exponent::infinity());
  double worst = 0.0;
  int branch_misses = 0;
  int checks = 0;
  auto identity = [&](double a, double b) {
    worst = std::max(worst, rel_err(a, b));
    ++checks;
  };
  for (std::size_t m : {1u, 3u, 10u, 50u})
    for (std::size_t n : {1u, 4u, 17u, 64u})
      for (const auto& p : dense)
        for (const auto& q : dense) {
          const NormPair pair(p, q);
          const NormPair t = pair.transposed();
          identity(gauss_iid_bound(m, n, pair).value, gauss_iid_bound(n, m, t).value);
          for (double r : {1.0, 1.5, 2.0}) {
            identity(weibull_iid_bound(m, n, pair, r).value, weibull_iid_bound(n, m, t, r).value);
            const BoundValue sub = submatrix_bound(m, n, m, n, pair, r);
            const BoundValue iid = weibull_iid_bound(m, n, pair, r);
            identity(sub.value, iid.value);
            for (std::size_t i = 0; i < std::min(sub.terms.size(), iid.terms.size()); ++i)
              identity(sub.terms[i].second, iid.terms[i].second);
            if (sub.terms.size() != iid.terms.size()) worst = 1.0;
          }
        }
  // Homogeneity of the tensor evaluators.
  std::mt19937_64 gen(808);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<double> a(3 + trial), b(9 - trial);
    for (double& x : a) x = u(gen);
    for (double& x : b) x = u(gen);
    const TensorWeights w(a, b);
    const TensorWeights w2 = w.scaled(2.5, 2.0);
    for (const auto& p : dense)
      for (const auto& q : dense) {
        const NormPair pair(p, q);
        identity(gauss_tensor_bound(w2, pair).value, 5.0 * gauss_tensor_bound(w, pair).value);
        for (double r : {1.0, 1.5, 2.0})
          identity(weibull_tensor_bound(w2, pair, r).value, 5.0 * weibull_tensor_bound(w, pair, r).value);
        if (p <= Exponent(2.0) && Exponent(2.0) <= q) identity(ghlp_bound(w2, pair).value, 5.0 * ghlp_bound(w, pair).value);
      }
    for (const auto& rho : dense)
      for (double r : {1.0, 2.0})
        identity(weighted_lrho_bound(WeightVector(a).scaled(3.0), rho, r, false).value,
                 3.0 * weighted_lrho_bound(WeightVector(a), rho, r, false).value);
  }
  // Branch boundaries: both sides of p* = 2, q = 2 and the shape r.
  constexpr double eps = 1e-7;
  auto close = [&](double lo, double hi) {
    ++checks;
    if (!(lo <= kBranchFactor * hi && hi <= kBranchFactor * lo)) ++branch_misses;
  };
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<double> a(12), b(10);
    for (double& x : a) x = u(gen);
    for (double& x : b) x = u(gen);
    const TensorWeights w(a, b);
    for (double r : {1.0, 1.5, 2.0})
      for (const auto& other : dense)
        for (double edge : {2.0, r}) {
          if (edge <= 1.0) continue;
          close(weibull_tensor_bound(w, NormPair(other, edge - eps), r).value,
                weibull_tensor_bound(w, NormPair(other, edge + eps), r).value);
          close(weibull_tensor_bound(w, NormPair(testing_support::conj(edge - eps), other), r).value,
                weibull_tensor_bound(w, NormPair(testing_support::conj(edge + eps), other), r).value);
          if (r == 2.0) {
            close(gauss_tensor_bound(w, NormPair(other, edge - eps)).value,
                  gauss_tensor_bound(w, NormPair(other, edge + eps)).value);
            close(gauss_tensor_bound(w, NormPair(testing_support::conj(edge - eps), other)).value,
                  gauss_tensor_bound(w, NormPair(testing_support::conj(edge + eps), other)).value);
          }
        }
  }
  std::ostringstream s;
  s << checks << " checks, max identity rel err " << worst << " (tol " << kIdentityRelTol << "), " << branch_misses
    << " branch jumps beyond factor " << kBranchFactor;
  return {worst <= kIdentityRelTol && branch_misses == 0, s.str()};
}

FinitePointSet signed_basis(std::size_t k) {
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < k; ++i)
    for (double sgn : {1.0, -1.0}) {
      std::vector<double> v(k, 0.0);
      v[i] = sgn;
      pts.push_back(v);
    }
  return FinitePointSet(k, pts);
}

Outcome log_concave_domination() {
  std::vector<FinitePointSet> families;
  for (std::size_t k : {2u, 8u, 32u, 64u}) families.push_back(signed_basis(k));
  std::mt19937_64 gen(909 + g_seed_shift);
  std::uniform_int_distribution<int> verts(2, 40), dim(2, 64);
  for (int trial = 0; trial < 20; ++trial) {
    const FinitePointSet half = random_set(verts(gen), dim(gen), gen);
    std::vector<std::vector<double>> pts = half.points();
    for (const auto& p : half.points()) {
      std::vector<double> neg(p);
      for (double& x : neg) x = -x;
      pts.push_back(neg);
    }
    families.emplace_back(half.dim(), pts);
  }
  constexpr int kReps = 2000;
  const auto expo = DistributionSpec::weibull(1.0);
  Range range;
  int index = 0;
  for (const auto& u : families) {
    const std::uint64_t seed = 9000 + g_seed_shift + index++;
    const double base = estimate_esup_linear(expo, u, kReps, seed).mean;
    for (auto kind : {LogConcaveKind::UniformSym, LogConcaveKind::ExpNormalized})
      range.add(estimate_esup_linear(DistributionSpec::log_concave(kind), u, kReps, seed).mean / base);
  }
  std::ostringstream s;
  s << families.size() << " sets, log-concave / exponential " << range.str() << " (C = " << kLogConcaveC << ")";
  return {range.hi <= kLogConcaveC, s.str()};
}

Outcome chaining() {
  std::mt19937_64 gen(1010 + g_seed_shift);
  std::uniform_int_distribution<int> size(1, 4), dim(1, 5);
  int violations = 0;
  int instances = 0;
  double worst_factor = 1.0;
  for (int trial = 0; trial < 300; ++trial) {
    const FinitePointSet u = random_set(size(gen), dim(gen), gen);
    const std::vector<ChainMetric> metrics{ChainMetric::l2(), ChainMetric::lr_star(1.0), ChainMetric::lr_star(1.5)};
    for (const auto& metric : metrics)
      for (double rho : {1.0, 2.0}) {
        ++instances;
        const double greedy = gamma_greedy_chain(u, rho, metric).value;
        const double exact = gamma_exhaustive(u, rho, metric).value;
        if (greedy < exact * (1 - 1e-12) || greedy > kChainFactor * exact * (1 + 1e-12) + 1e-300) ++violations;
        if (exact > 0) worst_factor = std::max(worst_factor, greedy / exact);
      }
  }
  Range range;
  int tensors = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const FinitePointSet s = random_set(size(gen), dim(gen), gen);
    const FinitePointSet t = random_set(size(gen), dim(gen), gen);
    for (double r : {1.0, 1.5, 2.0}) {
      ++tensors;
      range.add(verify_tensor_separation(s, t, r).ratio);
    }
  }
  std::ostringstream out;
  out << instances << " gamma instances, " << violations << " outside [exact, " << kChainFactor
      << " exact] (worst greedy/exact " << worst_factor << "); " << tensors << " tensor ratios " << range.str()
      << " band [" << kSeparationLow << ", " << kSeparationHigh << "]";
  return {violations == 0 && range.lo >= kSeparationLow && range.hi <= kSeparationHigh, out.str()};
}

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matnorm acceptance checks"};
  int only = 0;
  app.add_flag("--pilot", g_pilot, "shift seeds and report observed ranges");
  app.add_option("--only", only, "run a single criterion");
  CLI11_PARSE(app, argc, argv);
  if (g_pilot) g_seed_shift = 1000;

  const std::vector<Criterion> criteria{
      {1, "operator-norm oracle suite", 60, oracle_suite},
      {2, "duality", 300, duality},
      {3, "orlicz closed form", 1, orlicz_closed_form},
      {4, "weibull iid campaign", 1800, [] { return campaign("weibull_iid.toml"); }},
      {5, "weibull chevet campaign", 1200, chevet_campaign},
      {6, "order statistics campaign", 600, [] { return campaign("order_stats.toml"); }},
      {7, "exact submatrix campaign", 1800, [] { return campaign("submatrix_exact.toml"); }},
      {8, "formula identities", 10, formula_identities},
      {9, "log-concave domination", 600, log_concave_domination},
      {10, "chaining", 300, chaining},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = out.ok && in_time;
    if (!pass) ++failures;
    std::printf("%s criterion %d (%s): %s; %.2fs (limit %.0fs)%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.c_str(), secs, c.time_limit_s, in_time ? "" : " TOO SLOW");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
