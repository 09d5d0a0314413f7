// matnorm: command-line front end for the samplers, solvers, bound formulas and
// verification campaigns. Exit codes: 0 pass, 1 verification failure, 2 usage
// or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matnorm/bounds.hpp"
#include "matnorm/campaign.hpp"
#include "matnorm/chaining.hpp"
#include "matnorm/distributions.hpp"
#include "matnorm/mc.hpp"
#include "matnorm/opnorm.hpp"
#include "matnorm/order_stats.hpp"

using namespace matnorm;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DistArgs {
  std::string name = "weibull";
  double r = 1.0;
  double sigma = 1.0;
  std::string sub = "uniform";

  void add(CLI::App* cmd) {
    cmd->add_option("--dist", name, "weibull, gaussian, rademacher, psi-r, logconcave")->capture_default_str();
    cmd->add_option("--r", r, "Weibull shape in [1, 2]")->capture_default_str();
    cmd->add_option("--sigma", sigma, "scale (psi-r sigma, gaussian std, rademacher scale)")->capture_default_str();
    cmd->add_option("--sub", sub, "logconcave law: uniform or exp")->capture_default_str();
  }

  DistributionSpec spec() const {
    json params = {{"r", r}, {"sigma", sigma}, {"std", sigma}, {"scale", sigma}, {"sub", sub}};
    return distribution_from_json({{"kind", name}, {"params", params}});
  }
};

struct PairArgs {
  std::string p = "2";
  std::string q = "2";

  void add(CLI::App* cmd) {
    cmd->add_option("--p", p, "domain exponent in [1, inf]")->capture_default_str();
    cmd->add_option("--q", q, "target exponent in [1, inf]")->capture_default_str();
  }
  NormPair pair() const { return NormPair(parse_exponent(p), parse_exponent(q)); }
};

struct BudgetArgs {
  SolverBudget budget;

  void add(CLI::App* cmd) {
    cmd->add_option("--max-starts", budget.max_starts)->capture_default_str();
    cmd->add_option("--max-iters", budget.max_iters)->capture_default_str();
    cmd->add_option("--tol", budget.tol)->capture_default_str();
    cmd->add_option("--enum-limit", budget.enum_limit)->capture_default_str();
    cmd->add_option("--sign-restarts", budget.sign_restarts)->capture_default_str();
  }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("MATNORM_SEED")) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("MATNORM_SEED is not an unsigned integer: ") + env);
  }
  return fallback;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("not a number in list: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
  std::string name;
  std::string form = "auto";
  std::size_t m = 1, n = 1, k = 1, l = 1;
  double r = 1.0;
  PairArgs pair;
  std::string a, b, c, rho = "2";
};

using BoundFn = std::function<BoundValue(const BoundArgs&)>;

TensorWeights tensor_weights(const BoundArgs& args) {
  if (args.a.empty() || args.b.empty()) throw UsageError("tensor bounds need --a and --b weight lists");
  return TensorWeights(parse_list(args.a), parse_list(args.b));
}

const std::map<std::string, BoundFn>& bound_table() {
  static const std::map<std::string, BoundFn> table = {
      {"weibull-iid",
       [](const BoundArgs& x) {
         const std::string form = x.form == "auto" ? (x.m == x.n ? "square" : "compact") : x.form;
         if (form == "compact") return weibull_iid_bound(x.m, x.n, x.pair.pair(), x.r);
         if (form == "cases") return weibull_iid_cases(x.m, x.n, x.pair.pair(), x.r);
         if (form == "moment") return weibull_iid_moment_form(x.m, x.n, x.pair.pair(), x.r);
         if (x.m != x.n) throw UsageError("--form " + form + " needs m = n");
         if (form == "square") return weibull_iid_square(x.n, x.pair.pair(), x.r);
         if (form == "moment-square") return weibull_iid_moment_square(x.n, x.pair.pair(), x.r);
         throw UsageError("weibull-iid forms: auto, compact, cases, moment, square, moment-square");
       }},
      {"gauss-iid",
       [](const BoundArgs& x) {
         if (x.form == "auto" || x.form == "compact") return gauss_iid_bound(x.m, x.n, x.pair.pair());
         if (x.form == "cases") return gauss_iid_cases(x.m, x.n, x.pair.pair());
         throw UsageError("gauss-iid forms: auto, compact, cases");
       }},
      {"bounded-entry", [](const BoundArgs& x) { return bounded_entry_bound(x.m, x.n, x.pair.pair()); }},
      {"gauss-tensor", [](const BoundArgs& x) { return gauss_tensor_bound(tensor_weights(x), x.pair.pair()); }},
      {"weibull-tensor",
       [](const BoundArgs& x) { return weibull_tensor_bound(tensor_weights(x), x.pair.pair(), x.r); }},
      {"ghlp", [](const BoundArgs& x) { return ghlp_bound(tensor_weights(x), x.pair.pair()); }},
      {"submatrix", [](const BoundArgs& x) { return submatrix_bound(x.m, x.n, x.k, x.l, x.pair.pair(), x.r); }},
      {"submatrix-log-concave",
       [](const BoundArgs& x) { return submatrix_bound_log_concave(x.m, x.n, x.k, x.l, x.pair.pair()); }},
      {"weighted-lrho",
       [](const BoundArgs& x) {
         if (x.c.empty()) throw UsageError("weighted-lrho needs --c");
         return weighted_lrho_bound(WeightVector(parse_list(x.c)), parse_exponent(x.rho), x.r,
                                    x.form == "gaussian");
       }},
      {"order-stat-lq",
       [](const BoundArgs& x) {
         const auto forms = order_stat_lq_forms(x.m, x.k, parse_exponent(x.rho), x.r);
         BoundValue b;
         const bool branched = x.form == "branched";
         b.value = branched ? forms.branched : forms.compact;
         b.case_label = branched ? forms.branch : "compact";
         b.terms = {{"compact", forms.compact}, {"branched", forms.branched}};
         b.anchor = "E l_q norm of the k largest order statistics (q from --rho)";
         return b;
       }},
  };
  return table;
}

std::string bound_names() {
  std::string names;
  for (const auto& [name, fn] : bound_table()) names += (names.empty() ? "" : ", ") + name;
  return names;
}

int run_bound(const BoundArgs& args) {
  const auto it = bound_table().find(args.name);
  if (it == bound_table().end()) {
    std::cerr << "unknown formula '" << args.name << "'; valid names: " << bound_names() << '\n';
    return kExitUsage;
  }
  print(to_json(it->second(args)));
  return kExitPass;
}

// ---- gamma ----------------------------------------------------------------

json gamma_json(const GammaResult& g) {
  return {{"value", g.value}, {"exact", g.exact}, {"levels", g.sequence.levels}};
}

ChainMetric metric_of(const std::string& name, double r) {
  if (name == "l2") return ChainMetric::l2();
  if (name == "lrstar") return ChainMetric::lr_star(r);
  throw UsageError("--metric must be l2 or lrstar");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator norms of random matrices: solvers, bounds and Monte Carlo checks"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed_flag;
  app.add_option("--seed", seed_flag, "master seed (overrides MATNORM_SEED)");

  // sample
  auto* sample = app.add_subcommand("sample", "draw a random matrix and print it as CSV");
  DistArgs sample_dist;
  sample_dist.add(sample);
  std::size_t sample_m = 4, sample_n = 4;
  bool sample_json = false;
  sample->add_option("--m", sample_m)->capture_default_str();
  sample->add_option("--n", sample_n)->capture_default_str();
  sample->add_flag("--json", sample_json, "emit {m, n, seed, dist, data} instead of CSV");

  // opnorm
  auto* opn = app.add_subcommand("opnorm", "||A||_{p->q} of a matrix file (CSV or .json)");
  std::string opn_file;
  PairArgs opn_pair;
  BudgetArgs opn_budget;
  opn->add_option("matrix", opn_file, "matrix file")->required();
  opn_pair.add(opn);
  opn_budget.add(opn);

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate a closed-form bound");
  BoundArgs bargs;
  bound->add_option("name", bargs.name, "formula name")->required();
  bound->add_option("--form", bargs.form, "auto, compact, cases, square, moment, ...")->capture_default_str();
  bound->add_option("--m", bargs.m)->capture_default_str();
  bound->add_option("--n", bargs.n)->capture_default_str();
  bound->add_option("--k", bargs.k)->capture_default_str();
  bound->add_option("--l", bargs.l)->capture_default_str();
  bound->add_option("--r", bargs.r, "Weibull shape in [1, 2]")->capture_default_str();
  bound->add_option("--a", bargs.a, "row weights, comma separated");
  bound->add_option("--b", bargs.b, "column weights, comma separated");
  bound->add_option("--c", bargs.c, "weight vector, comma separated");
  bound->add_option("--rho", bargs.rho, "exponent for weighted-lrho / q for order-stat-lq")->capture_default_str();
  bargs.pair.add(bound);

  // esup
  auto* esup = app.add_subcommand("esup", "Monte Carlo E sup <u, X> or E sup s^T X t over point sets");
  DistArgs esup_dist;
  esup_dist.add(esup);
  std::string esup_u, esup_s, esup_t;
  int esup_reps = 1000;
  esup->add_option("--u", esup_u, "point set JSON for the linear supremum");
  esup->add_option("--s", esup_s, "row point set JSON (bilinear)");
  esup->add_option("--t", esup_t, "column point set JSON (bilinear)");
  esup->add_option("--reps", esup_reps)->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification campaign from a TOML config");
  std::string verify_config, verify_out;
  std::optional<int> verify_reps;
  double verify_factor = 0.0;
  verify->add_option("config", verify_config, "campaign TOML")->required();
  verify->add_option("--out-dir", verify_out, "directory for relative output paths");
  verify->add_option("--reps", verify_reps, "override reps (pilot runs)");
  verify->add_option("--suggest-band", verify_factor, "also print a band widened by this factor");

  // submatrix
  auto* subm = app.add_subcommand("submatrix", "sup of ||A_{I,J}||_{p->q} over k x l submatrices");
  std::string subm_file, subm_mode = "exact";
  std::size_t subm_k = 1, subm_l = 1, subm_m = 0, subm_n = 0;
  int subm_reps = 100;
  PairArgs subm_pair;
  DistArgs subm_dist;
  subm->add_option("--matrix", subm_file, "matrix file; without it a random matrix is averaged");
  subm->add_option("--k", subm_k)->capture_default_str();
  subm->add_option("--l", subm_l)->capture_default_str();
  subm->add_option("--m", subm_m, "rows of the random matrix");
  subm->add_option("--n", subm_n, "columns of the random matrix");
  subm->add_option("--reps", subm_reps)->capture_default_str();
  subm->add_option("--mode", subm_mode, "exact or local")->capture_default_str();
  subm_pair.add(subm);
  subm_dist.add(subm);

  // gamma
  auto* gam = app.add_subcommand("gamma", "chaining functional gamma_rho of a point set");
  std::string gam_points, gam_metric = "l2", gam_tensor;
  double gam_rho = 2.0, gam_r = 2.0;
  gam->add_option("points", gam_points, "point set JSON")->required();
  gam->add_option("--rho", gam_rho)->capture_default_str();
  gam->add_option("--metric", gam_metric, "l2 or lrstar")->capture_default_str();
  gam->add_option("--r", gam_r, "shape for the l_{r*} metric")->capture_default_str();
  gam->add_option("--tensor-with", gam_tensor, "second set T: check the tensor separation bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) {
      const std::uint64_t seed = resolve_seed(seed_flag, 1);
      const DistributionSpec spec = sample_dist.spec();
      const SampleMatrix s = sample_matrix(spec, sample_m, sample_n, seed);
      if (sample_json) {
        const auto d = s.entries.data();
        print({{"m", s.m}, {"n", s.n}, {"seed", seed}, {"dist", to_json(spec)},
               {"data", std::vector<double>(d.begin(), d.end())}});
      } else {
        std::cout << format_matrix_csv(s.entries);
      }
      return kExitPass;
    }
    if (*opn) {
      Matrix a;
      try {
        a = read_matrix_file(opn_file);
      } catch (const std::exception& e) {
        throw UsageError(std::string("cannot parse matrix: ") + e.what());
      }
      opn_budget.budget.seed = resolve_seed(seed_flag, opn_budget.budget.seed);
      print(to_json(opnorm(a, opn_pair.pair(), opn_budget.budget)));
      return kExitPass;
    }
    if (*bound) return run_bound(bargs);
    if (*esup) {
      const std::uint64_t seed = resolve_seed(seed_flag, 1);
      const DistributionSpec spec = esup_dist.spec();
      MCEstimate est;
      if (!esup_u.empty()) {
        est = estimate_esup_linear(spec, point_set_from_json(read_json_file(esup_u)), esup_reps, seed);
      } else if (!esup_s.empty() && !esup_t.empty()) {
        est = estimate_esup_bilinear(spec, point_set_from_json(read_json_file(esup_s)),
                                     point_set_from_json(read_json_file(esup_t)), esup_reps, seed);
      } else {
        throw UsageError("esup needs --u, or both --s and --t");
      }
      print({{"dist", to_json(spec)}, {"estimate", to_json(est)}});
      return kExitPass;
    }
    if (*verify) {
      CampaignConfig config = load_campaign_config(verify_config);
      config.seed = resolve_seed(seed_flag, config.seed);
      const CampaignReport report = run_campaign(config, verify_reps);
      write_campaign_outputs(report, verify_out);
      json summary = campaign_summary(report);
      if (verify_factor > 0.0 && report.summary.failed_points == 0) {
        const Band b = suggest_band(report.summary, verify_factor);
        summary["suggested_band"] = {{"low", b.low}, {"high", b.high}};
      }
      for (const auto& r : report.records) {
        if (!r.error.empty()) std::cerr << canonical_key(r.grid_point) << ": " << r.error << '\n';
      }
      print(summary);
      return report.pass ? kExitPass : kExitFail;
    }
    if (*subm) {
      SubmatrixMode mode;
      if (subm_mode == "exact") {
        mode = SubmatrixMode::Exact;
      } else if (subm_mode == "local") {
        mode = SubmatrixMode::LocalSearch;
      } else {
        throw UsageError("--mode must be exact or local");
      }
      SubmatrixOptions opts;
      opts.seed = resolve_seed(seed_flag, opts.seed);
      const NormPair pair = subm_pair.pair();
      if (!subm_file.empty()) {
        Matrix a;
        try {
          a = read_matrix_file(subm_file);
        } catch (const std::exception& e) {
          throw UsageError(std::string("cannot parse matrix: ") + e.what());
        }
        const SubmatrixResult res = submatrix_sup(a, subm_k, subm_l, pair, mode, opts);
        print({{"value", res.value}, {"rows", res.rows}, {"cols", res.cols}});
        return kExitPass;
      }
      if (subm_m == 0 || subm_n == 0) throw UsageError("submatrix needs --matrix, or --m and --n");
      const DistributionSpec spec = subm_dist.spec();
      const MCEstimate est =
          estimate_submatrix_sup(spec, subm_m, subm_n, subm_k, subm_l, pair, mode, subm_reps, opts.seed, opts);
      json out = {{"dist", to_json(spec)}, {"estimate", to_json(est)}};
      if (spec.kind() == DistKind::WeibullSym) {
        const BoundValue f = submatrix_bound(subm_m, subm_n, subm_k, subm_l, pair, spec.shape());
        out["formula"] = to_json(f);
        out["ratio"] = est.mean / f.value;
      }
      print(out);
      return kExitPass;
    }
    if (*gam) {
      const FinitePointSet u = point_set_from_json(read_json_file(gam_points));
      if (!gam_tensor.empty()) {
        const RatioRecord rec = verify_tensor_separation(u, point_set_from_json(read_json_file(gam_tensor)), gam_r);
        print({{"lhs", rec.empirical.mean}, {"rhs", to_json(rec.formula)}, {"ratio", rec.ratio}});
        return kExitPass;
      }
      print(gamma_json(gamma_upper_greedy(u, gam_rho, metric_of(gam_metric, gam_r))));
      return kExitPass;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
