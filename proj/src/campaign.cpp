#include "matnorm/campaign.hpp"

#include <toml.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "matnorm/bounds.hpp"
#include "matnorm/distributions.hpp"
#include "matnorm/order_stats.hpp"

namespace matnorm {

namespace {

// Grid value standing for "the full dimension" in k = "m" / l = "n".
constexpr double kFullDimension = 0.0;

double axis_value(const toml::node& node, const std::string& axis) {
  if (auto v = node.value<double>()) return *v;
  if (auto s = node.value<std::string>()) {
    if (*s == "inf" || *s == "infinity") return std::numeric_limits<double>::infinity();
    if ((axis == "k" && *s == "m") || (axis == "l" && *s == "n")) return kFullDimension;
  }
  throw ConfigError("grid axis '" + axis + "': values must be numbers, \"inf\", or k = \"m\" / l = \"n\"");
}

template <class T>
T required(const toml::table& tbl, const char* key) {
  auto v = tbl[key].value<T>();
  if (!v) throw ConfigError(std::string("missing or mistyped key '") + key + "'");
  return *v;
}

std::size_t as_size(const GridPoint& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v >= 1.0) || v != std::floor(v) || !std::isfinite(v)) {
    throw std::domain_error("grid value " + key + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

std::size_t size_or(const GridPoint& p, const std::string& key, std::size_t full) {
  auto it = p.find(key);
  if (it == p.end() || it->second == kFullDimension) return full;
  return as_size(p, key);
}

Exponent exponent_of(const GridPoint& p, const std::string& key) { return Exponent(p.at(key)); }

NormPair pair_of(const GridPoint& p) { return NormPair(exponent_of(p, "p"), exponent_of(p, "q")); }

struct KindImpl {
  CampaignKind info;
  std::function<PointEstimator(const CampaignConfig&)> estimator;
  PointFormula formula;
};

BoundValue wrap(double value, std::string label, std::string anchor) {
  BoundValue b;
  b.value = value;
  b.case_label = std::move(label);
  b.anchor = std::move(anchor);
  b.terms = {{"value", value}};
  return b;
}

const std::vector<KindImpl>& registry() {
  static const std::vector<KindImpl> kinds = [] {
    std::vector<KindImpl> k;

    k.push_back({{"weibull-iid-opnorm", "E||X||_{p->q} for iid Weibull(r) against the compact four-term bound",
                  {"m", "p", "q", "r"}},
                 [](const CampaignConfig& c) -> PointEstimator {
                   return [c](const GridPoint& p, std::uint64_t seed) {
                     const std::size_t m = as_size(p, "m");
                     return estimate_opnorm(DistributionSpec::weibull(p.at("r")), std::nullopt, m, size_or(p, "n", m),
                                            pair_of(p), c.reps, seed, c.solver, {c.threads});
                   };
                 },
                 [](const GridPoint& p) {
                   const std::size_t m = as_size(p, "m");
                   return weibull_iid_bound(m, size_or(p, "n", m), pair_of(p), p.at("r"));
                 }});

    k.push_back({{"gauss-iid-opnorm", "E||G||_{p->q} for iid standard Gaussians against the compact bound",
                  {"m", "p", "q"}},
                 [](const CampaignConfig& c) -> PointEstimator {
                   return [c](const GridPoint& p, std::uint64_t seed) {
                     const std::size_t m = as_size(p, "m");
                     return estimate_opnorm(DistributionSpec::gaussian(), std::nullopt, m, size_or(p, "n", m),
                                            pair_of(p), c.reps, seed, c.solver, {c.threads});
                   };
                 },
                 [](const GridPoint& p) {
                   const std::size_t m = as_size(p, "m");
                   return gauss_iid_bound(m, size_or(p, "n", m), pair_of(p));
                 }});

    k.push_back({{"order-stat-lq", "E l_q norm of the k largest of m Weibull(r) magnitudes", {"m", "k", "q", "r"}},
                 [](const CampaignConfig& c) -> PointEstimator {
                   return [c](const GridPoint& p, std::uint64_t seed) {
                     const std::size_t m = as_size(p, "m");
                     return estimate_order_stat_lq(DistributionSpec::weibull(p.at("r")), m, size_or(p, "k", m),
                                                   exponent_of(p, "q"), c.reps, seed, {c.threads});
                   };
                 },
                 [](const GridPoint& p) {
                   const std::size_t m = as_size(p, "m");
                   const auto forms = order_stat_lq_forms(m, size_or(p, "k", m), exponent_of(p, "q"), p.at("r"));
                   return wrap(forms.compact, "compact", "l_q norm of the top-k order statistics");
                 }});

    k.push_back({{"submatrix-exact", "E sup over k x l submatrices by exhaustive enumeration, Weibull(r)",
                  {"m", "k", "l", "p", "q", "r"}},
                 [](const CampaignConfig& c) -> PointEstimator {
                   return [c](const GridPoint& p, std::uint64_t seed) {
                     const std::size_t m = as_size(p, "m");
                     const std::size_t n = size_or(p, "n", m);
                     SubmatrixOptions opts;
                     opts.solver = c.solver;
                     return estimate_submatrix_sup(DistributionSpec::weibull(p.at("r")), m, n, size_or(p, "k", m),
                                                   size_or(p, "l", n), pair_of(p), SubmatrixMode::Exact, c.reps, seed,
                                                   opts, {c.threads});
                   };
                 },
                 [](const GridPoint& p) {
                   const std::size_t m = as_size(p, "m");
                   const std::size_t n = size_or(p, "n", m);
                   return submatrix_bound(m, n, size_or(p, "k", m), size_or(p, "l", n), pair_of(p), p.at("r"));
                 }});

    k.push_back({{"gauss-lrho", "E||(g_i)_{i<=k}||_rho against the Orlicz head-tail formula", {"k", "rho"}},
                 [](const CampaignConfig& c) -> PointEstimator {
                   return [c](const GridPoint& p, std::uint64_t seed) {
                     const std::size_t k = as_size(p, "k");
                     return estimate_order_stat_lq(DistributionSpec::gaussian(), k, k, exponent_of(p, "rho"), c.reps,
                                                   seed, {c.threads});
                   };
                 },
                 [](const GridPoint& p) {
                   const std::size_t k = as_size(p, "k");
                   return weighted_lrho_bound(WeightVector(std::vector<double>(k, 1.0)), exponent_of(p, "rho"), 2.0,
                                              true);
                 }});

    k.push_back({{"weibull-iid-identity", "the compact Weibull formula compared with itself (ratio 1)",
                  {"m", "p", "q", "r"}},
                 [](const CampaignConfig& c) -> PointEstimator {
                   return [c](const GridPoint& p, std::uint64_t seed) {
                     const std::size_t m = as_size(p, "m");
                     MCEstimate e;
                     e.mean = weibull_iid_bound(m, size_or(p, "n", m), pair_of(p), p.at("r")).value;
                     e.std_error = 0.0;
                     e.reps = c.reps;
                     e.batches = c.reps / kBatchSize;
                     e.seed = seed;
                     return e;
                   };
                 },
                 [](const GridPoint& p) {
                   const std::size_t m = as_size(p, "m");
                   return weibull_iid_bound(m, size_or(p, "n", m), pair_of(p), p.at("r"));
                 }});
    return k;
  }();
  return kinds;
}

const KindImpl& find_kind(const std::string& name) {
  for (const auto& k : registry())
    if (k.info.name == name) return k;
  std::string names;
  for (const auto& k : registry()) names += (names.empty() ? "" : ", ") + k.info.name;
  throw ConfigError("unknown campaign kind '" + name + "' (expected one of: " + names + ")");
}

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void check_reps(int reps) {
  if (reps < kBatchSize || reps % kBatchSize != 0) {
    throw ConfigError("reps must be a positive multiple of " + std::to_string(kBatchSize));
  }
}

}  // namespace

CampaignConfig parse_campaign_config(const std::string& toml_text) {
  toml::table tbl;
  try {
    tbl = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError(msg.str());
  }
  CampaignConfig c;
  c.name = required<std::string>(tbl, "name");
  c.kind = required<std::string>(tbl, "kind");
  const KindImpl& kind = find_kind(c.kind);
  c.reps = static_cast<int>(required<std::int64_t>(tbl, "reps"));
  check_reps(c.reps);
  if (auto s = tbl["seed"].value<std::int64_t>()) {
    c.seed = static_cast<std::uint64_t>(*s);
  } else if (auto str = tbl["seed"].value<std::string>()) {
    try {
      c.seed = std::stoull(*str);
    } catch (const std::exception&) {
      throw ConfigError("seed must be a decimal 64-bit unsigned integer");
    }
  } else {
    throw ConfigError("missing or mistyped key 'seed'");
  }
  c.threads = static_cast<int>(tbl["threads"].value_or<std::int64_t>(1));

  const toml::table* grid = tbl["grid"].as_table();
  if (!grid || grid->empty()) throw ConfigError("missing or empty [grid] table");
  for (auto&& [key, node] : *grid) {
    const std::string axis(key.str());
    const toml::array* arr = node.as_array();
    if (!arr) {
      c.axes.push_back({axis, {axis_value(node, axis)}});
      continue;
    }
    if (arr->empty()) throw ConfigError("grid axis '" + axis + "' is empty");
    std::vector<double> values;
    for (const auto& v : *arr) values.push_back(axis_value(v, axis));
    c.axes.push_back({axis, std::move(values)});
  }
  for (const auto& axis : kind.info.required_axes) {
    bool have = false;
    for (const auto& a : c.axes) have |= a.first == axis;
    if (!have) throw ConfigError("campaign kind '" + c.kind + "' needs grid axis '" + axis + "'");
  }

  const toml::table* band = tbl["band"].as_table();
  if (!band) throw ConfigError("missing [band] table");
  c.band.low = required<double>(*band, "low");
  c.band.high = required<double>(*band, "high");
  if (!(c.band.low <= c.band.high)) throw ConfigError("band.low must not exceed band.high");
  c.max_spread = (*band)["max_spread"].value_or(0.0);

  if (const toml::table* out = tbl["output"].as_table()) {
    c.csv_path = (*out)["csv"].value_or(std::string());
    c.json_path = (*out)["json"].value_or(std::string());
  }
  if (const toml::table* s = tbl["solver"].as_table()) {
    c.solver.max_starts = static_cast<int>((*s)["max_starts"].value_or<std::int64_t>(c.solver.max_starts));
    c.solver.max_iters = static_cast<int>((*s)["max_iters"].value_or<std::int64_t>(c.solver.max_iters));
    c.solver.tol = (*s)["tol"].value_or(c.solver.tol);
    c.solver.enum_limit =
        static_cast<std::size_t>((*s)["enum_limit"].value_or<std::int64_t>(static_cast<std::int64_t>(c.solver.enum_limit)));
    c.solver.sign_restarts = static_cast<int>((*s)["sign_restarts"].value_or<std::int64_t>(c.solver.sign_restarts));
  }
  return c;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open campaign config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_campaign_config(buf.str());
}

const std::vector<CampaignKind>& campaign_kinds() {
  static const std::vector<CampaignKind> kinds = [] {
    std::vector<CampaignKind> out;
    for (const auto& k : registry()) out.push_back(k.info);
    return out;
  }();
  return kinds;
}

CampaignReport run_campaign(const CampaignConfig& config, std::optional<int> reps_override) {
  CampaignConfig effective = config;
  if (reps_override) effective.reps = *reps_override;
  check_reps(effective.reps);
  const KindImpl& kind = find_kind(effective.kind);
  CampaignReport report;
  report.config = effective;
  std::vector<GridPoint> grid = expand_grid(effective.axes);
  for (auto& point : grid) {
    auto full = [&](const char* key, const char* dim) {
      auto it = point.find(key);
      auto d = point.find(dim);
      if (it != point.end() && it->second == kFullDimension && d != point.end()) it->second = d->second;
    };
    full("k", "m");
    full("l", point.count("n") ? "n" : "m");
  }
  report.records = ratio_campaign(grid, kind.estimator(effective), kind.formula, effective.seed);
  report.summary = summarize(report.records);
  report.pass = report.summary.failed_points == 0;
  for (const auto& r : report.records) {
    const bool ok = r.error.empty() && r.ratio >= effective.band.low && r.ratio <= effective.band.high;
    report.in_band.push_back(ok);
    report.pass = report.pass && ok;
  }
  if (effective.max_spread > 0.0 && !(report.summary.spread <= effective.max_spread)) report.pass = false;
  return report;
}

std::string campaign_csv(const CampaignReport& report) {
  std::ostringstream out;
  out << kCampaignCsvHeader << '\n';
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    out << report.config.name << ',' << i << ",\"" << canonical_key(r.grid_point) << "\"," << number(r.empirical.mean)
        << ',' << number(r.empirical.std_error) << ',' << r.empirical.reps << ',' << number(r.formula.value) << ",\""
        << (r.error.empty() ? r.formula.case_label : "error: " + r.error) << "\"," << number(r.ratio) << ','
        << (report.in_band[i] ? "true" : "false") << '\n';
  }
  return out.str();
}

nlohmann::json campaign_summary(const CampaignReport& report) {
  return {{"campaign", report.config.name},
          {"kind", report.config.kind},
          {"points", report.records.size()},
          {"failed_points", report.summary.failed_points},
          {"reps", report.config.reps},
          {"seed", report.config.seed},
          {"band", {{"low", report.config.band.low}, {"high", report.config.band.high}}},
          {"max_spread", json_number(report.config.max_spread)},
          {"min_ratio", json_number(report.summary.min_ratio)},
          {"max_ratio", json_number(report.summary.max_ratio)},
          {"spread", json_number(report.summary.spread)},
          {"pass", report.pass}};
}

void write_campaign_outputs(const CampaignReport& report, const std::string& out_dir) {
  auto resolve = [&](const std::string& path) {
    std::filesystem::path p(path);
    if (!out_dir.empty() && p.is_relative()) p = std::filesystem::path(out_dir) / p;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    return p;
  };
  if (!report.config.csv_path.empty()) {
    std::ofstream out(resolve(report.config.csv_path));
    if (!out) throw std::runtime_error("cannot write " + report.config.csv_path);
    out << campaign_csv(report);
  }
  if (!report.config.json_path.empty()) {
    std::ofstream out(resolve(report.config.json_path));
    if (!out) throw std::runtime_error("cannot write " + report.config.json_path);
    out << campaign_summary(report).dump(2) << '\n';
  }
}

Band suggest_band(const CampaignSummary& summary, double factor) {
  auto round_down = [](double x) { return std::floor(x * 100.0) / 100.0; };
  auto round_up = [](double x) { return std::ceil(x * 100.0) / 100.0; };
  return {round_down(summary.min_ratio / factor), round_up(summary.max_ratio * factor)};
}

}  // namespace matnorm
