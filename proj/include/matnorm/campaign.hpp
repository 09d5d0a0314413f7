#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matnorm/mc.hpp"
#include "matnorm/opnorm.hpp"

namespace matnorm {

struct Band {
  double low = 0.0;
  double high = 0.0;
};

/// A verification campaign read from TOML:
///
///   name = "weibull-iid"
///   kind = "weibull-iid-opnorm"
///   reps = 2000
///   seed = 17
///   [grid]      # axis = [values]; "inf" is accepted, and k = "m" / l = "n"
///   [band]      # low, high, optional max_spread
///   [output]    # optional csv, json
///   [solver]    # optional SolverBudget overrides
struct CampaignConfig {
  std::string name;
  std::string kind;
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  int reps = 0;
  std::uint64_t seed = 0;
  Band band;
  /// 0 leaves the max/min spread unchecked.
  double max_spread = 0.0;
  std::string csv_path;
  std::string json_path;
  SolverBudget solver;
  int threads = 1;
};

/// Errors in a campaign file. Message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CampaignConfig parse_campaign_config(const std::string& toml_text);
CampaignConfig load_campaign_config(const std::string& path);

/// Estimator and formula pair behind a campaign kind.
struct CampaignKind {
  std::string name;
  std::string description;
  std::vector<std::string> required_axes;
};

const std::vector<CampaignKind>& campaign_kinds();

struct CampaignReport {
  CampaignConfig config;
  std::vector<RatioRecord> records;
  std::vector<bool> in_band;
  CampaignSummary summary;
  bool pass = false;
};

/// Runs every grid point. `reps_override` replaces config.reps (pilot runs).
CampaignReport run_campaign(const CampaignConfig& config, std::optional<int> reps_override = std::nullopt);

/// Fixed header: campaign,point_index,params,empirical_mean,empirical_stderr,reps,
/// formula_value,formula_case,ratio,in_band.
std::string campaign_csv(const CampaignReport& report);
inline constexpr const char* kCampaignCsvHeader =
    "campaign,point_index,params,empirical_mean,empirical_stderr,reps,formula_value,formula_case,ratio,in_band";

/// {campaign, min_ratio, max_ratio, spread, pass, ...}.
nlohmann::json campaign_summary(const CampaignReport& report);

/// Writes the CSV and JSON outputs named in the config; paths are resolved
/// against `out_dir` when it is nonempty.
void write_campaign_outputs(const CampaignReport& report, const std::string& out_dir = "");

/// A band that contains the observed ratios with a safety factor.
Band suggest_band(const CampaignSummary& summary, double factor = 1.5);

}  // namespace matnorm
