#include "matnorm/distributions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace matnorm {

namespace {

void check_shape(double r) {
  if (!(r >= 1.0 && r <= 2.0)) {
    std::ostringstream msg;
    msg << "Weibull shape r must lie in [1, 2], got " << r;
    throw std::domain_error(msg.str());
  }
}

void check_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error(std::string(what) + " must be positive and finite");
}

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

DistributionSpec DistributionSpec::weibull(double r) {
  check_shape(r);
  DistributionSpec s;
  s.kind_ = DistKind::WeibullSym;
  s.shape_ = r;
  return s;
}

DistributionSpec DistributionSpec::gaussian(double std_dev) {
  check_positive(std_dev, "Gaussian std");
  DistributionSpec s;
  s.kind_ = DistKind::Gaussian;
  s.scale_ = std_dev;
  return s;
}

DistributionSpec DistributionSpec::rademacher(double scale) {
  check_positive(scale, "Rademacher scale");
  DistributionSpec s;
  s.kind_ = DistKind::RademacherScaled;
  s.scale_ = scale;
  return s;
}

DistributionSpec DistributionSpec::psi_r(double r, double sigma) {
  check_shape(r);
  check_positive(sigma, "psi_r sigma");
  DistributionSpec s;
  s.kind_ = DistKind::PsiRExample;
  s.shape_ = r;
  s.scale_ = sigma;
  return s;
}

DistributionSpec DistributionSpec::log_concave(LogConcaveKind sub_kind) {
  DistributionSpec s;
  s.kind_ = DistKind::LogConcaveUncProduct;
  s.lc_kind_ = sub_kind;
  return s;
}

double weibull_from_uniform(double r, double u, double sign) {
  const double e = -std::log(u);
  const double mag = r == 1.0 ? e : (r == 2.0 ? std::sqrt(e) : std::pow(e, 1.0 / r));
  return sign * mag;
}

double DistributionSpec::draw(CounterRng& rng) const {
  switch (kind_) {
    case DistKind::WeibullSym: {
      const double u = rng.uniform();
      return weibull_from_uniform(shape_, u, rng.sign());
    }
    case DistKind::PsiRExample: {
      const double u = rng.uniform();
      return scale_ * weibull_from_uniform(shape_, u, rng.sign());
    }
    case DistKind::Gaussian:
      return scale_ * rng.normal();
    case DistKind::RademacherScaled:
      return scale_ * rng.sign();
    case DistKind::LogConcaveUncProduct:
      if (lc_kind_ == LogConcaveKind::UniformSym) return kSqrt3 * (2.0 * rng.uniform() - 1.0);
      {
        const double u = rng.uniform();
        return weibull_from_uniform(1.0, u, rng.sign()) / std::numbers::sqrt2;
      }
  }
  return 0.0;
}

double DistributionSpec::abs_moment(double rho) const {
  if (!(rho > 0.0)) throw std::domain_error("abs_moment: rho must be positive");
  switch (kind_) {
    case DistKind::WeibullSym:
      return std::tgamma(rho / shape_ + 1.0);
    case DistKind::PsiRExample:
      return std::pow(scale_, rho) * std::tgamma(rho / shape_ + 1.0);
    case DistKind::Gaussian:
      return std::pow(scale_, rho) * std::pow(2.0, rho / 2.0) * std::tgamma((rho + 1.0) / 2.0) /
             std::sqrt(std::numbers::pi);
    case DistKind::RademacherScaled:
      return std::pow(scale_, rho);
    case DistKind::LogConcaveUncProduct:
      if (lc_kind_ == LogConcaveKind::UniformSym) return std::pow(kSqrt3, rho) / (rho + 1.0);
      return std::tgamma(rho + 1.0) / std::pow(2.0, rho / 2.0);
  }
  return 0.0;
}

double DistributionSpec::tail_prob(double t) const {
  if (!(t >= 0.0)) throw std::invalid_argument("tail_prob: t must be >= 0");
  switch (kind_) {
    case DistKind::WeibullSym:
      return std::exp(-std::pow(t, shape_));
    case DistKind::PsiRExample:
      return std::exp(-std::pow(t / scale_, shape_));
    case DistKind::Gaussian:
      return std::erfc(t / (scale_ * std::numbers::sqrt2));
    case DistKind::RademacherScaled:
      return t <= scale_ ? 1.0 : 0.0;
    case DistKind::LogConcaveUncProduct:
      if (lc_kind_ == LogConcaveKind::UniformSym) return std::max(0.0, 1.0 - t / kSqrt3);
      return std::exp(-std::numbers::sqrt2 * t);
  }
  throw std::invalid_argument("tail_prob: no closed form for this law");
}

std::string DistributionSpec::name() const {
  std::ostringstream out;
  switch (kind_) {
    case DistKind::WeibullSym: out << "weibull(r=" << shape_ << ")"; break;
    case DistKind::PsiRExample: out << "psi-r(r=" << shape_ << ",sigma=" << scale_ << ")"; break;
    case DistKind::Gaussian: out << "gaussian(std=" << scale_ << ")"; break;
    case DistKind::RademacherScaled: out << "rademacher(scale=" << scale_ << ")"; break;
    case DistKind::LogConcaveUncProduct:
      out << (lc_kind_ == LogConcaveKind::UniformSym ? "logconcave(uniform)" : "logconcave(exp)");
      break;
  }
  return out.str();
}

double weibull_moment(double r, double rho) {
  check_shape(r);
  if (!std::isfinite(rho)) throw std::domain_error("weibull_moment: rho must be finite");
  if (!(rho >= 1.0)) throw std::domain_error("weibull_moment: rho must be >= 1");
  return std::pow(std::tgamma(rho / r + 1.0), 1.0 / rho);
}

double tail_prob(const DistributionSpec& spec, double t) { return spec.tail_prob(t); }

void fill_sample(const DistributionSpec& spec, CounterRng& rng, std::span<double> out) {
  for (double& x : out) x = spec.draw(rng);
}

void fill_sample(const DistributionSpec& spec, CounterRng& rng, Matrix& out) { fill_sample(spec, rng, out.data()); }

SampleMatrix sample_matrix(const DistributionSpec& spec, std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw std::invalid_argument("sample_matrix: m and n must be >= 1");
  SampleMatrix s{m, n, Matrix(m, n), seed, spec};
  CounterRng rng(seed, 0);
  fill_sample(spec, rng, s.entries);
  return s;
}

nlohmann::json to_json(const DistributionSpec& spec) {
  nlohmann::json j;
  switch (spec.kind()) {
    case DistKind::WeibullSym:
      j["kind"] = "weibull";
      j["params"] = {{"r", spec.shape()}};
      break;
    case DistKind::PsiRExample:
      j["kind"] = "psi-r";
      j["params"] = {{"r", spec.shape()}, {"sigma", spec.scale()}};
      break;
    case DistKind::Gaussian:
      j["kind"] = "gaussian";
      j["params"] = {{"std", spec.scale()}};
      break;
    case DistKind::RademacherScaled:
      j["kind"] = "rademacher";
      j["params"] = {{"scale", spec.scale()}};
      break;
    case DistKind::LogConcaveUncProduct:
      j["kind"] = "logconcave";
      j["params"] = {{"sub", spec.log_concave_kind() == LogConcaveKind::UniformSym ? "uniform" : "exp"}};
      break;
  }
  return j;
}

DistributionSpec distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("distribution: missing \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  auto num = [&](const char* key, double fallback) {
    return params.contains(key) ? params.at(key).get<double>() : fallback;
  };
  auto required = [&](const char* key) {
    if (!params.contains(key)) throw std::invalid_argument("distribution '" + kind + "': missing param " + key);
    return params.at(key).get<double>();
  };
  if (kind == "weibull") return DistributionSpec::weibull(required("r"));
  if (kind == "gaussian") return DistributionSpec::gaussian(num("std", 1.0));
  if (kind == "rademacher") return DistributionSpec::rademacher(num("scale", 1.0));
  if (kind == "psi-r") return DistributionSpec::psi_r(required("r"), required("sigma"));
  if (kind == "logconcave") {
    const std::string sub = params.value("sub", std::string("uniform"));
    if (sub == "uniform") return DistributionSpec::log_concave(LogConcaveKind::UniformSym);
    if (sub == "exp") return DistributionSpec::log_concave(LogConcaveKind::ExpNormalized);
    throw std::invalid_argument("distribution 'logconcave': sub must be 'uniform' or 'exp'");
  }
  throw std::invalid_argument("unknown distribution kind '" + kind +
                              "' (expected weibull, gaussian, rademacher, psi-r, logconcave)");
}

}  // namespace matnorm
