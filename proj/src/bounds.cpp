#include "matnorm/bounds.hpp"

#include "matnorm/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace matnorm {

double BoundValue::term(const std::string& name) const {
  for (const auto& [key, v] : terms) {
    if (key == name) return v;
  }
  throw std::out_of_range("BoundValue: no term named '" + name + "'");
}

nlohmann::json to_json(const BoundValue& b) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [key, v] : b.terms) terms[key] = v;
  return {{"value", b.value}, {"case", b.case_label}, {"terms", terms}, {"anchor", b.anchor}};
}

TensorWeights::TensorWeights(std::vector<double> a_in, std::vector<double> b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.empty() || b.empty()) throw std::invalid_argument("TensorWeights: a and b must be nonempty");
}

TensorWeights TensorWeights::scaled(double ca, double cb) const {
  TensorWeights w = *this;
  w.a = a.scaled(ca);
  w.b = b.scaled(cb);
  return w;
}

Matrix TensorWeights::profile() const {
  Matrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = a.values()[i] * b.values()[j];
  return out;
}

namespace {

void check_shape(double r) {
  if (!(r >= 1.0 && r <= 2.0)) {
    std::ostringstream msg;
    msg << "shape r must lie in [1, 2], got " << r;
    throw std::domain_error(msg.str());
  }
}

void check_dims(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw std::domain_error("dimensions m, n must be >= 1");
}

double dim(std::size_t x) { return static_cast<double>(x); }

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

BoundValue make(std::string label, std::vector<std::pair<std::string, double>> terms, std::string anchor) {
  BoundValue b;
  b.case_label = std::move(label);
  b.terms = std::move(terms);
  b.anchor = std::move(anchor);
  b.value = 0.0;
  for (const auto& t : b.terms) b.value += t.second;
  return b;
}

Exponent min_exponent(const Exponent& a, const Exponent& b) { return a <= b ? a : b; }

// ||c||_{e q*/(q*-e)} for e in {2, r*}, the exponent of sup_{B_{q*}} ||(c_i s_i)||_e
// when e < q*. An infinite q* gives e.
Exponent ratio_exponent(const Exponent& big, const Exponent& e) {
  if (big.is_infinite()) return e;
  if (e.is_infinite()) throw std::logic_error("ratio_exponent: inner exponent must be finite");
  const double x = big.value();
  const double y = e.value();
  if (!(x > y)) throw std::logic_error("ratio_exponent: need big > e");
  return Exponent(x * y / (x - y));
}

// ||c*_{i<=e^rho}||_{phi_s} + rho^{1/s} ||c*_{i>e^rho}||_rho.
std::pair<double, double> head_tail(const WeightVector& c, const Exponent& rho, double s) {
  const std::size_t h = head_count(rho, c.size());
  const double head = orlicz_phi_norm(c.head(h), s);
  double tail = 0.0;
  if (h < c.size()) {
    tail = std::pow(rho.value(), 1.0 / s) * lp_norm(c.tail(h), rho);
  }
  return {head, tail};
}

double head_tail_sum(const WeightVector& c, const Exponent& rho, double s) {
  const auto [h, t] = head_tail(c, rho, s);
  return h + t;
}

// Log(n/l) v (p* ^ Log l); equals p* ^ Log n when l = n.
double order_log(std::size_t n, std::size_t l, const Exponent& p_star) {
  return std::max(log_plus(dim(n) / dim(l)), p_star.min_with(log_plus(dim(l))));
}

BoundValue four_term(std::size_t m, std::size_t n, std::size_t k, std::size_t l, const NormPair& pair, double r,
                     std::string label, std::string anchor) {
  const double inv_q = pair.q.reciprocal();
  const double inv_ps = pair.p_star.reciprocal();
  const double ln = order_log(n, l, pair.p_star);
  const double lm = order_log(m, k, pair.q);
  const double kk = dim(k);
  const double ll = dim(l);
  const double t1 = std::pow(ln, 1.0 / r) * std::pow(kk, positive_part(inv_q - 1.0 / r)) * std::pow(ll, inv_ps);
  const double t2 = std::sqrt(ln) * std::pow(kk, positive_part(inv_q - 0.5)) * std::pow(ll, inv_ps);
  const double t3 = std::pow(lm, 1.0 / r) * std::pow(ll, positive_part(inv_ps - 1.0 / r)) * std::pow(kk, inv_q);
  const double t4 = std::sqrt(lm) * std::pow(ll, positive_part(inv_ps - 0.5)) * std::pow(kk, inv_q);
  BoundValue b;
  b.case_label = std::move(label);
  b.anchor = std::move(anchor);
  b.terms = {{"T1", t1}, {"T2", t2}, {"T3", t3}, {"T4", t4}};
  // Grouped so that swapping (m, n, p, q) -> (n, m, q*, p*) only reorders the sum.
  b.value = (t1 + t2) + (t3 + t4);
  return b;
}

}  // namespace

BoundValue chevet_gaussian_rhs(const ChevetInputs& in) {
  return make("gaussian",
              {{"sup_s_l2*esup_T_gauss", in.sup_s_l2 * in.esup_T_gauss},
               {"sup_t_l2*esup_S_gauss", in.sup_t_l2 * in.esup_S_gauss}},
              "Gaussian Chevet inequality");
}

BoundValue chevet_weibull_rhs(const ChevetInputs& in, double r) {
  check_shape(r);
  return make("weibull",
              {{"sup_s_lrstar*esup_T_weib", in.sup_s_lrstar * in.esup_T_weib},
               {"sup_s_l2*esup_T_gauss", in.sup_s_l2 * in.esup_T_gauss},
               {"sup_t_lrstar*esup_S_weib", in.sup_t_lrstar * in.esup_S_weib},
               {"sup_t_l2*esup_S_gauss", in.sup_t_l2 * in.esup_S_gauss}},
              "Weibull Chevet inequality, four-term form");
}

BoundValue gauss_iid_cases(std::size_t m, std::size_t n, const NormPair& pair) {
  check_dims(m, n);
  const double M = dim(m);
  const double N = dim(n);
  const double iq = pair.q.reciprocal();
  const double ips = pair.p_star.reciprocal();
  const double gn = std::sqrt(pair.p_star.min_with(log_plus(N)));
  const double gm = std::sqrt(pair.q.min_with(log_plus(M)));
  const std::string anchor = "Gaussian iid operator norm, four-case table";
  const std::string label = to_string(pair.regime);
  switch (pair.regime) {
    case Regime::BothLE2:
      return make(label, {{"term1", std::pow(M, iq - 0.5) * std::pow(N, ips)}, {"term2", std::pow(N, ips - 0.5) * std::pow(M, iq)}},
                  anchor);
    case Regime::PstarBig:
      return make(label, {{"term1", gn * std::pow(N, ips) * std::pow(M, iq - 0.5)}, {"term2", std::pow(M, iq)}}, anchor);
    case Regime::QBig:
      return make(label, {{"term1", std::pow(N, ips)}, {"term2", gm * std::pow(M, iq) * std::pow(N, ips - 0.5)}}, anchor);
    case Regime::BothGE2:
      return make(label, {{"term1", gn * std::pow(N, ips)}, {"term2", gm * std::pow(M, iq)}}, anchor);
  }
  throw std::logic_error("gauss_iid_cases: unknown regime");
}

BoundValue gauss_iid_bound(std::size_t m, std::size_t n, const NormPair& pair) {
  check_dims(m, n);
  const double M = dim(m);
  const double N = dim(n);
  const double iq = pair.q.reciprocal();
  const double ips = pair.p_star.reciprocal();
  const double t1 = std::sqrt(pair.p_star.min_with(log_plus(N))) * std::pow(M, positive_part(iq - 0.5)) * std::pow(N, ips);
  const double t2 = std::sqrt(pair.q.min_with(log_plus(M))) * std::pow(N, positive_part(ips - 0.5)) * std::pow(M, iq);
  BoundValue b = make("compact", {{"T1", t1}, {"T2", t2}}, "Gaussian iid operator norm, compact form");
  const double table = gauss_iid_cases(m, n, pair).value;
  if (b.value > 4.0 * table || table > 4.0 * b.value) {
    throw std::logic_error("gauss_iid_bound: compact and case forms differ by more than a factor 4");
  }
  return b;
}

BoundValue bounded_entry_bound(std::size_t m, std::size_t n, const NormPair& pair) {
  check_dims(m, n);
  const double M = dim(m);
  const double N = dim(n);
  const double iq = pair.q.reciprocal();
  const double ips = pair.p_star.reciprocal();
  const std::string anchor = "bounded centered entries, four-case table";
  const std::string label = to_string(pair.regime);
  switch (pair.regime) {
    case Regime::BothLE2:
      return make(label, {{"term1", std::pow(M, iq - 0.5) * std::pow(N, ips)}, {"term2", std::pow(N, ips - 0.5) * std::pow(M, iq)}},
                  anchor);
    case Regime::PstarBig:
      return make(label, {{"term1", std::pow(M, iq - 0.5) * std::pow(N, ips)}, {"term2", std::pow(M, iq)}}, anchor);
    case Regime::QBig:
      return make(label, {{"term1", std::pow(N, ips)}, {"term2", std::pow(N, ips - 0.5) * std::pow(M, iq)}}, anchor);
    case Regime::BothGE2:
      return make(label, {{"term1", std::pow(N, ips)}, {"term2", std::pow(M, iq)}}, anchor);
  }
  throw std::logic_error("bounded_entry_bound: unknown regime");
}

BoundValue weibull_iid_bound(std::size_t m, std::size_t n, const NormPair& pair, double r) {
  check_shape(r);
  check_dims(m, n);
  return four_term(m, n, m, n, pair, r, "compact", "Weibull iid operator norm, compact four-term form");
}

BoundValue weibull_iid_cases(std::size_t m, std::size_t n, const NormPair& pair, double r) {
  check_shape(r);
  check_dims(m, n);
  const double M = dim(m);
  const double N = dim(n);
  const double iq = pair.q.reciprocal();
  const double ips = pair.p_star.reciprocal();
  const double ln = pair.p_star.min_with(log_plus(N));
  const double lm = pair.q.min_with(log_plus(M));
  const std::string anchor = "Weibull iid operator norm, four-case table";
  const std::string label = to_string(pair.regime);
  switch (pair.regime) {
    case Regime::BothLE2:
      return make(label, {{"term1", std::pow(M, iq - 0.5) * std::pow(N, ips)}, {"term2", std::pow(N, ips - 0.5) * std::pow(M, iq)}},
                  anchor);
    case Regime::PstarBig:
      return make(label,
                  {{"term1", std::pow(ln, 1.0 / r) * std::pow(N, ips) * std::pow(M, positive_part(iq - 1.0 / r))},
                   {"term2", std::sqrt(ln) * std::pow(N, ips) * std::pow(M, iq - 0.5)},
                   {"term3", std::pow(M, iq)}},
                  anchor);
    case Regime::QBig:
      return make(label,
                  {{"term1", std::pow(N, ips)},
                   {"term2", std::pow(lm, 1.0 / r) * std::pow(M, iq) * std::pow(N, positive_part(ips - 1.0 / r))},
                   {"term3", std::sqrt(lm) * std::pow(M, iq) * std::pow(N, ips - 0.5)}},
                  anchor);
    case Regime::BothGE2:
      return make(label, {{"term1", std::pow(ln, 1.0 / r) * std::pow(N, ips)}, {"term2", std::pow(lm, 1.0 / r) * std::pow(M, iq)}},
                  anchor);
  }
  throw std::logic_error("weibull_iid_cases: unknown regime");
}

BoundValue weibull_iid_square(std::size_t n, const NormPair& pair, double r) {
  check_shape(r);
  check_dims(n, n);
  const double N = dim(n);
  const std::string anchor = "Weibull iid operator norm, square case";
  if (pair.regime == Regime::BothLE2) {
    return make("square p*,q<=2", {{"power", std::pow(N, pair.q.reciprocal() + pair.p_star.reciprocal() - 0.5)}}, anchor);
  }
  const Exponent low = min_exponent(pair.p_star, pair.q);
  return make("square p*vq>=2",
              {{"power", std::pow(low.min_with(log_plus(N)), 1.0 / r) * std::pow(N, low.reciprocal())}}, anchor);
}

BoundValue weibull_iid_moment_form(std::size_t m, std::size_t n, const NormPair& pair, double r) {
  check_shape(r);
  check_dims(m, n);
  const double M = dim(m);
  const double N = dim(n);
  const double rows = std::pow(M, pair.q.reciprocal()) * sup_ball_moment(pair.p, pair.q.min_with(log_plus(M)), r, n);
  const double cols =
      std::pow(N, pair.p_star.reciprocal()) * sup_ball_moment(pair.q_star, pair.p_star.min_with(log_plus(N)), r, m);
  return make("moment", {{"row_moment", rows}, {"column_moment", cols}}, "Weibull iid operator norm, moment form");
}

BoundValue weibull_iid_moment_square(std::size_t n, const NormPair& pair, double r) {
  check_shape(r);
  check_dims(n, n);
  const double N = dim(n);
  const std::string anchor = "Weibull iid operator norm, square moment form";
  if (pair.regime == Regime::BothLE2) {
    return make("square p*,q<=2",
                {{"moment", std::pow(N, pair.q.reciprocal() + pair.p_star.reciprocal() - 0.5) * weibull_moment(r, 2.0)}},
                anchor);
  }
  const Exponent low = min_exponent(pair.p_star, pair.q);
  return make("square p*vq>=2",
              {{"moment", std::pow(N, low.reciprocal()) * weibull_moment(r, low.min_with(log_plus(N)))}}, anchor);
}

BoundValue gauss_tensor_bound(const TensorWeights& w, const NormPair& pair) {
  const Exponent two(2.0);
  const Exponent inf = Exponent::infinity();
  const bool ps_small = pair.p_star < two;
  const bool q_small = pair.q < two;
  const std::string anchor = "Gaussian tensor-weighted operator norm";
  const auto& a = w.a;
  const auto& b = w.b;
  if (ps_small && q_small) {
    return make("p*,q<2",
                {{"a_2q*/(q*-2)*b_p*", lp_norm(a, ratio_exponent(pair.q_star, two)) * lp_norm(b, pair.p_star)},
                 {"a_q*b_2p/(p-2)", lp_norm(a, pair.q) * lp_norm(b, ratio_exponent(pair.p, two))}},
                anchor);
  }
  if (q_small) {
    return make("q<2<=p*",
                {{"a_2q*/(q*-2)*H2(b)", lp_norm(a, ratio_exponent(pair.q_star, two)) * head_tail_sum(b, pair.p_star, 2.0)},
                 {"a_q*b_inf", lp_norm(a, pair.q) * lp_norm(b, inf)}},
                anchor);
  }
  if (ps_small) {
    return make("p*<2<=q",
                {{"a_inf*b_p*", lp_norm(a, inf) * lp_norm(b, pair.p_star)},
                 {"H2(a)*b_2p/(p-2)", head_tail_sum(a, pair.q, 2.0) * lp_norm(b, ratio_exponent(pair.p, two))}},
                anchor);
  }
  return make("2<=p*,q",
              {{"a_inf*H2(b)", lp_norm(a, inf) * head_tail_sum(b, pair.p_star, 2.0)},
               {"H2(a)*b_inf", head_tail_sum(a, pair.q, 2.0) * lp_norm(b, inf)}},
              anchor);
}

BoundValue weibull_tensor_bound(const TensorWeights& w, const NormPair& pair, double r) {
  check_shape(r);
  const Exponent two(2.0);
  const Exponent inf = Exponent::infinity();
  const Exponent rr(r);
  const Exponent r_star = holder_conjugate(rr);
  const bool ps_small = pair.p_star < two;
  const bool q_small = pair.q < two;
  const std::string anchor = "Weibull tensor-weighted operator norm";
  const auto& a = w.a;
  const auto& b = w.b;

  if (ps_small && q_small) {
    return make("p*,q<2",
                {{"a_2q*/(q*-2)*b_p*", lp_norm(a, ratio_exponent(pair.q_star, two)) * lp_norm(b, pair.p_star)},
                 {"a_q*b_2p/(p-2)", lp_norm(a, pair.q) * lp_norm(b, ratio_exponent(pair.p, two))}},
                anchor);
  }
  if (q_small) {
    const double gauss = lp_norm(a, ratio_exponent(pair.q_star, two)) * head_tail_sum(b, pair.p_star, 2.0);
    const double corner = lp_norm(a, pair.q) * lp_norm(b, inf);
    if (pair.q < rr) {
      return make("q<r,2<=p*",
                  {{"a_2q*/(q*-2)*H2(b)", gauss},
                   {"a_r*q*/(q*-r*)*Hr(b)", lp_norm(a, ratio_exponent(pair.q_star, r_star)) * head_tail_sum(b, pair.p_star, r)},
                   {"a_q*b_inf", corner}},
                  anchor);
    }
    return make("r<=q<2<=p*",
                {{"a_2q*/(q*-2)*H2(b)", gauss},
                 {"a_inf*Hr(b)", lp_norm(a, inf) * head_tail_sum(b, pair.p_star, r)},
                 {"a_q*b_inf", corner}},
                anchor);
  }
  if (ps_small) {
    const double corner = lp_norm(a, inf) * lp_norm(b, pair.p_star);
    const double gauss = head_tail_sum(a, pair.q, 2.0) * lp_norm(b, ratio_exponent(pair.p, two));
    if (pair.p_star < rr) {
      return make("p*<r,2<=q",
                  {{"a_inf*b_p*", corner},
                   {"H2(a)*b_2p/(p-2)", gauss},
                   {"Hr(a)*b_r*p/(p-r*)", head_tail_sum(a, pair.q, r) * lp_norm(b, ratio_exponent(pair.p, r_star))}},
                  anchor);
    }
    return make("r<=p*<2<=q",
                {{"a_inf*b_p*", corner}, {"H2(a)*b_2p/(p-2)", gauss}, {"Hr(a)*b_inf", head_tail_sum(a, pair.q, r) * lp_norm(b, inf)}},
                anchor);
  }
  return make("2<=p*,q",
              {{"a_inf*Hr(b)", lp_norm(a, inf) * head_tail_sum(b, pair.p_star, r)},
               {"Hr(a)*b_inf", head_tail_sum(a, pair.q, r) * lp_norm(b, inf)}},
              anchor);
}

DTerms d_terms(const TensorWeights& w, const NormPair& pair, double r) {
  check_shape(r);
  const Exponent two(2.0);
  const Exponent inf = Exponent::infinity();
  const auto& a = w.a;
  const auto& b = w.b;
  DTerms d;
  d.d1 = lp_norm(a, pair.q) * (pair.p_star < two ? lp_norm(b, ratio_exponent(pair.p, two)) : lp_norm(b, inf));
  d.d2 = lp_norm(b, pair.p_star) * (pair.q < two ? lp_norm(a, ratio_exponent(pair.q_star, two)) : lp_norm(a, inf));

  // max_j ln^{1/s}(j+1) * c*_j * scale
  auto log_weighted_max = [](const WeightVector& c, double scale, double s) {
    double best = 0.0;
    const auto sorted = c.sorted_abs();
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      best = std::max(best, std::pow(std::log(static_cast<double>(j + 2)), 1.0 / s) * sorted[j] * scale);
    }
    return best;
  };

  if (pair.p <= two && two <= pair.q) {
    d.d3_case = "p<=2<=q";
    const Matrix prof = w.profile();
    d.d3 = orlicz_phi_norm(prof.data(), 2.0);
    d.d3r = orlicz_phi_norm(prof.data(), r);
  } else if (pair.p <= pair.q && pair.q <= two) {
    d.d3_case = "p<=q<=2";
    // b_j = ||(a_i b_j)_i||_{2q/(2-q)}; here q < 2.
    const double q = pair.q.value();
    const double scale = lp_norm(a, Exponent(2.0 * q / (2.0 - q)));
    d.d3 = log_weighted_max(b, scale, 2.0);
    d.d3r = log_weighted_max(b, scale, r);
  } else if (two <= pair.p && pair.p <= pair.q) {
    d.d3_case = "2<=p<=q";
    // d_i = ||(a_i b_j)_j||_{2p/(p-2)}; here p > 2.
    const double scale = lp_norm(b, ratio_exponent(pair.p, two));
    d.d3 = log_weighted_max(a, scale, 2.0);
    d.d3r = log_weighted_max(a, scale, r);
  } else {
    d.d3_case = "q<p";
  }
  return d;
}

TwoSided tensor_product_twosided(const TensorWeights& w, const NormPair& pair, double r, double sigma, double gamma) {
  const DTerms d = d_terms(w, pair, r);
  const double q = pair.q.is_infinite() ? log_plus(dim(w.a.size())) : pair.q.value();
  const double ps = pair.p_star.is_infinite() ? log_plus(dim(w.b.size())) : pair.p_star.value();
  TwoSided out;
  out.lower = gamma * (d.d1 + d.d2);
  out.upper = sigma * (std::pow(q, 1.0 / r) * d.d1 + std::pow(ps, 1.0 / r) * d.d2);
  return out;
}

BoundValue weighted_lrho_bound(const WeightVector& c, const Exponent& rho, double r, bool gaussian) {
  check_shape(r);
  if (c.empty()) throw std::invalid_argument("weighted_lrho_bound: empty weight vector");
  const double s = gaussian ? 2.0 : r;
  const std::string anchor = gaussian ? "Gaussian weighted l_rho norm" : "Weibull weighted l_rho norm";
  if (rho.is_finite() && rho.value() <= 2.0) {
    return make("rho<=2 shortcut", {{"l_rho", lp_norm(c, rho)}}, anchor);
  }
  if (rho.is_infinite()) {
    return make("rho=inf", {{"head", orlicz_phi_norm(c, s)}}, anchor);
  }
  const auto [head, tail] = head_tail(c, rho, s);
  return make("head-tail", {{"head", head}, {"tail", tail}}, anchor);
}

BoundValue submatrix_bound(std::size_t m, std::size_t n, std::size_t k, std::size_t l, const NormPair& pair, double r) {
  check_shape(r);
  check_dims(m, n);
  if (k < 1 || k > m || l < 1 || l > n) throw std::domain_error("submatrix_bound: need 1 <= k <= m and 1 <= l <= n");
  return four_term(m, n, k, l, pair, r, "four-term", "supremum over k x l submatrices");
}

BoundValue submatrix_bound_log_concave(std::size_t m, std::size_t n, std::size_t k, std::size_t l,
                                       const NormPair& pair) {
  BoundValue b = submatrix_bound(m, n, k, l, pair, 1.0);
  b.case_label = "log-concave";
  b.anchor = "supremum over k x l submatrices, unconditional log-concave entries";
  return b;
}

BoundValue ghlp_bound(const Matrix& weights, const NormPair& pair) {
  if (!(pair.p <= Exponent(2.0) && Exponent(2.0) <= pair.q)) {
    throw std::domain_error("ghlp_bound: requires p <= 2 <= q");
  }
  if (weights.rows() == 0 || weights.cols() == 0) throw std::invalid_argument("ghlp_bound: empty weights");
  double col_max = 0.0;
  for (std::size_t j = 0; j < weights.cols(); ++j) col_max = std::max(col_max, lp_norm(weights.column(j), pair.q));
  double row_max = 0.0;
  for (std::size_t i = 0; i < weights.rows(); ++i) row_max = std::max(row_max, lp_norm(weights.row(i), pair.p_star));
  const double factor = std::pow(log_plus(dim(weights.rows())), pair.q.reciprocal());
  const double emax = orlicz_phi_norm(weights.data(), 2.0);
  return make("p<=2<=q",
              {{"max_col_q", col_max}, {"log_row_p*", factor * row_max}, {"log_emax", factor * emax}},
              "structured Gaussian matrices, p <= 2 <= q");
}

BoundValue ghlp_bound(const TensorWeights& w, const NormPair& pair) { return ghlp_bound(w.profile(), pair); }

}  // namespace matnorm
