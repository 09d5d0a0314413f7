#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matnorm/matrix.hpp"
#include "matnorm/vector_calculus.hpp"

namespace matnorm {

/// One evaluation of a closed-form bound. value is the sum of the terms.
struct BoundValue {
  double value = 0.0;
  std::string case_label;
  std::vector<std::pair<std::string, double>> terms;
  std::string anchor;

  double term(const std::string& name) const;
};

/// {"value", "case", "terms": {name: value}, "anchor"}.
nlohmann::json to_json(const BoundValue& b);

/// Variance profile a_i * b_j.
struct TensorWeights {
  WeightVector a;
  WeightVector b;

  TensorWeights(std::vector<double> a_in, std::vector<double> b_in);
  TensorWeights scaled(double ca, double cb) const;
  /// The m x n matrix (a_i b_j).
  Matrix profile() const;
};

struct ChevetInputs {
  double sup_s_l2 = 0.0;
  double sup_s_lrstar = 0.0;
  double sup_t_l2 = 0.0;
  double sup_t_lrstar = 0.0;
  double esup_S_gauss = 0.0;
  double esup_T_gauss = 0.0;
  double esup_S_weib = 0.0;
  double esup_T_weib = 0.0;
};

/// sup_S ||s||_2 E sup_T <g, t> + sup_T ||t||_2 E sup_S <g, s>.
BoundValue chevet_gaussian_rhs(const ChevetInputs& in);

/// Four-term right-hand side of the Weibull Chevet inequality.
BoundValue chevet_weibull_rhs(const ChevetInputs& in, double r);

/// E||G||_{p->q} for an m x n standard Gaussian matrix, compact form:
/// sqrt(p* ^ Log n) m^{(1/q-1/2)v0} n^{1/p*} + sqrt(q ^ Log m) n^{(1/p*-1/2)v0} m^{1/q}.
/// Throws std::logic_error if it strays more than a factor 4 from gauss_iid_cases.
BoundValue gauss_iid_bound(std::size_t m, std::size_t n, const NormPair& pair);

/// The four-case table of the Gaussian iid estimate, labelled by regime.
BoundValue gauss_iid_cases(std::size_t m, std::size_t n, const NormPair& pair);

/// Upper bound for bounded centered entries, four-case table.
BoundValue bounded_entry_bound(std::size_t m, std::size_t n, const NormPair& pair);

/// E||X||_{p->q} for iid symmetric Weibull(r), compact four-term form.
BoundValue weibull_iid_bound(std::size_t m, std::size_t n, const NormPair& pair, double r);

/// Four-case table of the same estimate.
BoundValue weibull_iid_cases(std::size_t m, std::size_t n, const NormPair& pair, double r);

/// Square simplification: n^{1/q+1/p*-1/2} when p*, q <= 2, else
/// (p* ^ q ^ Log n)^{1/r} n^{1/(p* ^ q)}.
BoundValue weibull_iid_square(std::size_t n, const NormPair& pair, double r);

/// m^{1/q} sup_{B_p} ||sum t_j X_j||_{q ^ Log m} + n^{1/p*} sup_{B_q*} ||sum s_i X_i||_{p* ^ Log n},
/// with the suprema replaced by sup_ball_moment.
BoundValue weibull_iid_moment_form(std::size_t m, std::size_t n, const NormPair& pair, double r);

/// Square moment form: n^{1/q+1/p*-1/2} ||X||_2 when p*, q <= 2, otherwise
/// n^{1/(p* ^ q)} ||X||_{p* ^ q ^ Log n}.
BoundValue weibull_iid_moment_square(std::size_t n, const NormPair& pair, double r);

/// E||(a_i b_j g_ij)||_{p->q}, four cases split at p* = 2 and q = 2 (the
/// boundary value goes to the side that uses the sup norm).
BoundValue gauss_tensor_bound(const TensorWeights& w, const NormPair& pair);

/// E||(a_i b_j X_ij)||_{p->q} for Weibull(r) entries, six cases.
BoundValue weibull_tensor_bound(const TensorWeights& w, const NormPair& pair, double r);

struct DTerms {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
  double d3r = 0.0;
  std::string d3_case;  // "p<=2<=q", "p<=q<=2", "2<=p<=q", "q<p"
};

/// D1, D2, D3 (Gaussian) and D3 with Weibull(r) logs, for a tensor profile.
DTerms d_terms(const TensorWeights& w, const NormPair& pair, double r);

struct TwoSided {
  double lower = 0.0;
  double upper = 0.0;
};

/// gamma (D1 + D2) and sigma (q^{1/r} D1 + (p*)^{1/r} D2). An infinite q or
/// p* is replaced by Log m or Log n.
TwoSided tensor_product_twosided(const TensorWeights& w, const NormPair& pair, double r, double sigma,
                                 double gamma);

/// E||(c_i X_i)||_rho for Weibull(r) (or Gaussian) X_i:
/// ||c*_{i<=e^rho}||_{phi_r} + rho^{1/r} ||c*_{i>e^rho}||_rho. For rho <= 2 this is
/// ||c||_rho and for rho = inf only the Orlicz term remains.
BoundValue weighted_lrho_bound(const WeightVector& c, const Exponent& rho, double r, bool gaussian);

/// sigma-free sum of the four submatrix terms,
/// k^{(1/q-1/r)v0} l^{1/p*} (Log(n/l) v (p* ^ Log l))^{1/r} + ... .
BoundValue submatrix_bound(std::size_t m, std::size_t n, std::size_t k, std::size_t l, const NormPair& pair,
                           double r);

/// Isotropic log-concave unconditional matrices: the r = 1 instance.
BoundValue submatrix_bound_log_concave(std::size_t m, std::size_t n, std::size_t k, std::size_t l,
                                       const NormPair& pair);

/// max_j ||A_{.j}||_q + (Log m)^{1/q} (max_i ||A_{i.}||_{p*} + ||A||_{phi_2}) for
/// p <= 2 <= q. Other exponents raise std::domain_error.
BoundValue ghlp_bound(const Matrix& weights, const NormPair& pair);
BoundValue ghlp_bound(const TensorWeights& w, const NormPair& pair);

}  // namespace matnorm
