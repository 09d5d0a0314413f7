#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "matnorm/vector_calculus.hpp"

namespace matnorm {

/// k^{1/q} (Log(m/k) v q)^{1/r}, the order of (E sum_{i<=k} (X*_i)^q)^{1/q}.
double order_stat_qmoment_bound(std::size_t m, std::size_t k, double q, double r);

/// E|X|^q 1{|X|^q > t} for X symmetric Weibull(r), by adaptive quadrature.
double weibull_truncated_moment(double q, double r, double t);

/// t* = inf{t : E|X|^q 1{|X|^q > t} <= t k / m}, by bisection to relative 1e-8.
double order_stat_threshold(std::size_t m, std::size_t k, double q, double r);

struct OrderStatForms {
  double compact;
  double branched;
  std::string branch;  // "q>=Log k" or "q<Log k"
};

/// Compact and two-branch forms of E(sum_{i<=k} (X*_i)^q)^{1/q}. Throws
/// std::logic_error if they differ by more than a factor 4.
OrderStatForms order_stat_lq_forms(std::size_t m, std::size_t k, const Exponent& q, double r);

/// k^{1/q} (Log(m/k) v (q ^ Log k))^{1/r}; q = inf gives (Log m)^{1/r}.
double order_stat_lq_expect_bound(std::size_t m, std::size_t k, const Exponent& q, double r);

/// Adaptive Gauss-Kronrod (7-15) quadrature of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12);

}  // namespace matnorm
