#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>

#include "matnorm/order_stats.hpp"

using namespace matnorm;

namespace {

// E|X|^q 1{|X|^q > t} = Gamma(q/r + 1, t^{r/q}), the upper incomplete gamma.
double truncated_moment_oracle(double q, double r, double t) {
  return boost::math::tgamma(q / r + 1.0, std::pow(t, r / q));
}

double threshold_oracle(double m, double k, double q, double r) {
  double lo = 0.0, hi = 1.0;
  while (truncated_moment_oracle(q, r, hi) > hi * k / m) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (truncated_moment_oracle(q, r, mid) > mid * k / m ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("q-moment order statistic bound") {
  CHECK(order_stat_qmoment_bound(1, 1, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(order_stat_qmoment_bound(1024, 4, 2.0, 1.0) == doctest::Approx(2.0 * std::log(256.0)));
  for (std::size_t m : {1u, 10u, 300u})
    for (double q : {1.0, 2.5, 6.0})
      for (double r : {1.0, 2.0})
        CHECK(order_stat_qmoment_bound(m, m, q, r) ==
              doctest::Approx(std::pow(static_cast<double>(m), 1.0 / q) * std::pow(q, 1.0 / r)));
  CHECK_THROWS(order_stat_qmoment_bound(4, 5, 1.0, 1.0));
  CHECK_THROWS(order_stat_qmoment_bound(4, 0, 1.0, 1.0));
}

TEST_CASE("truncated moments agree with the incomplete gamma function") {
  for (double q : {1.0, 2.0, 3.5, 8.0})
    for (double r : {1.0, 1.5, 2.0})
      for (double t : {0.0, 0.1, 1.0, 5.0, 40.0}) {
        CHECK(weibull_truncated_moment(q, r, t) == doctest::Approx(truncated_moment_oracle(q, r, t)).epsilon(1e-9));
      }
  // r = q = 1: (1 + t) e^{-t}.
  for (double t : {0.0, 0.5, 3.0}) CHECK(weibull_truncated_moment(1, 1, t) == doctest::Approx((1 + t) * std::exp(-t)));
}

TEST_CASE("order statistic threshold") {
  // k = m, q = r = 1: (1 + t) e^{-t} = t.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((1 + mid) * std::exp(-mid) > mid ? lo : hi) = mid;
  }
  CHECK(order_stat_threshold(5, 5, 1.0, 1.0) == doctest::Approx(hi).epsilon(1e-8));
  for (std::size_t m : {16u, 256u, 4096u})
    for (std::size_t k : {1u, 4u, 16u})
      for (double q : {1.0, 2.0, 8.0})
        for (double r : {1.0, 2.0}) {
          const double t = order_stat_threshold(m, k, q, r);
          CHECK(t == doctest::Approx(threshold_oracle(m, k, q, r)).epsilon(1e-7));
          // t^{1/q} is of the order (Log(m/k) v q)^{1/r}.
          const double scale = std::pow(std::max(std::max(1.0, std::log(double(m) / k)), q), 1.0 / r);
          CHECK(std::pow(t, 1.0 / q) >= scale / 4.0);
          CHECK(std::pow(t, 1.0 / q) <= scale * 4.0);
        }
  double last = 0.0;
  for (std::size_t m = 2; m <= 1u << 16; m *= 4) {
    const double t = order_stat_threshold(m, 1, 1.0, 1.0);
    CHECK(t > last);
    CHECK(t / std::log(static_cast<double>(m)) == doctest::Approx(1.0).epsilon(0.6));
    last = t;
  }
}

TEST_CASE("l_q norm of the top order statistics") {
  CHECK(order_stat_lq_expect_bound(1, 1, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(order_stat_lq_expect_bound(1024, 4, 2.0, 1.0) == doctest::Approx(2.0 * std::log(256.0)));
  const auto forms = order_stat_lq_forms(1000, 3, 5.0, 1.5);
  CHECK(forms.branch == "q>=Log k");
  CHECK(forms.branched == doctest::Approx(std::pow(std::log(1000.0), 1.0 / 1.5)));
  CHECK(order_stat_lq_expect_bound(500, 20, Exponent::infinity(), 2.0) == doctest::Approx(std::sqrt(std::log(500.0))));
  for (std::size_t m : {1u, 8u, 100u, 5000u})
    for (std::size_t k : {1u, 2u, 7u, 64u, 5000u}) {
      if (k > m) continue;
      for (double q : {1.0, 1.5, 2.0, 4.0, 16.0})
        for (double r : {1.0, 1.5, 2.0}) CHECK_NOTHROW(order_stat_lq_forms(m, k, q, r));
    }
}

TEST_CASE("adaptive quadrature") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 1e-12, 1.0) == doctest::Approx(2.0).epsilon(1e-5));
}
