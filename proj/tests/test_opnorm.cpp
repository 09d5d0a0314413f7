#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "matnorm/opnorm.hpp"
#include "test_support.hpp"

using namespace matnorm;
using testing_support::random_gaussian;

namespace {

const Exponent kInf = Exponent::infinity();

double eigen_spectral(const Matrix& a) {
  Eigen::MatrixXd e(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  return svd.singularValues()(0);
}

double bilinear(const Matrix& a, const std::vector<double>& s, const std::vector<double>& t) {
  return a.bilinear(s, t);
}

}  // namespace

TEST_CASE("opnorm examples") {
  const Matrix a{{1, 2}, {3, 4}};
  const auto id = opnorm(Matrix::identity(2), NormPair(2.0, 2.0));
  CHECK(id.value == doctest::Approx(1.0));
  CHECK(id.method == OpNormMethod::ExactSpectral);
  const auto col = opnorm(a, NormPair(1.0, 1.0));
  CHECK(col.value == 6.0);
  CHECK(col.method == OpNormMethod::ExactColumn);
  const auto sign = opnorm(a, NormPair(kInf, 1.0));
  CHECK(sign.value == 10.0);
  CHECK(sign.method == OpNormMethod::SignEnum);
  CHECK(opnorm(a, NormPair(2.0, kInf)).method == OpNormMethod::ExactRow);
  CHECK(opnorm(a, NormPair(2.0, 1.0)).method == OpNormMethod::Dualized);
  CHECK(opnorm(a, NormPair(1.5, 3.0)).method == OpNormMethod::PowerMethod);
}

TEST_CASE("opnorm input errors and the zero matrix") {
  CHECK_THROWS_AS(opnorm(Matrix(), NormPair(2.0, 2.0)), std::invalid_argument);
  Matrix bad(2, 2, 1.0);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(opnorm(bad, NormPair(2.0, 2.0)), std::invalid_argument);
  const auto zero = opnorm(Matrix(3, 2), NormPair(1.5, 3.0));
  CHECK(zero.value == 0.0);
  CHECK(zero.method == OpNormMethod::ExactColumn);
  CHECK(lp_norm(zero.witness_t, 1.5) == doctest::Approx(1.0));
}

TEST_CASE("spectral norm agrees with an SVD") {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + trial % 9;
    const std::size_t n = 1 + (trial * 7) % 11;
    const Matrix a = random_gaussian(m, n, gen);
    const double expected = eigen_spectral(a);
    CHECK(spectral_norm(a).value == doctest::Approx(expected).epsilon(1e-10));
    CHECK(testing_support::jacobi_spectral(a) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(opnorm_value(a, NormPair(2.0, 2.0)) == doctest::Approx(expected).epsilon(1e-10));
  }
  // Nearly repeated top singular values.
  const double d[] = {1.0, 1.0 - 1e-9, 0.5};
  CHECK(spectral_norm(Matrix::diagonal(d)).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("corner pairs match brute force on 5 x 5 matrices") {
  std::mt19937_64 gen(7);
  const double corners[] = {1.0, 2.0, std::numeric_limits<double>::infinity()};
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_gaussian(5, 5, gen);
    for (double p : corners)
      for (double q : corners) {
        const double expected = testing_support::corner_opnorm(a, p, q);
        CHECK(opnorm(a, NormPair(p, q)).value == doctest::Approx(expected).epsilon(1e-9));
        CHECK(opnorm_value(a, NormPair(p, q)) == doctest::Approx(expected).epsilon(1e-9));
      }
  }
}

TEST_CASE("witnesses are feasible and attain the value") {
  std::mt19937_64 gen(13);
  const std::vector<Exponent> exps{1.0, 1.5, 2.0, 3.0, kInf};
  for (int trial = 0; trial < 6; ++trial) {
    const Matrix a = random_gaussian(4 + trial % 3, 3 + trial % 4, gen);
    for (const auto& p : exps)
      for (const auto& q : exps) {
        const NormPair pair(p, q);
        const OpNormResult r = opnorm(a, pair);
        CAPTURE(to_string(r.method));
        CHECK(lp_norm(r.witness_t, p) <= 1.0 + 1e-9);
        CHECK(lp_norm(r.witness_s, holder_conjugate(q)) <= 1.0 + 1e-9);
        const double b = bilinear(a, r.witness_s, r.witness_t);
        CHECK(r.value >= b - 1e-9);
        CHECK(r.value == doctest::Approx(b).epsilon(1e-8));
      }
  }
}

TEST_CASE("duality between a matrix and its transpose") {
  std::mt19937_64 gen(17);
  const std::vector<Exponent> exps{1.0, 1.5, 2.0, 3.0, kInf};
  for (int trial = 0; trial < 8; ++trial) {
    const Matrix a = random_gaussian(6, 6, gen);
    const Matrix at = a.transpose();
    for (const auto& p : exps)
      for (const auto& q : exps) {
        const NormPair pair(p, q);
        const OpNormResult x = opnorm(a, pair);
        const OpNormResult y = opnorm(at, pair.transposed());
        const bool heuristic = !x.certified || !y.certified;
        CHECK(std::abs(x.value - y.value) <= (heuristic ? 1e-4 : 1e-9) * x.value);
      }
  }
}

TEST_CASE("scaling and monotonicity") {
  std::mt19937_64 gen(19);
  const std::vector<Exponent> exps{1.0, 1.5, 2.0, 3.0, kInf};
  for (int trial = 0; trial < 6; ++trial) {
    const Matrix a = random_gaussian(5, 4, gen);
    for (const auto& p : exps)
      for (const auto& q : exps) {
        const double v = opnorm_value(a, NormPair(p, q));
        for (double c : {-3.0, 0.25, 1e3}) {
          CHECK(opnorm_value(a.scaled(c), NormPair(p, q)) == doctest::Approx(std::abs(c) * v).epsilon(1e-10));
        }
      }
    for (std::size_t i = 0; i + 1 < exps.size(); ++i)
      for (const auto& other : exps) {
        // Nonincreasing in q, nondecreasing in p.
        CHECK(opnorm_value(a, NormPair(other, exps[i + 1])) <= opnorm_value(a, NormPair(other, exps[i])) * (1 + 1e-8));
        CHECK(opnorm_value(a, NormPair(exps[i], other)) <= opnorm_value(a, NormPair(exps[i + 1], other)) * (1 + 1e-8));
      }
  }
}

TEST_CASE("power_method_step fixed points") {
  const Matrix id = Matrix::identity(2);
  const NormPair two(2.0, 2.0);
  const PowerStep s = power_method_step(id, std::vector<double>{1, 0}, two);
  CHECK(s.t[0] == doctest::Approx(1.0));
  CHECK(s.t[1] == doctest::Approx(0.0));
  const double d[] = {2.0, 1.0};
  const Matrix diag = Matrix::diagonal(d);
  const PowerStep stuck = power_method_step(diag, std::vector<double>{0, 1}, two);
  CHECK(stuck.t[0] == doctest::Approx(0.0));
  CHECK(std::abs(stuck.t[1]) == doctest::Approx(1.0));
  CHECK(stuck.value == doctest::Approx(1.0));
  CHECK(opnorm(diag, two).value == doctest::Approx(2.0));
  CHECK_THROWS_AS(power_method_step(id, std::vector<double>{1, 0}, NormPair(1.0, 2.0)), std::domain_error);
}

TEST_CASE("power_method_step restarts from a zero image") {
  Matrix a(2, 2);
  a(0, 0) = 1.0;
  CounterRng rng(1, 2);
  const PowerStep s = power_method_step(a, std::vector<double>{0, 1}, NormPair(2.5, 3.0), &rng);
  CHECK(s.restarted);
  CHECK(lp_norm(s.t, 2.5) == doctest::Approx(1.0));
}

TEST_CASE("power iteration values are nondecreasing") {
  std::mt19937_64 gen(23);
  const NormPair pair(2.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_gaussian(5, 5, gen);
    std::vector<double> t = testing_support::random_in_ball(5, 2.5, gen);
    double last = -1e300;
    for (int it = 0; it < 60; ++it) {
      const PowerStep s = power_method_step(a, t, pair);
      CHECK(s.value >= last - 1e-12 * std::abs(last));
      last = s.value;
      t = s.t;
    }
  }
}

TEST_CASE("power iteration never exceeds the spectral norm and usually reaches it") {
  std::mt19937_64 gen(29);
  const NormPair two(2.0, 2.0);
  int reached = 0;
  constexpr int kTrials = 200;
  for (int trial = 0; trial < kTrials; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Matrix a = random_gaussian(n, n, gen);
    const double exact = testing_support::jacobi_spectral(a);
    double best = 0.0;
    for (int start = 0; start < 64; ++start) {
      std::vector<double> t = testing_support::random_in_ball(n, 2.0, gen);
      double v = 0.0;
      for (int it = 0; it < 2000; ++it) {
        const PowerStep s = power_method_step(a, t, two);
        const bool done = std::abs(s.value - v) <= 1e-14 * s.value;
        v = s.value;
        t = s.t;
        if (done) break;
      }
      CHECK(v <= exact * (1 + 1e-12));
      best = std::max(best, v);
    }
    if (best >= exact * (1 - 1e-6)) ++reached;
  }
  CHECK(reached >= kTrials * 99 / 100);
}

TEST_CASE("sign search beyond the enumeration limit") {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 4; ++trial) {
    const Matrix a = random_gaussian(5, 18, gen);
    SolverBudget budget;
    budget.enum_limit = 12;
    const OpNormResult r = opnorm(a, NormPair(kInf, 2.0), budget);
    CHECK_FALSE(r.certified);
    const double exact = testing_support::corner_opnorm(a, std::numeric_limits<double>::infinity(), 2.0);
    CHECK(r.value <= exact * (1 + 1e-12));
    CHECK(r.value >= exact * 0.99);
  }
}

TEST_CASE("opnorm is deterministic") {
  std::mt19937_64 gen(37);
  const Matrix a = random_gaussian(6, 5, gen);
  const NormPair pair(1.7, 2.6);
  const OpNormResult x = opnorm(a, pair);
  const OpNormResult y = opnorm(a, pair);
  CHECK(x.value == y.value);
  CHECK(x.witness_t == y.witness_t);
}

TEST_CASE("bilinear_sup examples") {
  const Matrix id = Matrix::identity(2);
  const FinitePointSet e1(2, {{1, 0}});
  CHECK(bilinear_sup(id, e1, e1) == 1.0);
  const FinitePointSet basis(2, {{1, 0}, {0, 1}});
  CHECK(bilinear_sup(Matrix{{1, 2}, {3, 4}}, basis, basis) == 4.0);
  CHECK(bilinear_sup(id, FinitePointSet(2, {{1, 1}}), FinitePointSet(2, {{1, -1}})) == 0.0);
  CHECK_THROWS(bilinear_sup(id, FinitePointSet(3, {{1, 0, 0}}), e1));
  CHECK_THROWS(FinitePointSet(2, {}));
  CHECK_THROWS(FinitePointSet(2, {{1, 0}, {1}}));
}

TEST_CASE("point set json") {
  const FinitePointSet s = point_set_from_json(nlohmann::json::parse(R"({"dim":2,"points":[[1,2],[3,4]]})"));
  CHECK(s.size() == 2);
  CHECK(point_set_from_json(to_json(s)).points() == s.points());
  CHECK(point_set_from_json(nlohmann::json::parse("[[1],[2],[3]]")).size() == 3);
}

TEST_CASE("submatrix_sup examples") {
  std::mt19937_64 gen(41);
  const Matrix a = random_gaussian(5, 6, gen);
  double max_abs = 0.0;
  for (double x : a.data()) max_abs = std::max(max_abs, std::abs(x));
  for (const auto& p : {Exponent(1.0), Exponent(2.0), kInf}) {
    CHECK(submatrix_sup(a, 1, 1, NormPair(p, 2.0), SubmatrixMode::Exact).value == doctest::Approx(max_abs));
  }
  const SubmatrixResult id = submatrix_sup(Matrix::identity(3), 2, 2, NormPair(2.0, 2.0), SubmatrixMode::Exact);
  CHECK(id.value == doctest::Approx(1.0));
  CHECK(id.rows.size() == 2);
  CHECK(id.cols.size() == 2);
  CHECK_THROWS_AS(submatrix_sup(random_gaussian(30, 30, gen), 10, 10, NormPair(2.0, 2.0), SubmatrixMode::Exact),
                  BudgetError);
  CHECK_THROWS(submatrix_sup(a, 0, 1, NormPair(2.0, 2.0), SubmatrixMode::Exact));
  CHECK_THROWS(submatrix_sup(a, 6, 1, NormPair(2.0, 2.0), SubmatrixMode::Exact));
}

TEST_CASE("local search never beats exhaustive search and usually matches it") {
  std::mt19937_64 gen(43);
  int equal = 0;
  const NormPair pair(2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_gaussian(6, 6, gen);
    const SubmatrixResult exact = submatrix_sup(a, 2, 2, pair, SubmatrixMode::Exact);
    SubmatrixOptions opts;
    opts.seed = static_cast<std::uint64_t>(trial);
    const SubmatrixResult local = submatrix_sup(a, 2, 2, pair, SubmatrixMode::LocalSearch, opts);
    CHECK(local.value <= exact.value * (1 + 1e-12));
    if (local.value >= exact.value * (1 - 1e-12)) ++equal;
    // The reported index sets reproduce the value.
    Matrix sub;
    sub.assign_submatrix(a, exact.rows, exact.cols);
    CHECK(opnorm_value(sub, pair) == doctest::Approx(exact.value));
  }
  CHECK(equal >= 90);
}

TEST_CASE("binomial") {
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial(5, 0) == 1.0);
  CHECK(binomial(4, 5) == 0.0);
}

TEST_CASE("result json carries method and convergence") {
  const auto j = to_json(opnorm(Matrix{{1, 2}, {3, 4}}, NormPair(kInf, 1.0)));
  CHECK(j["value"] == 10.0);
  CHECK(j["method"] == "SignEnum");
  CHECK(j["converged"] == true);
}
