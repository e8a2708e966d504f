#include <doctest.h>

#include <algorithm>
#include <random>

#include "evifore/error.hpp"
#include "evifore/metrics.hpp"
#include "generators.hpp"

using namespace evifore;
using doctest::Approx;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an evifore::Error");
  return ErrorCode::InvalidArgument;
}

using Vec = std::vector<double>;

} // namespace

TEST_CASE("perfect forecast scores zero everywhere") {
  const Vec y{3, 5, 9};
  const MetricsReport r = compute_metrics(y, y);
  CHECK(r.mad == 0);
  CHECK(r.mape_pct == 0);
  CHECK(r.rmse == 0);
  CHECK(r.smape_pct == 0);
  REQUIRE(r.nrmse_pct.has_value());
  CHECK(*r.nrmse_pct == 0);
  CHECK(r.n == 3);
}

TEST_CASE("single point hand arithmetic") {
  const MetricsReport r = compute_metrics(Vec{11}, Vec{10});
  CHECK(r.mad == Approx(1));
  CHECK(r.mape_pct == Approx(10));
  CHECK(r.rmse == Approx(1));
  CHECK(r.smape_pct == Approx(200.0 / 21.0));
  CHECK_FALSE(r.nrmse_pct.has_value());
}

TEST_CASE("flat truth: NRMSE undefined, the rest computed") {
  const Vec pred{12, 8};
  const Vec truth{10, 10};
  const MetricsReport r = compute_metrics(pred, truth);
  CHECK(r.mad == Approx(2));
  CHECK(r.rmse == Approx(2));
  CHECK(r.mape_pct == Approx(20));
  // 100 * (2/22 + 2/18)
  CHECK(r.smape_pct == Approx(2000.0 / 99.0));
  CHECK_FALSE(r.nrmse_pct.has_value());
  CHECK(code_of([&] { nrmse_pct(pred, truth); }) == ErrorCode::ZeroRange);
}

TEST_CASE("NRMSE normalizes by the truth range") {
  const Vec pred{11, 19};
  const Vec truth{10, 20};
  CHECK(nrmse_pct(pred, truth) == Approx(10.0));
  CHECK(*compute_metrics(pred, truth).nrmse_pct == Approx(10.0));
}

TEST_CASE("input errors") {
  CHECK(code_of([] { compute_metrics(Vec{1, 2}, Vec{1}); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([] { compute_metrics(Vec{}, Vec{}); }) == ErrorCode::EmptyInput);
  CHECK(code_of([] { compute_metrics(Vec{1}, Vec{0}); }) == ErrorCode::NonPositiveValue);
}

TEST_CASE("property: RMSE >= MAD, joint permutation invariance, SMAPE symmetry") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = testing::random_length(rng, 1, 50);
    const Vec truth = testing::random_values(rng, n, 1, 1000);
    const Vec pred = testing::random_values(rng, n, 1, 1000);
    const MetricsReport r = compute_metrics(pred, truth);
    CHECK(r.rmse >= r.mad * (1 - 1e-12));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    Vec p2;
    Vec t2;
    for (std::size_t i : order) {
      p2.push_back(pred[i]);
      t2.push_back(truth[i]);
    }
    const MetricsReport s = compute_metrics(p2, t2);
    CHECK(testing::close_rel(s.mad, r.mad, 1e-12));
    CHECK(testing::close_rel(s.rmse, r.rmse, 1e-12));
    CHECK(testing::close_rel(s.mape_pct, r.mape_pct, 1e-12));
    CHECK(testing::close_rel(s.smape_pct, r.smape_pct, 1e-12));

    CHECK(testing::close_rel(smape_pct(truth, pred), r.smape_pct, 1e-12));
  }
}

TEST_CASE("MAPE and SMAPE converge as the forecast approaches the truth") {
  const Vec truth{100, 120, 90};
  double previous_gap = 1e9;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    Vec pred = truth;
    for (double& p : pred) p *= 1 + eps;
    const double gap = std::abs(mape_pct(pred, truth) - smape_pct(pred, truth));
    CHECK(gap < previous_gap);
    CHECK(gap <= 100 * eps * eps);
    previous_gap = gap;
  }
}
