#include <doctest.h>

#include <algorithm>
#include <random>

#include "evifore/error.hpp"
#include "evifore/forecaster.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace evifore;
using doctest::Approx;

namespace {

const std::vector<double> kExample{10, 12, 11, 14, 10, 15};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an evifore::Error");
  return ErrorCode::InvalidArgument;
}

Forecaster make(const std::vector<double>& y, EvStrategy s = EvStrategy::RatioOffset) {
  return Forecaster::create(TimeSeries::from_values(y), s);
}

} // namespace

TEST_CASE("worked example prediction and update") {
  Forecaster f = make(kExample);
  CHECK(std::abs(f.predict() - 15.75) <= 5e-3);
  CHECK(f.fusion().pairs + 1 == f.valuation().count);
  const double next = f.update(16.0);
  CHECK(std::abs(next - 16.75) <= 5e-3);
  CHECK(f.size() == 7);
  CHECK(f.global_value() == 16.75);
}

TEST_CASE("constant series predictions") {
  const std::vector<double> flat(9, 5.0);
  CHECK(make(flat).gbpa() == 1.0);
  CHECK(make(flat).predict() == Approx(6.0).epsilon(1e-15));
  CHECK(make(flat, EvStrategy::SlopeExtrapolation).predict() == 5.0);
}

TEST_CASE("two-point closed form") {
  const double a = 3;
  const double b = 7;
  CHECK(make({a, b}).predict() == Approx((b + a / b) * (a / b)));
}

TEST_CASE("forecaster errors") {
  CHECK(code_of([] { make({1}); }) == ErrorCode::SeriesTooShort);
  Forecaster f = make(kExample);
  CHECK(code_of([&] { f.update(0.0); }) == ErrorCode::NonPositiveValue);
  CHECK(f.size() == 6);
  CHECK(code_of([&] { f.update(TimePoint{6, 3}); }) == ErrorCode::NonMonotoneTimestamp);
  CHECK(code_of([] { make({2, 1, 3}).predict(); }) == ErrorCode::TotalConflict);
}

TEST_CASE("a conflicting step keeps the observation and later steps recover") {
  Forecaster f = make({2, 1});
  CHECK(code_of([&] { f.update(3.0); }) == ErrorCode::TotalConflict);
  CHECK(f.size() == 3);
  CHECK(std::isfinite(f.update(3.0)));
}

TEST_CASE("property: streaming updates equal batch construction at every step") {
  std::mt19937_64 rng(53);
  for (EvStrategy strategy : {EvStrategy::RatioOffset, EvStrategy::SlopeExtrapolation}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto y = testing::random_values(rng, testing::random_length(rng, 2, 120));
      const TimeSeries full = TimeSeries::from_values(y);
      Forecaster streaming = Forecaster::create(full.prefix(2), strategy);
      for (std::size_t n = 2; n <= y.size(); ++n) {
        if (n > 2) streaming.observe(full[n - 1]);
        const Forecaster batch = Forecaster::create(full.prefix(n), strategy);
        CHECK(testing::close_rel(streaming.fusion().p_a, batch.fusion().p_a, 1e-9));
        CHECK(testing::close_rel(streaming.fusion().p_abar, batch.fusion().p_abar, 1e-9));
        CHECK(testing::close_rel(streaming.valuation().sum_prior, batch.valuation().sum_prior, 1e-9));
        CHECK(testing::close_rel(streaming.predict(), batch.predict(), 1e-9));
      }
    }
  }
}

TEST_CASE("property: predictions agree with an independent evaluation") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const auto y = testing::random_values(rng, testing::random_length(rng, 2, 150));
    const double expected_ratio = static_cast<double>(oracle::gbpa_long(y)) * oracle::mean_ratio_ev(y);
    const double expected_slope = static_cast<double>(oracle::gbpa_long(y)) * oracle::mean_slope_ev(y);
    CHECK(testing::close_rel(make(y).predict(), expected_ratio, 1e-9));
    CHECK(testing::close_rel(make(y, EvStrategy::SlopeExtrapolation).predict(), expected_slope, 1e-9));
  }
}

TEST_CASE("property: slope predictions scale with the series") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const auto y = testing::random_values(rng, testing::random_length(rng, 2, 100));
    const double base = make(y, EvStrategy::SlopeExtrapolation).predict();
    for (double lambda : {1e-3, 3.0, 1e3}) {
      std::vector<double> scaled = y;
      for (double& v : scaled) v *= lambda;
      CHECK(testing::close_rel(make(scaled, EvStrategy::SlopeExtrapolation).predict(), lambda * base, 1e-9));
    }
  }
}

TEST_CASE("backtest counts and alignment") {
  const TimeSeries s = TimeSeries::from_values(kExample);
  const BacktestResult r = backtest(s, BacktestConfig{});
  REQUIRE(r.predictions.size() == 2);
  CHECK(r.predictions[0].t == 5);
  CHECK(r.predictions[0].y_true == 10);
  CHECK(r.predictions[1].t == 6);
  CHECK(r.predictions[1].y_true == 15);
  CHECK(r.predictions[0].y_pred == make({10, 12, 11, 14}).predict());
  CHECK(r.predictions[1].y_pred == make({10, 12, 11, 14, 10}).predict());
  CHECK(r.metrics.n == 2);
  CHECK(r.per_update_ns.size() == 1);
  CHECK(r.seed_len == 4);
}

TEST_CASE("property: backtest yields n - seed_len predictions") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const auto y = testing::random_values(rng, testing::random_length(rng, 3, 100));
    const std::size_t seed = testing::random_length(rng, 2, y.size() - 1);
    BacktestConfig config;
    config.seed_len = seed;
    CHECK(backtest(TimeSeries::from_values(y), config).predictions.size() == y.size() - seed);
  }
}

TEST_CASE("backtest input errors") {
  const TimeSeries s = TimeSeries::from_values(kExample);
  BacktestConfig config;
  config.seed_len = 6;
  CHECK(code_of([&] { backtest(s, config); }) == ErrorCode::SeriesTooShort);
  config.seed_len = 1;
  CHECK(code_of([&] { backtest(s, config); }) == ErrorCode::SeriesTooShort);
  config.method = Method::Sma;
  config.sma.k = 2;
  CHECK(code_of([&] { backtest(s, config); }) == ErrorCode::SeriesTooShort);
  config.sma.k = 0;
  CHECK(code_of([&] { backtest(s, config); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("snapshots restore identical predictions") {
  Forecaster f = make(kExample, EvStrategy::SlopeExtrapolation);
  const ForecastSnapshot snap = f.snapshot();
  CHECK(snap.history.size() == 6);
  Forecaster g = Forecaster::restore(snap);
  CHECK(g.predict() == f.predict());
  CHECK(g.update(16) == f.update(16));
}

TEST_CASE("restore rejects inconsistent snapshots") {
  const ForecastSnapshot good = make(kExample).snapshot();
  auto broken = [&](auto mutate) {
    ForecastSnapshot s = good;
    mutate(s);
    return code_of([&] { Forecaster::restore(s); });
  };
  CHECK(broken([](ForecastSnapshot& s) { s.fusion.pairs = 3; }) == ErrorCode::CorruptSnapshot);
  CHECK(broken([](ForecastSnapshot& s) { s.n = 2; }) == ErrorCode::CorruptSnapshot);
  CHECK(broken([](ForecastSnapshot& s) { s.valuation.y_last = -1; }) == ErrorCode::CorruptSnapshot);
  CHECK(broken([](ForecastSnapshot& s) { s.history.push_back({1, 1}); }) == ErrorCode::CorruptSnapshot);
  CHECK(broken([](ForecastSnapshot& s) { s.strategy = EvStrategy::SlopeExtrapolation; }) ==
        ErrorCode::CorruptSnapshot);
}

TEST_CASE("latency summary percentiles") {
  std::vector<std::int64_t> samples(100);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = static_cast<std::int64_t>(100 - i);
  const LatencySummary s = summarize_latency(samples);
  CHECK(s.samples == 100);
  CHECK(s.p50_ns == 50);
  CHECK(s.p99_ns == 99);
  CHECK(s.mean_ns == Approx(50.5));
  CHECK(summarize_latency({}).samples == 0);
}

TEST_CASE("bench reports every timed update") {
  const TimeSeries s = synthetic_series(400, 1);
  BenchConfig config;
  config.repeats = 3;
  config.warmup = 100;
  const BenchReport r = bench(s, config);
  CHECK(r.updates_per_run == 396);
  CHECK(r.per_update.samples == 3 * 296);
  CHECK(r.best_total.count() > 0);
  CHECK(r.best_total <= r.mean_total);
  config.repeats = 0;
  CHECK(code_of([&] { bench(s, config); }) == ErrorCode::InvalidArgument);
}
