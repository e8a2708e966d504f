#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "evifore/baselines.hpp"
#include "evifore/domain.hpp"
#include "evifore/evidence.hpp"
#include "evifore/metrics.hpp"
#include "evifore/valuation.hpp"

namespace evifore {

// Complete persisted state of a Forecaster. `history` is populated only for
// SlopeExtrapolation, whose global value needs every past point.
struct ForecastSnapshot {
  FusionState fusion;
  ValuationState valuation;
  EvStrategy strategy = EvStrategy::RatioOffset;
  std::uint64_t n = 0;
  std::vector<TimePoint> history;

  friend bool operator==(const ForecastSnapshot&, const ForecastSnapshot&) = default;
};

// One-step-ahead evidential forecaster.
//
// The forecast is gbpa(fused pair BPAs) * global value. Consuming one
// observation costs O(1) under RatioOffset; SlopeExtrapolation retains the
// series and pays O(n) per prediction.
//
// Invariant: fusion().pairs + 1 == valuation().count.
class Forecaster {
public:
  // Fuses all n-1 pair BPAs of `series`. Throws SeriesTooShort for n < 2.
  static Forecaster create(const TimeSeries& series, EvStrategy strategy = EvStrategy::RatioOffset);
  // Validates the snapshot invariants; throws CorruptSnapshot on violation.
  static Forecaster restore(ForecastSnapshot snapshot);

  // Pure query. Throws TotalConflict when the fused belief is undefined.
  double predict() const;

  // Consumes the next observation without forecasting. The state stays
  // consistent even if a later predict() reports TotalConflict.
  void observe(TimePoint point);
  void observe(double value);

  // observe() followed by predict().
  double update(double value);
  double update(TimePoint point);

  double gbpa() const;
  double global_value() const;

  const FusionState& fusion() const noexcept { return fusion_; }
  const ValuationState& valuation() const noexcept { return valuation_; }
  EvStrategy strategy() const noexcept { return strategy_; }
  std::uint64_t size() const noexcept { return valuation_.count; }

  ForecastSnapshot snapshot() const;

private:
  Forecaster() = default;

  FusionState fusion_;
  ValuationState valuation_;
  EvStrategy strategy_ = EvStrategy::RatioOffset;
  std::optional<TimeSeries> retained_;
};

enum class Method { Evidential, Sma };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view name);

inline constexpr std::size_t kDefaultSeedLength = 4;

struct BacktestConfig {
  std::size_t seed_len = kDefaultSeedLength;
  EvStrategy strategy = EvStrategy::RatioOffset;
  Method method = Method::Evidential;
  SmaConfig sma;
};

struct PredictionRow {
  double t = 0.0;
  double y_true = 0.0;
  double y_pred = 0.0;
};

struct BacktestResult {
  std::vector<PredictionRow> predictions;   // indices seed_len+1 .. n
  std::size_t seed_len = 0;
  MetricsReport metrics;
  std::chrono::nanoseconds elapsed{0};
  // Wall time of each update+predict step after the seed forecast.
  std::vector<std::int64_t> per_update_ns;
};

// Rolling one-step-ahead evaluation: every y_{i+1}, i = seed_len..n-1, is
// predicted from y_1..y_i and then revealed. Throws SeriesTooShort unless
// n > seed_len and seed_len >= 2 (evidential) or >= k (SMA).
BacktestResult backtest(const TimeSeries& series, const BacktestConfig& config);

struct LatencySummary {
  std::size_t samples = 0;
  double p50_ns = 0.0;
  double p99_ns = 0.0;
  double mean_ns = 0.0;
};

LatencySummary summarize_latency(std::vector<std::int64_t> samples_ns);

struct BenchConfig {
  std::size_t seed_len = kDefaultSeedLength;
  std::size_t repeats = 1;
  std::size_t warmup = 100;
  EvStrategy strategy = EvStrategy::RatioOffset;
};

struct BenchReport {
  std::size_t history_len = 0;       // points fused before the first timed update
  std::size_t updates_per_run = 0;
  std::size_t repeats = 0;
  std::size_t warmup = 0;
  std::chrono::nanoseconds best_total{0};   // fastest full streaming run
  std::chrono::nanoseconds mean_total{0};
  LatencySummary per_update;                // pooled over repeats, warmup excluded
};

// Streams series[seed_len..n) through a forecaster seeded with the first
// seed_len points, timing each update+predict on a monotonic clock. The
// first `warmup` updates of every run are left out of the latency summary.
// Throws InvalidArgument for repeats == 0.
BenchReport bench(const TimeSeries& series, const BenchConfig& config);

} // namespace evifore
