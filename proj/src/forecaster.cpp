#include "evifore/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "evifore/error.hpp"

namespace evifore {

Forecaster Forecaster::create(const TimeSeries& series, EvStrategy strategy) {
  if (series.size() < 2) throw Error(ErrorCode::SeriesTooShort, "forecaster needs at least 2 points");
  Forecaster f;
  f.strategy_ = strategy;
  if (strategy == EvStrategy::SlopeExtrapolation) f.retained_.emplace();
  // Batch construction takes the streaming path point by point, so both
  // routes produce the same state.
  for (const TimePoint& p : series) f.observe(p);
  return f;
}

Forecaster Forecaster::restore(ForecastSnapshot snapshot) {
  auto corrupt = [](const std::string& why) { return Error(ErrorCode::CorruptSnapshot, why); };
  const ValuationState& v = snapshot.valuation;
  if (v.count < 2) throw corrupt("snapshot holds fewer than 2 observations");
  if (snapshot.n != v.count) throw corrupt("observation count disagrees with valuation state");
  if (snapshot.fusion.pairs + 1 != v.count) throw corrupt("pair count disagrees with observation count");
  if (!std::isfinite(v.y_last) || v.y_last <= 0.0) throw corrupt("last value must be finite and > 0");
  if (!std::isfinite(v.sum_prior) || v.sum_prior <= 0.0) throw corrupt("running sum must be finite and > 0");
  if (!(v.t_last > v.t_prev)) throw corrupt("timestamps out of order");
  if (std::isnan(snapshot.fusion.p_a) || std::isnan(snapshot.fusion.p_abar) ||
      std::isnan(snapshot.fusion.log_a) || std::isnan(snapshot.fusion.log_abar)) {
    throw corrupt("fusion state contains NaN");
  }

  Forecaster f;
  f.fusion_ = snapshot.fusion;
  f.valuation_ = snapshot.valuation;
  f.strategy_ = snapshot.strategy;
  if (snapshot.strategy == EvStrategy::SlopeExtrapolation) {
    if (snapshot.history.size() != v.count) throw corrupt("slope snapshot must carry the full history");
    try {
      f.retained_ = TimeSeries::from_points(std::move(snapshot.history));
    } catch (const Error& e) {
      throw corrupt(std::string("invalid history: ") + e.what());
    }
    if (f.retained_->back().y != v.y_last || f.retained_->back().t != v.t_last) {
      throw corrupt("history does not end at the last observation");
    }
  } else if (!snapshot.history.empty()) {
    throw corrupt("ratio snapshot must not carry history");
  }
  return f;
}

void Forecaster::observe(TimePoint point) {
  // Validate everything before mutating so a rejected point leaves no trace.
  ValuationState next_valuation = valuation_update(valuation_, point);
  if (valuation_.count > 0) fusion_ = fuse_incremental(fusion_, bpa_from_pair(valuation_.y_last, point.y));
  valuation_ = next_valuation;
  if (retained_) retained_->push_back(point);
}

void Forecaster::observe(double value) {
  observe(TimePoint{valuation_.count == 0 ? 1.0 : valuation_.t_last + 1.0, value});
}

double Forecaster::update(double value) {
  observe(value);
  return predict();
}

double Forecaster::update(TimePoint point) {
  observe(point);
  return predict();
}

double Forecaster::gbpa() const { return evifore::gbpa(fusion_); }

double Forecaster::global_value() const {
  if (retained_) return evifore::global_value(valuation_, strategy_, retained_->points());
  return evifore::global_value(valuation_, strategy_);
}

double Forecaster::predict() const { return global_value() * gbpa(); }

ForecastSnapshot Forecaster::snapshot() const {
  ForecastSnapshot s;
  s.fusion = fusion_;
  s.valuation = valuation_;
  s.strategy = strategy_;
  s.n = valuation_.count;
  if (retained_) s.history.assign(retained_->begin(), retained_->end());
  return s;
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Evidential: return "evidential";
    case Method::Sma: return "sma";
  }
  return "evidential";
}

Method parse_method(std::string_view name) {
  if (name == "evidential") return Method::Evidential;
  if (name == "sma") return Method::Sma;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t nanos_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(b - a).count();
}

void check_backtest_inputs(const TimeSeries& series, const BacktestConfig& config) {
  if (config.method == Method::Sma && config.sma.k == 0) {
    throw Error(ErrorCode::InvalidArgument, "SMA window must be >= 1");
  }
  const std::size_t min_seed = config.method == Method::Evidential ? 2 : config.sma.k;
  if (config.seed_len < min_seed) {
    throw Error(ErrorCode::SeriesTooShort, "seed length must be at least " + std::to_string(min_seed));
  }
  if (series.size() <= config.seed_len) {
    throw Error(ErrorCode::SeriesTooShort, "series of " + std::to_string(series.size()) +
                                               " points leaves nothing to predict after a seed of " +
                                               std::to_string(config.seed_len));
  }
}

} // namespace

BacktestResult backtest(const TimeSeries& series, const BacktestConfig& config) {
  check_backtest_inputs(series, config);
  const std::size_t n = series.size();
  const std::size_t seed = config.seed_len;

  BacktestResult result;
  result.seed_len = seed;
  result.predictions.reserve(n - seed);
  result.per_update_ns.reserve(n - seed - 1);

  const auto start = Clock::now();
  if (config.method == Method::Evidential) {
    Forecaster f = Forecaster::create(series.prefix(seed), config.strategy);
    result.predictions.push_back({series[seed].t, series[seed].y, f.predict()});
    for (std::size_t j = seed + 1; j < n; ++j) {
      const auto t0 = Clock::now();
      const double pred = f.update(series[j - 1]);
      const auto t1 = Clock::now();
      result.per_update_ns.push_back(nanos_between(t0, t1));
      result.predictions.push_back({series[j].t, series[j].y, pred});
    }
  } else {
    const std::vector<double> values = series.values();
    for (std::size_t j = seed; j < n; ++j) {
      const auto t0 = Clock::now();
      const double pred = sma_predict(std::span(values).first(j), config.sma);
      const auto t1 = Clock::now();
      if (j > seed) result.per_update_ns.push_back(nanos_between(t0, t1));
      result.predictions.push_back({series[j].t, series[j].y, pred});
    }
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);

  std::vector<double> predicted;
  std::vector<double> truth;
  predicted.reserve(result.predictions.size());
  truth.reserve(result.predictions.size());
  for (const PredictionRow& row : result.predictions) {
    predicted.push_back(row.y_pred);
    truth.push_back(row.y_true);
  }
  result.metrics = compute_metrics(predicted, truth);
  return result;
}

LatencySummary summarize_latency(std::vector<std::int64_t> samples_ns) {
  LatencySummary s;
  s.samples = samples_ns.size();
  if (samples_ns.empty()) return s;
  std::sort(samples_ns.begin(), samples_ns.end());
  // Nearest-rank percentiles.
  auto rank = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(samples_ns.size())));
    return static_cast<double>(samples_ns[std::clamp<std::size_t>(idx, 1, samples_ns.size()) - 1]);
  };
  s.p50_ns = rank(0.50);
  s.p99_ns = rank(0.99);
  double sum = 0.0;
  for (std::int64_t v : samples_ns) sum += static_cast<double>(v);
  s.mean_ns = sum / static_cast<double>(samples_ns.size());
  return s;
}

BenchReport bench(const TimeSeries& series, const BenchConfig& config) {
  if (config.repeats == 0) throw Error(ErrorCode::InvalidArgument, "repeats must be >= 1");
  if (config.seed_len < 2) throw Error(ErrorCode::SeriesTooShort, "seed length must be at least 2");
  if (series.size() <= config.seed_len) throw Error(ErrorCode::SeriesTooShort, "nothing to stream after the seed");

  const std::size_t n = series.size();
  const Forecaster seeded = Forecaster::create(series.prefix(config.seed_len), config.strategy);

  BenchReport report;
  report.history_len = config.seed_len;
  report.updates_per_run = n - config.seed_len;
  report.repeats = config.repeats;
  report.warmup = config.warmup;

  std::vector<std::int64_t> samples;
  samples.reserve(config.repeats * report.updates_per_run);
  std::int64_t best = -1;
  double total_sum = 0.0;
  volatile double sink = 0.0;

  for (std::size_t r = 0; r < config.repeats; ++r) {
    Forecaster f = seeded;
    const auto start = Clock::now();
    for (std::size_t j = config.seed_len; j < n; ++j) {
      const auto t0 = Clock::now();
      const double pred = f.update(series[j]);
      const auto t1 = Clock::now();
      sink = pred;
      if (j - config.seed_len >= config.warmup) samples.push_back(nanos_between(t0, t1));
    }
    const std::int64_t total = nanos_between(start, Clock::now());
    best = best < 0 ? total : std::min(best, total);
    total_sum += static_cast<double>(total);
  }
  (void)sink;

  report.best_total = std::chrono::nanoseconds(best);
  report.mean_total = std::chrono::nanoseconds(static_cast<std::int64_t>(total_sum / static_cast<double>(config.repeats)));
  report.per_update = summarize_latency(std::move(samples));
  return report;
}

} // namespace evifore
