#include "evifore/evifore.h"

#include <new>
#include <string>
#include <utility>

#include "evifore/error.hpp"
#include "evifore/forecaster.hpp"
#include "evifore/ingest.hpp"
#include "evifore/metrics.hpp"

struct evf_series {
  evifore::TimeSeries series;
};

struct evf_forecaster {
  evifore::Forecaster forecaster;
};

struct evf_backtest {
  evifore::BacktestResult result;
};

namespace {

using evifore::ErrorCode;

thread_local std::string last_error;
thread_local std::size_t last_error_row = 0;

evf_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveValue: return EVF_ERR_NON_POSITIVE_VALUE;
    case ErrorCode::NonMonotoneTimestamp: return EVF_ERR_NON_MONOTONE_TIMESTAMP;
    case ErrorCode::SeriesTooShort: return EVF_ERR_SERIES_TOO_SHORT;
    case ErrorCode::IndexOutOfRange: return EVF_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::TotalConflict: return EVF_ERR_TOTAL_CONFLICT;
    case ErrorCode::MismatchedFrames: return EVF_ERR_MISMATCHED_FRAMES;
    case ErrorCode::InvalidBpa: return EVF_ERR_INVALID_BPA;
    case ErrorCode::LengthMismatch: return EVF_ERR_LENGTH_MISMATCH;
    case ErrorCode::EmptyInput: return EVF_ERR_EMPTY_INPUT;
    case ErrorCode::ZeroRange: return EVF_ERR_ZERO_RANGE;
    case ErrorCode::IoError: return EVF_ERR_IO;
    case ErrorCode::ParseError: return EVF_ERR_PARSE;
    case ErrorCode::VersionMismatch: return EVF_ERR_VERSION_MISMATCH;
    case ErrorCode::CorruptSnapshot: return EVF_ERR_CORRUPT_SNAPSHOT;
    case ErrorCode::InvalidArgument: return EVF_ERR_INVALID_ARGUMENT;
  }
  return EVF_ERR_INTERNAL;
}

evf_status fail(evf_status status, std::string message, std::size_t row = 0) {
  last_error = std::move(message);
  last_error_row = row;
  return status;
}

// Runs `body` and converts any exception into a status code.
template <typename Body>
evf_status guarded(Body&& body) noexcept {
  try {
    body();
    return EVF_OK;
  } catch (const evifore::Error& e) {
    return fail(status_of(e.code()), e.what(), e.row().value_or(0));
  } catch (const std::bad_alloc&) {
    return fail(EVF_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(EVF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EVF_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw evifore::Error(ErrorCode::InvalidArgument, what);
}

evifore::EvStrategy strategy_of(evf_strategy s) {
  switch (s) {
    case EVF_STRATEGY_RATIO: return evifore::EvStrategy::RatioOffset;
    case EVF_STRATEGY_SLOPE: return evifore::EvStrategy::SlopeExtrapolation;
  }
  throw evifore::Error(ErrorCode::InvalidArgument, "unknown strategy");
}

evf_strategy strategy_to_c(evifore::EvStrategy s) {
  return s == evifore::EvStrategy::RatioOffset ? EVF_STRATEGY_RATIO : EVF_STRATEGY_SLOPE;
}

void fill_metrics(const evifore::MetricsReport& m, evf_metrics* out) {
  out->mad = m.mad;
  out->mape_pct = m.mape_pct;
  out->rmse = m.rmse;
  out->has_nrmse = m.nrmse_pct.has_value() ? 1 : 0;
  out->nrmse_pct = m.nrmse_pct.value_or(0.0);
  out->smape_pct = m.smape_pct;
  out->n = m.n;
  out->truth_min = m.truth_min;
  out->truth_max = m.truth_max;
}

void fill_latency(const evifore::LatencySummary& s, evf_latency* out) {
  out->samples = s.samples;
  out->p50_ns = s.p50_ns;
  out->p99_ns = s.p99_ns;
  out->mean_ns = s.mean_ns;
}

} // namespace

extern "C" {

const char* evf_version(void) { return "0.1.0"; }

const char* evf_status_name(evf_status status) {
  switch (status) {
    case EVF_OK: return "Ok";
    case EVF_ERR_OUT_OF_MEMORY: return "OutOfMemory";
    case EVF_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(ErrorCode::InvalidArgument); ++c) {
    if (status_of(static_cast<ErrorCode>(c)) == status) return evifore::to_string(static_cast<ErrorCode>(c));
  }
  return "Unknown";
}

const char* evf_last_error(void) { return last_error.c_str(); }

size_t evf_last_error_row(void) { return last_error_row; }

evf_status evf_series_from_values(const double* values, size_t n, evf_series** out) {
  return guarded([&] {
    require(out != nullptr && (values != nullptr || n == 0), "null argument");
    *out = new evf_series{evifore::TimeSeries::from_values(std::span(values, n))};
  });
}

evf_status evf_series_from_points(const double* t, const double* y, size_t n, evf_series** out) {
  return guarded([&] {
    require(out != nullptr && ((t != nullptr && y != nullptr) || n == 0), "null argument");
    std::vector<evifore::TimePoint> points;
    points.reserve(n);
    for (size_t i = 0; i < n; ++i) points.push_back({t[i], y[i]});
    *out = new evf_series{evifore::TimeSeries::from_points(std::move(points))};
  });
}

evf_status evf_series_load_csv(const char* path, const evf_csv_spec* spec, evf_series** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    evifore::CsvSpec cpp;
    if (spec != nullptr) {
      if (spec->value_column_name != nullptr) {
        cpp.value_column = std::string(spec->value_column_name);
      } else {
        require(spec->value_column_index >= 0, "value column index must be >= 0");
        cpp.value_column = static_cast<std::size_t>(spec->value_column_index);
      }
      if (spec->time_column_name != nullptr) {
        cpp.time_column = std::string(spec->time_column_name);
      } else if (spec->time_column_index >= 0) {
        cpp.time_column = static_cast<std::size_t>(spec->time_column_index);
      }
      cpp.has_header = spec->has_header != 0;
      cpp.delimiter = spec->delimiter == '\0' ? ',' : spec->delimiter;
    }
    *out = new evf_series{evifore::load_csv(path, cpp)};
  });
}

evf_status evf_series_save_csv(const evf_series* series, const char* path) {
  return guarded([&] {
    require(series != nullptr && path != nullptr, "null argument");
    evifore::write_csv(series->series, std::filesystem::path(path));
  });
}

evf_status evf_series_synthetic(size_t n, uint64_t seed, evf_series** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new evf_series{evifore::synthetic_series(n, seed)};
  });
}

size_t evf_series_length(const evf_series* series) { return series ? series->series.size() : 0; }

evf_status evf_series_point(const evf_series* series, size_t index, double* t, double* y) {
  return guarded([&] {
    require(series != nullptr, "null series");
    if (index >= series->series.size()) throw evifore::Error(ErrorCode::IndexOutOfRange, "point index out of range");
    const auto& p = series->series[index];
    if (t) *t = p.t;
    if (y) *y = p.y;
  });
}

void evf_series_free(evf_series* series) { delete series; }

evf_status evf_bpa_from_pair(double y_prev, double y_next, double* m_a, double* m_abar) {
  return guarded([&] {
    const auto bpa = evifore::bpa_from_pair(y_prev, y_next);
    if (m_a) *m_a = bpa.m_a;
    if (m_abar) *m_abar = bpa.m_abar;
  });
}

evf_status evf_evidential_value(const evf_series* series, size_t index, evf_strategy strategy, double* out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    *out = evifore::evidential_value(series->series, index, strategy_of(strategy));
  });
}

evf_status evf_forecaster_create(const evf_series* series, evf_strategy strategy, evf_forecaster** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    *out = new evf_forecaster{evifore::Forecaster::create(series->series, strategy_of(strategy))};
  });
}

evf_status evf_forecaster_predict(const evf_forecaster* f, double* prediction) {
  return guarded([&] {
    require(f != nullptr && prediction != nullptr, "null argument");
    *prediction = f->forecaster.predict();
  });
}

evf_status evf_forecaster_update(evf_forecaster* f, double value, double* prediction) {
  return guarded([&] {
    require(f != nullptr, "null forecaster");
    f->forecaster.observe(value);
    if (prediction) *prediction = f->forecaster.predict();
  });
}

evf_status evf_forecaster_update_at(evf_forecaster* f, double t, double value, double* prediction) {
  return guarded([&] {
    require(f != nullptr, "null forecaster");
    f->forecaster.observe(evifore::TimePoint{t, value});
    if (prediction) *prediction = f->forecaster.predict();
  });
}

evf_status evf_forecaster_gbpa(const evf_forecaster* f, double* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = f->forecaster.gbpa();
  });
}

evf_status evf_forecaster_global_value(const evf_forecaster* f, double* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = f->forecaster.global_value();
  });
}

evf_status evf_forecaster_state(const evf_forecaster* f, evf_state* out) {
  return guarded([&] {
    require(f != nullptr && out != nullptr, "null argument");
    const auto& fu = f->forecaster.fusion();
    const auto& va = f->forecaster.valuation();
    out->strategy = strategy_to_c(f->forecaster.strategy());
    out->p_a = fu.p_a;
    out->p_abar = fu.p_abar;
    out->pairs = fu.pairs;
    out->sum_prior = va.sum_prior;
    out->y_last = va.y_last;
    out->count = va.count;
    out->t_last = va.t_last;
  });
}

evf_status evf_forecaster_save(const evf_forecaster* f, const char* path) {
  return guarded([&] {
    require(f != nullptr && path != nullptr, "null argument");
    evifore::save_snapshot(f->forecaster, path);
  });
}

evf_status evf_forecaster_load(const char* path, evf_forecaster** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new evf_forecaster{evifore::load_snapshot(path)};
  });
}

void evf_forecaster_free(evf_forecaster* f) { delete f; }

evf_status evf_compute_metrics(const double* predicted, const double* truth, size_t n, evf_metrics* out) {
  return guarded([&] {
    require(out != nullptr && ((predicted != nullptr && truth != nullptr) || n == 0), "null argument");
    fill_metrics(evifore::compute_metrics(std::span(predicted, n), std::span(truth, n)), out);
  });
}

evf_status evf_backtest_run(const evf_series* series, size_t seed_len, evf_strategy strategy, evf_method method,
                            size_t k, evf_backtest** out) {
  return guarded([&] {
    require(series != nullptr && out != nullptr, "null argument");
    evifore::BacktestConfig config;
    config.seed_len = seed_len;
    config.strategy = strategy_of(strategy);
    switch (method) {
      case EVF_METHOD_EVIDENTIAL: config.method = evifore::Method::Evidential; break;
      case EVF_METHOD_SMA: config.method = evifore::Method::Sma; break;
      default: throw evifore::Error(ErrorCode::InvalidArgument, "unknown method");
    }
    config.sma.k = k;
    *out = new evf_backtest{evifore::backtest(series->series, config)};
  });
}

size_t evf_backtest_count(const evf_backtest* bt) { return bt ? bt->result.predictions.size() : 0; }

evf_status evf_backtest_row(const evf_backtest* bt, size_t index, double* t, double* y_true, double* y_pred) {
  return guarded([&] {
    require(bt != nullptr, "null backtest");
    if (index >= bt->result.predictions.size()) {
      throw evifore::Error(ErrorCode::IndexOutOfRange, "prediction index out of range");
    }
    const auto& row = bt->result.predictions[index];
    if (t) *t = row.t;
    if (y_true) *y_true = row.y_true;
    if (y_pred) *y_pred = row.y_pred;
  });
}

evf_status evf_backtest_metrics(const evf_backtest* bt, evf_metrics* out) {
  return guarded([&] {
    require(bt != nullptr && out != nullptr, "null argument");
    fill_metrics(bt->result.metrics, out);
  });
}

evf_status evf_backtest_timing(const evf_backtest* bt, int64_t* elapsed_ns, evf_latency* per_update) {
  return guarded([&] {
    require(bt != nullptr, "null backtest");
    if (elapsed_ns) *elapsed_ns = bt->result.elapsed.count();
    if (per_update) fill_latency(evifore::summarize_latency(bt->result.per_update_ns), per_update);
  });
}

void evf_backtest_free(evf_backtest* bt) { delete bt; }

evf_status evf_bench(const evf_series* series, const evf_bench_config* config, evf_bench_report* out) {
  return guarded([&] {
    require(series != nullptr && config != nullptr && out != nullptr, "null argument");
    evifore::BenchConfig cpp;
    cpp.seed_len = config->seed_len;
    cpp.repeats = config->repeats;
    cpp.warmup = config->warmup;
    cpp.strategy = strategy_of(config->strategy);
    const auto report = evifore::bench(series->series, cpp);
    out->history_len = report.history_len;
    out->updates_per_run = report.updates_per_run;
    out->repeats = report.repeats;
    out->warmup = report.warmup;
    out->best_total_ns = report.best_total.count();
    out->mean_total_ns = report.mean_total.count();
    fill_latency(report.per_update, &out->per_update);
  });
}

} // extern "C"
