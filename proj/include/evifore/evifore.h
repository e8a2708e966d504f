/*
 * C interface to the evifore evidential forecaster.
 *
 * Objects are opaque handles created by *_create / *_load / *_run calls and
 * released with the matching *_free. Every fallible call returns an
 * evf_status; on failure a description is available from evf_last_error()
 * on the calling thread until the next failing call.
 */
#ifndef EVIFORE_EVIFORE_H
#define EVIFORE_EVIFORE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EVIFORE_BUILDING)
#    define EVIFORE_API __declspec(dllexport)
#  else
#    define EVIFORE_API __declspec(dllimport)
#  endif
#else
#  define EVIFORE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evf_status {
  EVF_OK = 0,
  EVF_ERR_NON_POSITIVE_VALUE = 1,
  EVF_ERR_NON_MONOTONE_TIMESTAMP = 2,
  EVF_ERR_SERIES_TOO_SHORT = 3,
  EVF_ERR_INDEX_OUT_OF_RANGE = 4,
  EVF_ERR_TOTAL_CONFLICT = 5,
  EVF_ERR_MISMATCHED_FRAMES = 6,
  EVF_ERR_INVALID_BPA = 7,
  EVF_ERR_LENGTH_MISMATCH = 8,
  EVF_ERR_EMPTY_INPUT = 9,
  EVF_ERR_ZERO_RANGE = 10,
  EVF_ERR_IO = 11,
  EVF_ERR_PARSE = 12,
  EVF_ERR_VERSION_MISMATCH = 13,
  EVF_ERR_CORRUPT_SNAPSHOT = 14,
  EVF_ERR_INVALID_ARGUMENT = 15,
  EVF_ERR_OUT_OF_MEMORY = 16,
  EVF_ERR_INTERNAL = 17
} evf_status;

typedef enum evf_strategy {
  EVF_STRATEGY_RATIO = 0, /* y_n + y_i / y_n; O(1) global value */
  EVF_STRATEGY_SLOPE = 1  /* slope extrapolation; O(n) global value */
} evf_strategy;

typedef enum evf_method {
  EVF_METHOD_EVIDENTIAL = 0,
  EVF_METHOD_SMA = 1
} evf_method;

typedef struct evf_series evf_series;
typedef struct evf_forecaster evf_forecaster;
typedef struct evf_backtest evf_backtest;

/* Column selection: a non-NULL name wins over the index. A time column
 * index < 0 with a NULL name means "no time column" (t = 1..n). */
typedef struct evf_csv_spec {
  const char* value_column_name;
  long value_column_index;
  const char* time_column_name;
  long time_column_index;
  int has_header;
  char delimiter;
} evf_csv_spec;

typedef struct evf_metrics {
  double mad;
  double mape_pct;
  double rmse;
  double nrmse_pct; /* valid only when has_nrmse != 0 */
  int has_nrmse;
  double smape_pct;
  size_t n;
  double truth_min;
  double truth_max;
} evf_metrics;

typedef struct evf_state {
  evf_strategy strategy;
  double p_a;
  double p_abar;
  uint64_t pairs;
  double sum_prior;
  double y_last;
  uint64_t count;
  double t_last;
} evf_state;

typedef struct evf_latency {
  size_t samples;
  double p50_ns;
  double p99_ns;
  double mean_ns;
} evf_latency;

typedef struct evf_bench_config {
  size_t seed_len;
  size_t repeats;
  size_t warmup;
  evf_strategy strategy;
} evf_bench_config;

typedef struct evf_bench_report {
  size_t history_len;
  size_t updates_per_run;
  size_t repeats;
  size_t warmup;
  int64_t best_total_ns;
  int64_t mean_total_ns;
  evf_latency per_update;
} evf_bench_report;

EVIFORE_API const char* evf_version(void);
EVIFORE_API const char* evf_status_name(evf_status status);
EVIFORE_API const char* evf_last_error(void);
/* 1-based input row tied to the last error, or 0. */
EVIFORE_API size_t evf_last_error_row(void);

/* Series */
EVIFORE_API evf_status evf_series_from_values(const double* values, size_t n, evf_series** out);
EVIFORE_API evf_status evf_series_from_points(const double* t, const double* y, size_t n, evf_series** out);
EVIFORE_API evf_status evf_series_load_csv(const char* path, const evf_csv_spec* spec, evf_series** out);
EVIFORE_API evf_status evf_series_save_csv(const evf_series* series, const char* path);
EVIFORE_API evf_status evf_series_synthetic(size_t n, uint64_t seed, evf_series** out);
EVIFORE_API size_t evf_series_length(const evf_series* series);
EVIFORE_API evf_status evf_series_point(const evf_series* series, size_t index, double* t, double* y);
EVIFORE_API void evf_series_free(evf_series* series);

/* Evidence and valuation primitives. `index` is 1-based. */
EVIFORE_API evf_status evf_bpa_from_pair(double y_prev, double y_next, double* m_a, double* m_abar);
EVIFORE_API evf_status evf_evidential_value(const evf_series* series, size_t index, evf_strategy strategy,
                                            double* out);

/* Forecaster */
EVIFORE_API evf_status evf_forecaster_create(const evf_series* series, evf_strategy strategy,
                                             evf_forecaster** out);
EVIFORE_API evf_status evf_forecaster_predict(const evf_forecaster* f, double* prediction);
EVIFORE_API evf_status evf_forecaster_update(evf_forecaster* f, double value, double* prediction);
EVIFORE_API evf_status evf_forecaster_update_at(evf_forecaster* f, double t, double value, double* prediction);
EVIFORE_API evf_status evf_forecaster_gbpa(const evf_forecaster* f, double* out);
EVIFORE_API evf_status evf_forecaster_global_value(const evf_forecaster* f, double* out);
EVIFORE_API evf_status evf_forecaster_state(const evf_forecaster* f, evf_state* out);
EVIFORE_API evf_status evf_forecaster_save(const evf_forecaster* f, const char* path);
EVIFORE_API evf_status evf_forecaster_load(const char* path, evf_forecaster** out);
EVIFORE_API void evf_forecaster_free(evf_forecaster* f);

/* Metrics */
EVIFORE_API evf_status evf_compute_metrics(const double* predicted, const double* truth, size_t n,
                                           evf_metrics* out);

/* Backtest. `k` is the SMA window and is ignored for the evidential method. */
EVIFORE_API evf_status evf_backtest_run(const evf_series* series, size_t seed_len, evf_strategy strategy,
                                        evf_method method, size_t k, evf_backtest** out);
EVIFORE_API size_t evf_backtest_count(const evf_backtest* bt);
EVIFORE_API evf_status evf_backtest_row(const evf_backtest* bt, size_t index, double* t, double* y_true,
                                        double* y_pred);
EVIFORE_API evf_status evf_backtest_metrics(const evf_backtest* bt, evf_metrics* out);
EVIFORE_API evf_status evf_backtest_timing(const evf_backtest* bt, int64_t* elapsed_ns, evf_latency* per_update);
EVIFORE_API void evf_backtest_free(evf_backtest* bt);

/* Latency benchmark of the streaming update path. */
EVIFORE_API evf_status evf_bench(const evf_series* series, const evf_bench_config* config, evf_bench_report* out);

#ifdef __cplusplus
}
#endif

#endif /* EVIFORE_EVIFORE_H */
