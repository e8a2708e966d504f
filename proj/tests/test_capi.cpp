// Exercises the exported C surface through the shared library only.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "evifore/evifore.h"

namespace {

const double kExample[] = {10, 12, 11, 14, 10, 15};

evf_series* example_series() {
  evf_series* s = nullptr;
  REQUIRE(evf_series_from_values(kExample, 6, &s) == EVF_OK);
  return s;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("evifore_capi_") + name)).string();
}

} // namespace

TEST_CASE("series handles") {
  evf_series* s = example_series();
  CHECK(evf_series_length(s) == 6);
  double t = 0, y = 0;
  CHECK(evf_series_point(s, 2, &t, &y) == EVF_OK);
  CHECK(t == 3);
  CHECK(y == 11);
  CHECK(evf_series_point(s, 6, &t, &y) == EVF_ERR_INDEX_OUT_OF_RANGE);
  evf_series_free(s);

  const double bad[] = {5, 0, 3};
  evf_series* none = nullptr;
  CHECK(evf_series_from_values(bad, 3, &none) == EVF_ERR_NON_POSITIVE_VALUE);
  CHECK(none == nullptr);
  CHECK(std::string(evf_last_error()).find("> 0") != std::string::npos);
  CHECK(evf_series_from_values(nullptr, 3, &none) == EVF_ERR_INVALID_ARGUMENT);

  const double ts[] = {1, 1};
  const double ys[] = {1, 2};
  CHECK(evf_series_from_points(ts, ys, 2, &none) == EVF_ERR_NON_MONOTONE_TIMESTAMP);
  evf_series_free(nullptr);
}

TEST_CASE("primitives") {
  double ma = 0, mab = 0;
  CHECK(evf_bpa_from_pair(14, 10, &ma, &mab) == EVF_OK);
  CHECK(ma == doctest::Approx(1.4));
  CHECK(mab == doctest::Approx(-0.4));
  CHECK(evf_bpa_from_pair(-1, 10, &ma, &mab) == EVF_ERR_NON_POSITIVE_VALUE);

  evf_series* s = example_series();
  double ev = 0;
  CHECK(evf_evidential_value(s, 2, EVF_STRATEGY_RATIO, &ev) == EVF_OK);
  CHECK(ev == doctest::Approx(15.8));
  CHECK(evf_evidential_value(s, 1, EVF_STRATEGY_SLOPE, &ev) == EVF_OK);
  CHECK(ev == 16.0);
  CHECK(evf_evidential_value(s, 6, EVF_STRATEGY_RATIO, &ev) == EVF_ERR_INDEX_OUT_OF_RANGE);
  CHECK(evf_evidential_value(s, 1, static_cast<evf_strategy>(9), &ev) == EVF_ERR_INVALID_ARGUMENT);
  evf_series_free(s);
}

TEST_CASE("forecaster lifecycle and snapshot") {
  evf_series* s = example_series();
  evf_forecaster* f = nullptr;
  REQUIRE(evf_forecaster_create(s, EVF_STRATEGY_RATIO, &f) == EVF_OK);
  double pred = 0;
  CHECK(evf_forecaster_predict(f, &pred) == EVF_OK);
  CHECK(std::abs(pred - 15.75) <= 5e-3);

  evf_state st{};
  CHECK(evf_forecaster_state(f, &st) == EVF_OK);
  CHECK(st.pairs == 5);
  CHECK(st.count == 6);
  CHECK(st.sum_prior == 57);

  const std::string path = temp_path("snap.json");
  CHECK(evf_forecaster_save(f, path.c_str()) == EVF_OK);
  evf_forecaster* g = nullptr;
  REQUIRE(evf_forecaster_load(path.c_str(), &g) == EVF_OK);

  double a = 0, b = 0;
  CHECK(evf_forecaster_update(f, 16, &a) == EVF_OK);
  CHECK(evf_forecaster_update(g, 16, &b) == EVF_OK);
  CHECK(a == b);
  CHECK(std::abs(a - 16.75) <= 5e-3);
  CHECK(evf_forecaster_update(f, 0, &a) == EVF_ERR_NON_POSITIVE_VALUE);
  CHECK(evf_forecaster_update_at(f, 7, 3, &a) == EVF_ERR_NON_MONOTONE_TIMESTAMP);

  std::ofstream(path) << "{\"version\": 99}";
  evf_forecaster* h = nullptr;
  CHECK(evf_forecaster_load(path.c_str(), &h) == EVF_ERR_VERSION_MISMATCH);
  std::ofstream(path) << "{\"vers";
  CHECK(evf_forecaster_load(path.c_str(), &h) == EVF_ERR_CORRUPT_SNAPSHOT);
  std::filesystem::remove(path);

  evf_forecaster_free(f);
  evf_forecaster_free(g);
  evf_series_free(s);
}

TEST_CASE("total conflict surfaces as its own status") {
  const double v[] = {2, 1, 3};
  evf_series* s = nullptr;
  REQUIRE(evf_series_from_values(v, 3, &s) == EVF_OK);
  evf_forecaster* f = nullptr;
  REQUIRE(evf_forecaster_create(s, EVF_STRATEGY_RATIO, &f) == EVF_OK);
  double pred = 0;
  CHECK(evf_forecaster_predict(f, &pred) == EVF_ERR_TOTAL_CONFLICT);
  CHECK(std::string(evf_status_name(EVF_ERR_TOTAL_CONFLICT)) == "TotalConflict");
  evf_forecaster_free(f);
  evf_series_free(s);
}

TEST_CASE("csv loading and saving") {
  const std::string path = temp_path("in.csv");
  std::ofstream(path) << "day,close\n1,10\n2,12\n3,oops\n";
  evf_csv_spec spec{};
  spec.value_column_name = "close";
  spec.time_column_index = -1;
  spec.has_header = 1;
  evf_series* s = nullptr;
  CHECK(evf_series_load_csv(path.c_str(), &spec, &s) == EVF_ERR_PARSE);
  CHECK(evf_last_error_row() == 4);

  std::ofstream(path) << "day,close\n1,10\n2,12\n3,11\n";
  REQUIRE(evf_series_load_csv(path.c_str(), &spec, &s) == EVF_OK);
  CHECK(evf_series_length(s) == 3);
  const std::string out = temp_path("out.csv");
  CHECK(evf_series_save_csv(s, out.c_str()) == EVF_OK);
  evf_csv_spec two{};
  two.value_column_index = 1;
  two.time_column_index = 0;
  evf_series* back = nullptr;
  REQUIRE(evf_series_load_csv(out.c_str(), &two, &back) == EVF_OK);
  double y = 0;
  CHECK(evf_series_point(back, 2, nullptr, &y) == EVF_OK);
  CHECK(y == 11);
  evf_series_free(back);
  evf_series_free(s);
  std::filesystem::remove(path);
  std::filesystem::remove(out);
  CHECK(evf_series_load_csv("/nonexistent.csv", nullptr, &s) == EVF_ERR_IO);
}

TEST_CASE("metrics and backtests") {
  const double pred[] = {12, 8};
  const double truth[] = {10, 10};
  evf_metrics m{};
  CHECK(evf_compute_metrics(pred, truth, 2, &m) == EVF_OK);
  CHECK(m.mad == doctest::Approx(2));
  CHECK(m.has_nrmse == 0);
  CHECK(evf_compute_metrics(pred, truth, 0, &m) == EVF_ERR_EMPTY_INPUT);

  evf_series* s = example_series();
  evf_backtest* bt = nullptr;
  REQUIRE(evf_backtest_run(s, 4, EVF_STRATEGY_RATIO, EVF_METHOD_EVIDENTIAL, 1, &bt) == EVF_OK);
  CHECK(evf_backtest_count(bt) == 2);
  double t = 0, yt = 0, yp = 0;
  CHECK(evf_backtest_row(bt, 1, &t, &yt, &yp) == EVF_OK);
  CHECK(t == 6);
  CHECK(yt == 15);
  CHECK(evf_backtest_metrics(bt, &m) == EVF_OK);
  CHECK(m.n == 2);
  int64_t elapsed = -1;
  evf_latency lat{};
  CHECK(evf_backtest_timing(bt, &elapsed, &lat) == EVF_OK);
  CHECK(elapsed >= 0);
  CHECK(lat.samples == 1);
  evf_backtest_free(bt);

  REQUIRE(evf_backtest_run(s, 4, EVF_STRATEGY_RATIO, EVF_METHOD_SMA, 1, &bt) == EVF_OK);
  CHECK(evf_backtest_row(bt, 0, &t, &yt, &yp) == EVF_OK);
  CHECK(yp == 14);
  evf_backtest_free(bt);
  CHECK(evf_backtest_run(s, 6, EVF_STRATEGY_RATIO, EVF_METHOD_SMA, 1, &bt) == EVF_ERR_SERIES_TOO_SHORT);
  evf_series_free(s);
}

TEST_CASE("bench through the C surface") {
  evf_series* s = nullptr;
  REQUIRE(evf_series_synthetic(1000, 3, &s) == EVF_OK);
  evf_bench_config config{4, 2, 100, EVF_STRATEGY_RATIO};
  evf_bench_report report{};
  CHECK(evf_bench(s, &config, &report) == EVF_OK);
  CHECK(report.updates_per_run == 996);
  CHECK(report.per_update.samples == 2 * 896);
  config.repeats = 0;
  CHECK(evf_bench(s, &config, &report) == EVF_ERR_INVALID_ARGUMENT);
  evf_series_free(s);
}
