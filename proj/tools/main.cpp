// evifore command line: forecast, backtest, bench, demo.
//
// stdout carries data only; diagnostics go to stderr. Exit codes: 0 ok,
// 2 data error, 3 degenerate conflict, 64 usage.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "demo.hpp"
#include "handles.hpp"

namespace {

using namespace evifore::cli;
using nlohmann::json;

struct InputOptions {
  std::string path;
  std::string value_col = "0";
  std::string time_col;
  bool header = false;
  char delimiter = ',';
};

bool is_index(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

void add_input_options(CLI::App* cmd, InputOptions& in, bool required) {
  auto* opt = cmd->add_option("--input,-i", in.path, "CSV file with one observation per row");
  if (required) opt->required();
  cmd->add_option("--value-col", in.value_col, "Value column: 0-based index or header name")->capture_default_str();
  cmd->add_option("--time-col", in.time_col, "Time column: 0-based index or header name (default: t = 1..n)");
  cmd->add_flag("--header", in.header, "First row is a header (implied by named columns)");
  cmd->add_option("--delimiter", in.delimiter, "Field delimiter")->capture_default_str();
}

SeriesPtr load_series(const InputOptions& in) {
  evf_csv_spec spec{};
  spec.value_column_index = 0;
  spec.time_column_index = -1;
  spec.has_header = in.header ? 1 : 0;
  spec.delimiter = in.delimiter;
  if (is_index(in.value_col)) {
    spec.value_column_index = std::stol(in.value_col);
  } else {
    spec.value_column_name = in.value_col.c_str();
    spec.has_header = 1;
  }
  if (!in.time_col.empty()) {
    if (is_index(in.time_col)) {
      spec.time_column_index = std::stol(in.time_col);
    } else {
      spec.time_column_name = in.time_col.c_str();
      spec.has_header = 1;
    }
  }
  evf_series* raw = nullptr;
  check(evf_series_load_csv(in.path.c_str(), &spec, &raw));
  SeriesPtr series(raw);
  if (log_level() >= 1) std::cerr << "evifore: loaded " << evf_series_length(raw) << " points from " << in.path << '\n';
  return series;
}

evf_strategy strategy_from(const std::string& name) {
  return name == "slope" ? EVF_STRATEGY_SLOPE : EVF_STRATEGY_RATIO;
}

std::string fixed(double v, int precision) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

json metrics_json(const evf_metrics& m) {
  json j = {{"n", m.n}, {"mad", m.mad}, {"mape_pct", m.mape_pct}, {"rmse", m.rmse}, {"smape_pct", m.smape_pct},
            {"truth_min", m.truth_min}, {"truth_max", m.truth_max}};
  j["nrmse_pct"] = m.has_nrmse ? json(m.nrmse_pct) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------- forecast

struct ForecastOptions {
  InputOptions input;
  std::string strategy = "ratio";
  std::string format = "table";
  int precision = 4;
  std::string state_in;
  std::string state_out;
};

int cmd_forecast(const ForecastOptions& o) {
  ForecasterPtr forecaster;
  if (!o.state_in.empty()) {
    evf_forecaster* raw = nullptr;
    check(evf_forecaster_load(o.state_in.c_str(), &raw));
    forecaster.reset(raw);
    if (!o.input.path.empty()) {
      SeriesPtr series = load_series(o.input);
      for (size_t i = 0; i < evf_series_length(series.get()); ++i) {
        double y = 0;
        check(evf_series_point(series.get(), i, nullptr, &y));
        check(evf_forecaster_update(forecaster.get(), y, nullptr));
      }
    }
  } else {
    if (o.input.path.empty()) throw CLI::ValidationError("--input", "required unless --state is given");
    SeriesPtr series = load_series(o.input);
    evf_forecaster* raw = nullptr;
    check(evf_forecaster_create(series.get(), strategy_from(o.strategy), &raw));
    forecaster.reset(raw);
  }

  double prediction = 0;
  check(evf_forecaster_predict(forecaster.get(), &prediction));
  if (!o.state_out.empty()) check(evf_forecaster_save(forecaster.get(), o.state_out.c_str()));

  if (o.format == "json") {
    evf_state st{};
    double gbpa = 0, gv = 0;
    check(evf_forecaster_state(forecaster.get(), &st));
    check(evf_forecaster_gbpa(forecaster.get(), &gbpa));
    check(evf_forecaster_global_value(forecaster.get(), &gv));
    json j = {{"prediction", prediction}, {"gbpa", gbpa}, {"global_value", gv}, {"n", st.count},
              {"strategy", st.strategy == EVF_STRATEGY_SLOPE ? "slope" : "ratio"}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << fixed(prediction, o.precision) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- backtest

struct BacktestOptions {
  InputOptions input;
  std::size_t seed_len = 4;
  std::vector<std::string> methods{"evidential"};
  std::size_t k = 1;
  std::string strategy = "ratio";
  std::string format = "table";
  int precision = 4;
  bool metrics_only = false;
  bool timing = false;
};

struct Run {
  std::string method;
  BacktestPtr result;
};

int cmd_backtest(const BacktestOptions& o) {
  SeriesPtr series = load_series(o.input);

  std::vector<std::string> methods = o.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  // Methods are independent; run them concurrently and report in name order.
  std::vector<std::future<Run>> pending;
  for (const std::string& name : methods) {
    pending.push_back(std::async(std::launch::async, [&, name] {
      evf_backtest* raw = nullptr;
      const evf_method method = name == "sma" ? EVF_METHOD_SMA : EVF_METHOD_EVIDENTIAL;
      check(evf_backtest_run(series.get(), o.seed_len, strategy_from(o.strategy), method, o.k, &raw));
      return Run{name, BacktestPtr(raw)};
    }));
  }
  std::vector<Run> runs;
  for (auto& p : pending) runs.push_back(p.get());

  struct Report {
    std::string label;
    std::vector<std::array<double, 3>> rows;
    evf_metrics metrics{};
    int64_t elapsed_ns = 0;
    evf_latency latency{};
  };
  std::vector<Report> reports;
  for (const Run& run : runs) {
    Report r;
    r.label = run.method == "sma" ? "sma" : "evidential";
    const size_t count = evf_backtest_count(run.result.get());
    for (size_t i = 0; i < count; ++i) {
      std::array<double, 3> row{};
      check(evf_backtest_row(run.result.get(), i, &row[0], &row[1], &row[2]));
      r.rows.push_back(row);
    }
    check(evf_backtest_metrics(run.result.get(), &r.metrics));
    check(evf_backtest_timing(run.result.get(), &r.elapsed_ns, &r.latency));
    if (log_level() >= 1) {
      std::cerr << "evifore: " << r.label << " backtest: " << count << " predictions in " << r.elapsed_ns << " ns\n";
    }
    reports.push_back(std::move(r));
  }

  const int p = o.precision;
  auto nrmse_text = [&](const evf_metrics& m) { return m.has_nrmse ? fixed(m.nrmse_pct, p) : std::string("NA"); };

  if (o.format == "json") {
    json doc;
    doc["seed_len"] = o.seed_len;
    doc["strategy"] = o.strategy;
    doc["nrmse_normalization"] = "max(truth) - min(truth) over the evaluated (post-seed) window";
    json arr = json::array();
    for (const Report& r : reports) {
      json j;
      j["method"] = r.label;
      if (r.label == "sma") j["k"] = o.k;
      if (!o.metrics_only) {
        json preds = json::array();
        for (const auto& row : r.rows) preds.push_back({{"t", row[0]}, {"y_true", row[1]}, {"y_pred", row[2]}});
        j["predictions"] = std::move(preds);
      }
      j["metrics"] = metrics_json(r.metrics);
      if (o.timing) {
        j["timing"] = {{"elapsed_ns", r.elapsed_ns}, {"samples", r.latency.samples},
                       {"p50_ns", r.latency.p50_ns}, {"p99_ns", r.latency.p99_ns}};
      }
      arr.push_back(std::move(j));
    }
    doc["runs"] = std::move(arr);
    std::cout << doc.dump(2) << '\n';
  } else if (o.format == "csv") {
    if (!o.metrics_only) {
      std::cout << "method,t,y_true,y_pred\n";
      for (const Report& r : reports) {
        for (const auto& row : r.rows) {
          std::cout << r.label << ',' << fixed(row[0], 0) << ',' << fixed(row[1], p) << ',' << fixed(row[2], p) << '\n';
        }
      }
      std::cout << '\n';
    }
    std::cout << "method,n,mad,mape_pct,rmse,nrmse_pct,smape_pct" << (o.timing ? ",elapsed_ns,p50_ns,p99_ns" : "")
              << '\n';
    for (const Report& r : reports) {
      const auto& m = r.metrics;
      std::cout << r.label << ',' << m.n << ',' << fixed(m.mad, p) << ',' << fixed(m.mape_pct, p) << ','
                << fixed(m.rmse, p) << ',' << nrmse_text(m) << ',' << fixed(m.smape_pct, p);
      if (o.timing) std::cout << ',' << r.elapsed_ns << ',' << r.latency.p50_ns << ',' << r.latency.p99_ns;
      std::cout << '\n';
    }
  } else {
    const int w = p + 10;
    for (const Report& r : reports) {
      if (!o.metrics_only) {
        std::cout << r.label << " predictions\n"
                  << std::setw(8) << "t" << std::setw(w) << "actual" << std::setw(w) << "predicted" << '\n';
        for (const auto& row : r.rows) {
          std::cout << std::setw(8) << fixed(row[0], 0) << std::setw(w) << fixed(row[1], p) << std::setw(w)
                    << fixed(row[2], p) << '\n';
        }
        std::cout << '\n';
      }
    }
    std::cout << std::left << std::setw(12) << "method" << std::right << std::setw(6) << "n" << std::setw(w) << "MAD"
              << std::setw(w) << "MAPE(%)" << std::setw(w) << "RMSE" << std::setw(w) << "NRMSE(%)" << std::setw(w)
              << "SMAPE(%)" << '\n';
    for (const Report& r : reports) {
      const auto& m = r.metrics;
      std::cout << std::left << std::setw(12) << r.label << std::right << std::setw(6) << m.n << std::setw(w)
                << fixed(m.mad, p) << std::setw(w) << fixed(m.mape_pct, p) << std::setw(w) << fixed(m.rmse, p)
                << std::setw(w) << nrmse_text(m) << std::setw(w) << fixed(m.smape_pct, p) << '\n';
    }
    if (o.timing) {
      for (const Report& r : reports) {
        std::cout << r.label << " elapsed " << r.elapsed_ns << " ns, per update p50 " << r.latency.p50_ns
                  << " ns, p99 " << r.latency.p99_ns << " ns\n";
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  InputOptions input;
  std::size_t n_points = 13777;
  std::size_t repeats = 5;
  std::uint64_t seed = 42;
  std::size_t seed_len = 4;
  std::size_t warmup = 100;
  std::string strategy = "ratio";
};

int cmd_bench(const BenchOptions& o) {
  if (o.repeats == 0) throw CLI::ValidationError("--repeats", "must be at least 1");
  SeriesPtr series;
  if (!o.input.path.empty()) {
    series = load_series(o.input);
  } else {
    evf_series* raw = nullptr;
    check(evf_series_synthetic(o.n_points, o.seed, &raw));
    series.reset(raw);
  }
  evf_bench_config config{o.seed_len, o.repeats, o.warmup, strategy_from(o.strategy)};
  evf_bench_report report{};
  check(evf_bench(series.get(), &config, &report));

  json doc;
  if (o.input.path.empty()) {
    doc["source"] = {{"kind", "synthetic"}, {"n_points", o.n_points}, {"seed", o.seed}};
  } else {
    doc["source"] = {{"kind", "file"}, {"path", o.input.path}, {"n_points", evf_series_length(series.get())}};
  }
  doc["strategy"] = o.strategy;
  doc["history_len"] = report.history_len;
  doc["updates_per_run"] = report.updates_per_run;
  doc["repeats"] = report.repeats;
  doc["warmup"] = report.warmup;
  doc["best_total_ns"] = report.best_total_ns;
  doc["best_total_s"] = static_cast<double>(report.best_total_ns) * 1e-9;
  doc["mean_total_ns"] = report.mean_total_ns;
  doc["per_update"] = {{"samples", report.per_update.samples}, {"p50_ns", report.per_update.p50_ns},
                       {"p99_ns", report.per_update.p99_ns}, {"mean_ns", report.per_update.mean_ns}};
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidential one-step-ahead time-series forecaster"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(evf_version()));

  const std::vector<std::string> strategies{"ratio", "slope"};
  const std::vector<std::string> formats{"table", "csv", "json"};

  ForecastOptions fo;
  auto* forecast = app.add_subcommand("forecast", "Predict the next value of a series");
  add_input_options(forecast, fo.input, false);
  forecast->add_option("--strategy", fo.strategy, "Evidential value strategy")->check(CLI::IsMember(strategies))
      ->capture_default_str();
  forecast->add_option("--format", fo.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  forecast->add_option("--precision", fo.precision, "Decimal places")->check(CLI::Range(0, 17))->capture_default_str();
  forecast->add_option("--state", fo.state_in, "Resume from a snapshot; --input rows are then streamed as updates");
  forecast->add_option("--save-state", fo.state_out, "Write the forecaster snapshot here");

  BacktestOptions bo;
  auto* backtest = app.add_subcommand("backtest", "Rolling one-step-ahead backtest with error metrics");
  add_input_options(backtest, bo.input, true);
  backtest->add_option("--seed-len", bo.seed_len, "Observations used before the first prediction")
      ->capture_default_str();
  backtest->add_option("--method", bo.methods, "evidential and/or sma (comma separated)")
      ->delimiter(',')
      ->check(CLI::IsMember({"evidential", "sma"}))
      ->capture_default_str();
  backtest->add_option("--k", bo.k, "SMA window")->check(CLI::PositiveNumber)->capture_default_str();
  backtest->add_option("--strategy", bo.strategy, "Evidential value strategy")->check(CLI::IsMember(strategies))
      ->capture_default_str();
  backtest->add_option("--format", bo.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  backtest->add_option("--precision", bo.precision, "Decimal places")->check(CLI::Range(0, 17))->capture_default_str();
  backtest->add_flag("--metrics-only", bo.metrics_only, "Omit per-step predictions");
  backtest->add_flag("--timing", bo.timing, "Include wall-clock timing (non-deterministic)");

  BenchOptions no;
  auto* bench = app.add_subcommand("bench", "Measure streaming update latency; prints JSON");
  add_input_options(bench, no.input, false);
  bench->add_option("--n-points", no.n_points, "Length of the synthetic series")->capture_default_str();
  bench->add_option("--repeats", no.repeats, "Number of timed runs")->capture_default_str();
  bench->add_option("--seed", no.seed, "Synthetic generator seed")->capture_default_str();
  bench->add_option("--seed-len", no.seed_len, "History fused before timing starts")->capture_default_str();
  bench->add_option("--warmup", no.warmup, "Updates per run excluded from latency percentiles")->capture_default_str();
  bench->add_option("--strategy", no.strategy, "Evidential value strategy")->check(CLI::IsMember(strategies))
      ->capture_default_str();

  std::string demo_strategy = "ratio";
  std::string demo_format = "table";
  int demo_precision = 4;
  auto* demo = app.add_subcommand("demo", "Reproduce the worked example with pass/fail checks");
  demo->add_option("--strategy", demo_strategy, "Evidential value strategy")->check(CLI::IsMember(strategies))
      ->capture_default_str();
  demo->add_option("--format", demo_format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  demo->add_option("--precision", demo_precision, "Decimal places")->check(CLI::Range(0, 17))->capture_default_str();

  try {
    app.parse(argc, argv);
    if (*forecast) return cmd_forecast(fo);
    if (*backtest) return cmd_backtest(bo);
    if (*bench) return cmd_bench(no);
    if (*demo) return run_demo(strategy_from(demo_strategy), demo_format == "json", demo_precision, std::cout);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "evifore: error: " << e.what() << '\n';
    return exit_code_for(e.status());
  } catch (const std::exception& e) {
    std::cerr << "evifore: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
