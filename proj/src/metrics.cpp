#include "evifore/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "evifore/error.hpp"

namespace evifore {

namespace {

void check_inputs(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::LengthMismatch, "prediction and truth lengths differ");
  }
  if (truth.empty()) throw Error(ErrorCode::EmptyInput, "no predictions to score");
  for (double y : truth) {
    if (!std::isfinite(y) || y <= 0.0) throw Error(ErrorCode::NonPositiveValue, "truth values must be > 0");
  }
}

template <typename Term>
double mean_of(std::span<const double> predicted, std::span<const double> truth, Term term) {
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) sum += term(predicted[i], truth[i]);
  return sum / static_cast<double>(truth.size());
}

} // namespace

double mean_absolute_difference(std::span<const double> predicted, std::span<const double> truth) {
  check_inputs(predicted, truth);
  return mean_of(predicted, truth, [](double p, double y) { return std::abs(p - y); });
}

double mape_pct(std::span<const double> predicted, std::span<const double> truth) {
  check_inputs(predicted, truth);
  return 100.0 * mean_of(predicted, truth, [](double p, double y) { return std::abs(p - y) / y; });
}

double rmse(std::span<const double> predicted, std::span<const double> truth) {
  check_inputs(predicted, truth);
  return std::sqrt(mean_of(predicted, truth, [](double p, double y) { return (p - y) * (p - y); }));
}

double nrmse_pct(std::span<const double> predicted, std::span<const double> truth) {
  const double err = rmse(predicted, truth);
  const auto [lo, hi] = std::minmax_element(truth.begin(), truth.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw Error(ErrorCode::ZeroRange, "NRMSE undefined: truth values have zero range");
  return 100.0 * err / range;
}

double smape_pct(std::span<const double> predicted, std::span<const double> truth) {
  check_inputs(predicted, truth);
  return 200.0 * mean_of(predicted, truth, [](double p, double y) { return std::abs(p - y) / (p + y); });
}

MetricsReport compute_metrics(std::span<const double> predicted, std::span<const double> truth) {
  MetricsReport report;
  report.mad = mean_absolute_difference(predicted, truth);
  report.mape_pct = mape_pct(predicted, truth);
  report.rmse = rmse(predicted, truth);
  report.smape_pct = smape_pct(predicted, truth);
  report.n = truth.size();
  const auto [lo, hi] = std::minmax_element(truth.begin(), truth.end());
  report.truth_min = *lo;
  report.truth_max = *hi;
  if (*hi > *lo) report.nrmse_pct = 100.0 * report.rmse / (*hi - *lo);
  return report;
}

} // namespace evifore
