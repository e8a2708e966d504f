#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace evifore {

// Error measures of a one-step-ahead run. Percentages are scaled by 100.
// NRMSE is normalized by max(truth) - min(truth) over the evaluated values
// and is absent when that range is zero.
struct MetricsReport {
  double mad = 0.0;
  double mape_pct = 0.0;
  double rmse = 0.0;
  std::optional<double> nrmse_pct;
  double smape_pct = 0.0;
  std::size_t n = 0;
  double truth_min = 0.0;
  double truth_max = 0.0;
};

// Throws EmptyInput, LengthMismatch, or NonPositiveValue for a truth value <= 0.
MetricsReport compute_metrics(std::span<const double> predicted, std::span<const double> truth);

double mean_absolute_difference(std::span<const double> predicted, std::span<const double> truth);
double mape_pct(std::span<const double> predicted, std::span<const double> truth);
double rmse(std::span<const double> predicted, std::span<const double> truth);
// Throws ZeroRange when every truth value is equal.
double nrmse_pct(std::span<const double> predicted, std::span<const double> truth);
double smape_pct(std::span<const double> predicted, std::span<const double> truth);

} // namespace evifore
