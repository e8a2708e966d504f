#include "evifore/domain.hpp"

#include <cmath>
#include <random>
#include <string>

#include "evifore/error.hpp"

namespace evifore {

void require_positive(double y) {
  if (!std::isfinite(y) || y <= 0.0) {
    throw Error(ErrorCode::NonPositiveValue,
                "observation must be finite and > 0, got " + std::to_string(y));
  }
}

TimeSeries TimeSeries::from_values(std::span<const double> values) {
  TimeSeries series;
  series.points_.reserve(values.size());
  for (double v : values) series.push_back(v);
  return series;
}

TimeSeries TimeSeries::from_points(std::vector<TimePoint> points) {
  TimeSeries series;
  series.points_.reserve(points.size());
  for (const TimePoint& p : points) series.push_back(p);
  return series;
}

void TimeSeries::push_back(TimePoint point) {
  require_positive(point.y);
  if (!std::isfinite(point.t)) {
    throw Error(ErrorCode::NonMonotoneTimestamp, "timestamp must be finite");
  }
  if (!points_.empty() && !(point.t > points_.back().t)) {
    throw Error(ErrorCode::NonMonotoneTimestamp,
                "timestamp " + std::to_string(point.t) + " does not follow " +
                    std::to_string(points_.back().t));
  }
  points_.push_back(point);
}

void TimeSeries::push_back(double value) {
  const double t = points_.empty() ? 1.0 : points_.back().t + 1.0;
  push_back(TimePoint{t, value});
}

std::vector<double> TimeSeries::values() const {
  std::vector<double> out;
  out.reserve(points_.size());
  for (const TimePoint& p : points_) out.push_back(p.y);
  return out;
}

TimeSeries TimeSeries::prefix(std::size_t n) const {
  if (n > points_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "prefix longer than series");
  }
  TimeSeries out;
  out.points_.assign(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

TimeSeries synthetic_series(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> log_return(0.0, 0.01);
  std::vector<double> values;
  values.reserve(n);
  double level = 1000.0;
  for (std::size_t i = 0; i < n; ++i) {
    values.push_back(level);
    level *= std::exp(log_return(rng));
  }
  return TimeSeries::from_values(values);
}

} // namespace evifore
