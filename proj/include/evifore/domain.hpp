#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace evifore {

struct TimePoint {
  double t = 0.0;
  double y = 0.0;

  friend bool operator==(const TimePoint&, const TimePoint&) = default;
};

// Ordered observations with strictly increasing timestamps and finite,
// strictly positive values. Every constructor validates; an instance that
// exists is always valid.
class TimeSeries {
public:
  TimeSeries() = default;

  // t_i = i (1-based), matching positional indexing.
  static TimeSeries from_values(std::span<const double> values);
  static TimeSeries from_points(std::vector<TimePoint> points);

  // Appends one observation; throws NonPositiveValue / NonMonotoneTimestamp.
  void push_back(TimePoint point);
  // Appends with t = last t + 1 (or 1 for an empty series).
  void push_back(double value);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const TimePoint& operator[](std::size_t i) const { return points_[i]; }
  const TimePoint& front() const { return points_.front(); }
  const TimePoint& back() const { return points_.back(); }
  std::span<const TimePoint> points() const noexcept { return points_; }
  std::vector<double> values() const;

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  // Copy of the first `n` observations.
  TimeSeries prefix(std::size_t n) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
  std::vector<TimePoint> points_;
};

// Throws NonPositiveValue unless y is finite and > 0.
void require_positive(double y);

// Geometric random walk starting at 1000 with 1% daily log-volatility.
// Deterministic for a given seed on a given standard library.
TimeSeries synthetic_series(std::size_t n, std::uint64_t seed);

} // namespace evifore
