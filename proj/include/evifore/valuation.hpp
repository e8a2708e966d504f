#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "evifore/domain.hpp"

namespace evifore {

// How a past observation is projected onto the next time step.
//
//   RatioOffset         y_n + y_i / y_n
//   SlopeExtrapolation  y_n + (y_n - y_i) / (t_n - t_i) * (t_n - t_{n-1})
//
// RatioOffset reproduces the reference worked example cell for cell and
// admits an O(1) global value. SlopeExtrapolation is the formal
// extrapolation rule; its global value needs the full history (O(n)).
enum class EvStrategy { RatioOffset, SlopeExtrapolation };

std::string_view to_string(EvStrategy strategy) noexcept;
// Accepts "ratio"/"ratio-offset" and "slope"/"slope-extrapolation".
EvStrategy parse_strategy(std::string_view name);

// Running aggregates behind the global value.
struct ValuationState {
  double sum_prior = 0.0;   // y_1 + ... + y_{n-1}
  double y_last = 0.0;
  std::uint64_t count = 0;
  double t_last = 0.0;
  double t_prev = 0.0;

  friend bool operator==(const ValuationState&, const ValuationState&) = default;
};

// i is 1-based, 1 <= i <= n-1. Throws SeriesTooShort / IndexOutOfRange.
double evidential_value(const TimeSeries& series, std::size_t i, EvStrategy strategy);

ValuationState valuation_from_series(const TimeSeries& series);

// Throws NonPositiveValue, or NonMonotoneTimestamp when t <= t_last.
ValuationState valuation_update(const ValuationState& state, TimePoint point);

// Mean of the n-1 evidential values in O(1). Throws SeriesTooShort.
double global_value_ratio(const ValuationState& state);

// Mean of the n-1 slope-extrapolated values, one pass over the history.
double global_value_slope(std::span<const TimePoint> history);

// Dispatches on strategy. SlopeExtrapolation reads `history`, which must hold
// exactly state.count points.
double global_value(const ValuationState& state, EvStrategy strategy,
                    std::span<const TimePoint> history = {});

} // namespace evifore
