#include "evifore/valuation.hpp"

#include <string>

#include "evifore/error.hpp"

namespace evifore {

std::string_view to_string(EvStrategy strategy) noexcept {
  switch (strategy) {
    case EvStrategy::RatioOffset: return "ratio";
    case EvStrategy::SlopeExtrapolation: return "slope";
  }
  return "ratio";
}

EvStrategy parse_strategy(std::string_view name) {
  if (name == "ratio" || name == "ratio-offset") return EvStrategy::RatioOffset;
  if (name == "slope" || name == "slope-extrapolation") return EvStrategy::SlopeExtrapolation;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

double evidential_value(const TimeSeries& series, std::size_t i, EvStrategy strategy) {
  const std::size_t n = series.size();
  if (n < 2) throw Error(ErrorCode::SeriesTooShort, "evidential values need at least 2 points");
  if (i < 1 || i > n - 1) {
    throw Error(ErrorCode::IndexOutOfRange,
                "index " + std::to_string(i) + " outside 1.." + std::to_string(n - 1));
  }
  const TimePoint& last = series[n - 1];
  const TimePoint& past = series[i - 1];
  if (strategy == EvStrategy::RatioOffset) return last.y + past.y / last.y;
  const double spacing = last.t - series[n - 2].t;
  return last.y + (last.y - past.y) / (last.t - past.t) * spacing;
}

ValuationState valuation_update(const ValuationState& state, TimePoint point) {
  require_positive(point.y);
  if (state.count > 0 && !(point.t > state.t_last)) {
    throw Error(ErrorCode::NonMonotoneTimestamp,
                "timestamp " + std::to_string(point.t) + " does not follow " + std::to_string(state.t_last));
  }
  ValuationState out = state;
  if (state.count > 0) out.sum_prior = state.sum_prior + state.y_last;
  out.t_prev = state.t_last;
  out.t_last = point.t;
  out.y_last = point.y;
  out.count = state.count + 1;
  return out;
}

ValuationState valuation_from_series(const TimeSeries& series) {
  ValuationState state;
  for (const TimePoint& p : series) state = valuation_update(state, p);
  return state;
}

double global_value_ratio(const ValuationState& state) {
  if (state.count < 2) throw Error(ErrorCode::SeriesTooShort, "global value needs at least 2 points");
  const double evidences = static_cast<double>(state.count - 1);
  return state.y_last + state.sum_prior / (evidences * state.y_last);
}

double global_value_slope(std::span<const TimePoint> history) {
  const std::size_t n = history.size();
  if (n < 2) throw Error(ErrorCode::SeriesTooShort, "global value needs at least 2 points");
  const TimePoint& last = history[n - 1];
  const double spacing = last.t - history[n - 2].t;
  // y_n + spacing * mean(slope_i): algebraically the mean of the evidential
  // values, and exact for a flat series.
  double slopes = 0.0;
  for (const TimePoint& past : history.first(n - 1)) slopes += (last.y - past.y) / (last.t - past.t);
  return last.y + spacing * (slopes / static_cast<double>(n - 1));
}

double global_value(const ValuationState& state, EvStrategy strategy, std::span<const TimePoint> history) {
  if (strategy == EvStrategy::RatioOffset) return global_value_ratio(state);
  if (history.size() != state.count) {
    throw Error(ErrorCode::InvalidArgument, "slope extrapolation needs the full history");
  }
  return global_value_slope(history);
}

} // namespace evifore
