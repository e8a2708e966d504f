#include "evifore/baselines.hpp"

#include "evifore/error.hpp"

namespace evifore {

double sma_predict(std::span<const double> history, SmaConfig config) {
  if (config.k == 0) throw Error(ErrorCode::InvalidArgument, "SMA window must be >= 1");
  if (history.size() < config.k) throw Error(ErrorCode::SeriesTooShort, "history shorter than SMA window");
  double sum = 0.0;
  for (double v : history.last(config.k)) sum += v;
  return sum / static_cast<double>(config.k);
}

} // namespace evifore
