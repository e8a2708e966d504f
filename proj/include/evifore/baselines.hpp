#pragma once

#include <cstddef>
#include <span>

namespace evifore {

struct SmaConfig {
  std::size_t k = 1;
};

// Unweighted mean of the last k values of `history`. k = 1 is the naive
// last-value forecast. Throws InvalidArgument for k = 0, SeriesTooShort when
// history holds fewer than k values.
double sma_predict(std::span<const double> history, SmaConfig config);

} // namespace evifore
