#pragma once

#include <iosfwd>

#include "evifore/evifore.h"

namespace evifore::cli {

// Reproduces the six-point worked example and its one-point update, checking
// every printed quantity. Returns the process exit code.
int run_demo(evf_strategy strategy, bool as_json, int precision, std::ostream& out);

} // namespace evifore::cli
