#pragma once

#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>

#include "evifore/evifore.h"

namespace evifore::cli {

// Stable process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitUsage = 64;

// A failed C API call, carrying the status for exit-code mapping.
class ApiError : public std::runtime_error {
public:
  explicit ApiError(evf_status status)
      : std::runtime_error(std::string(evf_status_name(status)) + ": " + evf_last_error()), status_(status) {}
  evf_status status() const noexcept { return status_; }

private:
  evf_status status_;
};

inline void check(evf_status status) {
  if (status != EVF_OK) throw ApiError(status);
}

inline int exit_code_for(evf_status status) {
  switch (status) {
    case EVF_OK: return kExitOk;
    case EVF_ERR_TOTAL_CONFLICT: return kExitDegenerate;
    case EVF_ERR_INVALID_ARGUMENT: return kExitUsage;
    case EVF_ERR_OUT_OF_MEMORY:
    case EVF_ERR_INTERNAL: return kExitFailure;
    default: return kExitData;
  }
}

struct SeriesDeleter {
  void operator()(evf_series* s) const noexcept { evf_series_free(s); }
};
struct ForecasterDeleter {
  void operator()(evf_forecaster* f) const noexcept { evf_forecaster_free(f); }
};
struct BacktestDeleter {
  void operator()(evf_backtest* b) const noexcept { evf_backtest_free(b); }
};

using SeriesPtr = std::unique_ptr<evf_series, SeriesDeleter>;
using ForecasterPtr = std::unique_ptr<evf_forecaster, ForecasterDeleter>;
using BacktestPtr = std::unique_ptr<evf_backtest, BacktestDeleter>;

// EVIFORE_LOG=info|debug enables diagnostics on stderr.
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("EVIFORE_LOG");
    if (env == nullptr) return 0;
    const std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
  }();
  return level;
}

} // namespace evifore::cli
