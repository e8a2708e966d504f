#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "evifore/domain.hpp"
#include "evifore/forecaster.hpp"

namespace evifore {

// A CSV column addressed by 0-based position or by header name.
using ColumnRef = std::variant<std::size_t, std::string>;

struct CsvSpec {
  ColumnRef value_column = std::size_t{0};
  std::optional<ColumnRef> time_column;
  bool has_header = false;
  char delimiter = ',';
};

// Reads one series in file order. Blank lines are skipped; fields may be
// double-quoted. Without a time column, t = 1..n. Errors carry the 1-based
// line number: ParseError, NonPositiveValue, NonMonotoneTimestamp; IoError
// when the file cannot be opened.
TimeSeries load_csv(const std::filesystem::path& path, const CsvSpec& spec = {});
TimeSeries read_csv(std::istream& in, const CsvSpec& spec = {});

// Writes "t,y" rows (no header) with shortest round-trip decimal rendering.
void write_csv(const TimeSeries& series, std::ostream& out);
void write_csv(const TimeSeries& series, const std::filesystem::path& path);

inline constexpr int kSnapshotVersion = 1;

std::string snapshot_to_json(const ForecastSnapshot& snapshot);
// Throws VersionMismatch or CorruptSnapshot.
ForecastSnapshot snapshot_from_json(const std::string& text);

void save_snapshot(const Forecaster& forecaster, const std::filesystem::path& path);
Forecaster load_snapshot(const std::filesystem::path& path);

} // namespace evifore
