#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "evifore/error.hpp"
#include "evifore/ingest.hpp"
#include "generators.hpp"

using namespace evifore;

namespace {

TimeSeries parse(const std::string& text, const CsvSpec& spec = {}) {
  std::istringstream in(text);
  return read_csv(in, spec);
}

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an evifore::Error");
  return Error(ErrorCode::InvalidArgument, "");
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("evifore_test_" + name);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("single unnamed column") {
  const TimeSeries s = parse("10\n12\n11\n14\n10\n15\n");
  CHECK(s.values() == std::vector<double>{10, 12, 11, 14, 10, 15});
  CHECK(s[5].t == 6);
}

TEST_CASE("empty input is an empty series") {
  CHECK(parse("").empty());
  CHECK(parse("\n\n").empty());
}

TEST_CASE("parse errors carry the row number") {
  const Error e = error_of([] { parse("1\n2\nabc\n"); });
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.row() == 3u);
  CHECK(error_of([] { parse("1\n\n0\n"); }).row() == 3u);
  CHECK(error_of([] { parse("1\n-2\n"); }).code() == ErrorCode::NonPositiveValue);
  CHECK(error_of([] { parse("1\n2x\n"); }).code() == ErrorCode::ParseError);
  CHECK(error_of([] { parse("\"1\n"); }).code() == ErrorCode::ParseError);
}

TEST_CASE("named columns with header, quotes and a custom delimiter") {
  const std::string text =
      "date;\"close; adj\";t\n"
      "2020-01-01;\"10.5\";1\n"
      "2020-01-02; 11 ;3\n";
  CsvSpec spec;
  spec.value_column = std::string("close; adj");
  spec.time_column = std::string("t");
  spec.has_header = true;
  spec.delimiter = ';';
  const TimeSeries s = parse(text, spec);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == TimePoint{1, 10.5});
  CHECK(s[1] == TimePoint{3, 11});
}

TEST_CASE("column resolution errors") {
  CsvSpec spec;
  spec.value_column = std::string("close");
  CHECK(error_of([&] { parse("1\n", spec); }).code() == ErrorCode::InvalidArgument);
  spec.has_header = true;
  CHECK(error_of([&] { parse("open\n1\n", spec); }).code() == ErrorCode::InvalidArgument);
  CsvSpec by_index;
  by_index.value_column = std::size_t{2};
  CHECK(error_of([&] { parse("1,2\n", by_index); }).code() == ErrorCode::ParseError);
}

TEST_CASE("time column must increase") {
  CsvSpec spec;
  spec.value_column = std::size_t{1};
  spec.time_column = std::size_t{0};
  const Error e = error_of([&] { parse("1,5\n3,6\n2,7\n", spec); });
  CHECK(e.code() == ErrorCode::NonMonotoneTimestamp);
  CHECK(e.row() == 3u);
}

TEST_CASE("missing file") {
  CHECK(error_of([] { load_csv("/nonexistent/evifore.csv"); }).code() == ErrorCode::IoError);
}

TEST_CASE("property: write then read is the identity at full precision") {
  std::mt19937_64 rng(71);
  CsvSpec spec;
  spec.value_column = std::size_t{1};
  spec.time_column = std::size_t{0};
  for (int trial = 0; trial < 200; ++trial) {
    const auto y = testing::random_values(rng, testing::random_length(rng, 0, 50), 1e-9, 1e9);
    const TimeSeries s = TimeSeries::from_values(y);
    std::ostringstream out;
    write_csv(s, out);
    const TimeSeries back = parse(out.str(), spec);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(same_bits(back[i].y, s[i].y));
      CHECK(same_bits(back[i].t, s[i].t));
    }
  }
}

TEST_CASE("file round trip") {
  const auto path = temp_file("series.csv");
  const TimeSeries s = TimeSeries::from_values(std::vector<double>{0.1, 0.2, 1.0 / 3.0});
  write_csv(s, path);
  CsvSpec spec;
  spec.value_column = std::size_t{1};
  CHECK(load_csv(path, spec) == s);
  std::filesystem::remove(path);
}

TEST_CASE("snapshot file round trip predicts identically") {
  const auto path = temp_file("snapshot.json");
  const Forecaster f = Forecaster::create(TimeSeries::from_values(std::vector<double>{10, 12, 11, 14, 10, 15}));
  save_snapshot(f, path);
  const Forecaster g = load_snapshot(path);
  CHECK(g.predict() == f.predict());
  CHECK(std::abs(g.predict() - 15.75) <= 5e-3);
  CHECK(g.snapshot() == f.snapshot());
  std::filesystem::remove(path);
}

TEST_CASE("snapshot with a zero pair mass encodes -inf log magnitude") {
  const Forecaster f = Forecaster::create(TimeSeries::from_values(std::vector<double>{4, 4, 5}));
  const std::string text = snapshot_to_json(f.snapshot());
  CHECK(text.find("\"-inf\"") != std::string::npos);
  const ForecastSnapshot back = snapshot_from_json(text);
  CHECK(back == f.snapshot());
}

TEST_CASE("snapshot errors") {
  const std::string text =
      snapshot_to_json(Forecaster::create(TimeSeries::from_values(std::vector<double>{1, 2, 3})).snapshot());
  CHECK(error_of([&] { snapshot_from_json(text.substr(0, text.size() / 2)); }).code() == ErrorCode::CorruptSnapshot);
  std::string other_version = text;
  other_version.replace(other_version.find("\"version\": 1"), 12, "\"version\": 2");
  CHECK(error_of([&] { snapshot_from_json(other_version); }).code() == ErrorCode::VersionMismatch);
  CHECK(error_of([] { snapshot_from_json("{}"); }).code() == ErrorCode::CorruptSnapshot);
  std::string missing = text;
  missing.replace(missing.find("\"y_last\""), 8, "\"y_lost\"");
  CHECK(error_of([&] { snapshot_from_json(missing); }).code() == ErrorCode::CorruptSnapshot);
  CHECK(error_of([] { load_snapshot("/nonexistent/snap.json"); }).code() == ErrorCode::IoError);

  const auto path = temp_file("truncated.json");
  std::ofstream(path) << text.substr(0, 40);
  CHECK(error_of([&] { load_snapshot(path); }).code() == ErrorCode::CorruptSnapshot);
  std::filesystem::remove(path);
}
