#include "evifore/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "evifore/error.hpp"

namespace evifore {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one record; doubled quotes inside a quoted field are unescaped.
std::vector<std::string> split_fields(std::string_view line, char delimiter, std::size_t row) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && trim(field).empty()) {
      quoted = true;
      was_quoted = true;
      field.clear();
    } else if (c == delimiter) {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw Error(ErrorCode::ParseError, "unterminated quoted field", row);
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

double parse_number(std::string_view text, std::size_t row, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw Error(ErrorCode::ParseError, "cannot parse " + std::string(what) + " '" + std::string(text) + "'", row);
  }
  return value;
}

std::size_t resolve_column(const ColumnRef& ref, const std::vector<std::string>& header) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) return *index;
  const std::string& name = std::get<std::string>(ref);
  if (header.empty()) throw Error(ErrorCode::InvalidArgument, "column '" + name + "' named but the file has no header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "no column named '" + name + "' in header", std::size_t{1});
}

std::string render_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

json number_or_tag(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_double(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    if (s == "nan") return std::nan("");
  }
  throw Error(ErrorCode::CorruptSnapshot, "expected a number, got " + j.dump());
}

} // namespace

TimeSeries read_csv(std::istream& in, const CsvSpec& spec) {
  if (spec.delimiter == '"' || spec.delimiter == '\n' || spec.delimiter == '\r' || spec.delimiter == '\0') {
    throw Error(ErrorCode::InvalidArgument, "unusable CSV delimiter");
  }
  std::vector<std::string> header;
  bool header_pending = spec.has_header;
  std::optional<std::size_t> value_col;
  std::optional<std::size_t> time_col;
  auto resolve = [&] {
    value_col = resolve_column(spec.value_column, header);
    if (spec.time_column) time_col = resolve_column(*spec.time_column, header);
  };
  if (!header_pending) resolve();

  TimeSeries series;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line, spec.delimiter, row);
    if (header_pending) {
      header = std::move(fields);
      header_pending = false;
      resolve();
      continue;
    }
    const std::size_t needed = std::max(*value_col, time_col.value_or(0)) + 1;
    if (fields.size() < needed) {
      throw Error(ErrorCode::ParseError,
                  "expected at least " + std::to_string(needed) + " fields, found " + std::to_string(fields.size()), row);
    }
    const double y = parse_number(fields[*value_col], row, "value");
    const double t = time_col ? parse_number(fields[*time_col], row, "timestamp")
                              : static_cast<double>(series.size() + 1);
    try {
      series.push_back(TimePoint{t, y});
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), row);
    }
  }
  if (in.bad()) throw Error(ErrorCode::IoError, "read failure");
  return series;
}

TimeSeries load_csv(const std::filesystem::path& path, const CsvSpec& spec) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  return read_csv(in, spec);
}

void write_csv(const TimeSeries& series, std::ostream& out) {
  for (const TimePoint& p : series) out << render_double(p.t) << ',' << render_double(p.y) << '\n';
}

void write_csv(const TimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  write_csv(series, out);
  if (!out) throw Error(ErrorCode::IoError, "write failure on '" + path.string() + "'");
}

std::string snapshot_to_json(const ForecastSnapshot& s) {
  json doc;
  doc["format"] = "evifore-snapshot";
  doc["version"] = kSnapshotVersion;
  doc["strategy"] = std::string(to_string(s.strategy));
  doc["n"] = s.n;
  doc["fusion"] = {
      {"p_a", number_or_tag(s.fusion.p_a)},
      {"p_abar", number_or_tag(s.fusion.p_abar)},
      {"pairs", s.fusion.pairs},
      {"log_a", number_or_tag(s.fusion.log_a)},
      {"log_abar", number_or_tag(s.fusion.log_abar)},
      {"negative_abar", s.fusion.negative_abar},
  };
  doc["valuation"] = {
      {"sum_prior", number_or_tag(s.valuation.sum_prior)},
      {"y_last", number_or_tag(s.valuation.y_last)},
      {"count", s.valuation.count},
      {"t_last", number_or_tag(s.valuation.t_last)},
      {"t_prev", number_or_tag(s.valuation.t_prev)},
  };
  if (!s.history.empty()) {
    json history = json::array();
    for (const TimePoint& p : s.history) history.push_back({p.t, p.y});
    doc["history"] = std::move(history);
  }
  return doc.dump(2);
}

ForecastSnapshot snapshot_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptSnapshot, std::string("malformed snapshot: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version")) throw Error(ErrorCode::CorruptSnapshot, "snapshot has no version");
  if (!doc["version"].is_number_integer() || doc["version"].get<long long>() != kSnapshotVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "snapshot version " + doc["version"].dump() + " (expected " + std::to_string(kSnapshotVersion) + ")");
  }
  ForecastSnapshot s;
  try {
    s.strategy = parse_strategy(doc.at("strategy").get<std::string>());
    s.n = doc.at("n").get<std::uint64_t>();
    const json& f = doc.at("fusion");
    s.fusion.p_a = read_double(f.at("p_a"));
    s.fusion.p_abar = read_double(f.at("p_abar"));
    s.fusion.pairs = f.at("pairs").get<std::uint64_t>();
    s.fusion.log_a = read_double(f.at("log_a"));
    s.fusion.log_abar = read_double(f.at("log_abar"));
    s.fusion.negative_abar = f.at("negative_abar").get<bool>();
    const json& v = doc.at("valuation");
    s.valuation.sum_prior = read_double(v.at("sum_prior"));
    s.valuation.y_last = read_double(v.at("y_last"));
    s.valuation.count = v.at("count").get<std::uint64_t>();
    s.valuation.t_last = read_double(v.at("t_last"));
    s.valuation.t_prev = read_double(v.at("t_prev"));
    if (doc.contains("history")) {
      for (const json& p : doc.at("history")) {
        if (!p.is_array() || p.size() != 2) throw Error(ErrorCode::CorruptSnapshot, "history entries are [t, y] pairs");
        s.history.push_back({read_double(p[0]), read_double(p[1])});
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptSnapshot, std::string("malformed snapshot: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptSnapshot) throw;
    throw Error(ErrorCode::CorruptSnapshot, e.what());
  }
  return s;
}

void save_snapshot(const Forecaster& forecaster, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << snapshot_to_json(forecaster.snapshot()) << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failure on '" + path.string() + "'");
}

Forecaster load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return Forecaster::restore(snapshot_from_json(text));
}

} // namespace evifore
