#pragma once

#include <charconv>
#include <cstdint>
#include <ctime>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "eomsim/errors.hpp"

namespace eomsim {

inline constexpr const char* kToolName = "eomsim";
inline constexpr const char* kVersion = "0.1.0";

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using Cell = std::variant<double, std::int64_t, std::string>;

inline std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

// Column-major description plus row data; the interchange type every sweep
// and figure builder produces and every writer consumes.
struct Dataset {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> parameters;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw InvalidParameterError("row width does not match column count");
    rows.push_back(std::move(row));
  }
};

struct WriteOptions {
  bool include_timestamp = true;
};

inline std::string iso_timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline void write_csv(std::ostream& os, const Dataset& data,
                      const WriteOptions& options = {}) {
  os << "# " << kToolName << ' ' << kVersion;
  if (!data.title.empty()) os << " - " << data.title;
  os << '\n';
  if (options.include_timestamp)
    os << "# generated: " << iso_timestamp_utc() << '\n';
  for (const auto& [name, value] : data.parameters)
    os << "# param " << name << " = " << format_cell(value) << '\n';
  os << "# columns: ";
  for (std::size_t i = 0; i < data.columns.size(); ++i)
    os << (i ? "," : "") << data.columns[i];
  os << '\n';
  for (const auto& row : data.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_cell(row[i]);
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Dataset& data,
                       const WriteOptions& options = {}) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  if (!data.title.empty()) j["title"] = data.title;
  if (options.include_timestamp) j["generated"] = iso_timestamp_utc();
  j["parameters"] = nlohmann::json::object();
  for (const auto& [name, value] : data.parameters)
    std::visit([&](const auto& v) { j["parameters"][name] = v; }, value);
  j["columns"] = data.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : data.rows) {
    nlohmann::json jrow = nlohmann::json::array();
    for (const auto& cell : row)
      std::visit([&](const auto& v) { jrow.push_back(v); }, cell);
    j["rows"].push_back(std::move(jrow));
  }
  os << j.dump(2) << '\n';
}

}  // namespace eomsim
