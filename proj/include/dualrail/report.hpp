// report.hpp -- fixed-column result tables with pinned CSV and JSON forms.
//
// Every experiment emits one Table. Identical inputs must produce
// byte-identical files, so all numbers are formatted through one printf
// recipe and the serializers avoid locale, timestamp, and environment
// dependence. The leading column is always "row", a zero-padded ordinal that
// serves as the canonical sort key.
#pragma once

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dualrail::report {

inline std::string format_value(double v, int precision = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*e", precision, v);
  return buf;
}

struct Table {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
      throw std::invalid_argument("Table: row width does not match the column list");
    rows.push_back(std::move(cells));
  }

  // Canonical output order. Builders number their rows, so this is usually a
  // no-op, but parallel fills stay deterministic through it.
  void sort_rows() {
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
  }
};

// Zero-padded so lexicographic order equals numeric order.
inline std::string row_key(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", i);
  return buf;
}

// ---- CSV ----

inline std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_escape(t.columns[c]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_escape(row[c]);
    }
    out += '\n';
  }
  return out;
}

// Parses exactly the dialect to_csv emits (quotes doubled inside quoted
// cells). Used by the round-trip tests and by anyone re-reading our output.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
    } else {
      cell += c;
    }
  }
  if (quoted) throw std::invalid_argument("parse_csv: unterminated quote");
  if (!cell.empty() || !row.empty()) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Table from_csv(const std::string& text, std::string experiment) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw std::invalid_argument("from_csv: empty input");
  Table t;
  t.experiment = std::move(experiment);
  t.columns = rows.front();
  for (size_t i = 1; i < rows.size(); ++i) t.add_row(rows[i]);
  return t;
}

// ---- JSON ----
//
// Mirrors the CSV one to one: same cells, same order, keyed by column name.

inline std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["experiment"] = t.experiment;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
    j["rows"].push_back(std::move(obj));
  }
  return j.dump(2) + "\n";
}

inline Table from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  Table t;
  t.experiment = j.at("experiment").get<std::string>();
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& obj : j.at("rows")) {
    std::vector<std::string> row;
    row.reserve(t.columns.size());
    for (const auto& col : t.columns) row.push_back(obj.at(col).get<std::string>());
    t.add_row(std::move(row));
  }
  return t;
}

inline std::string serialize(const Table& t, const std::string& format) {
  if (format == "csv") return to_csv(t);
  if (format == "json") return to_json(t);
  throw std::invalid_argument("serialize: unknown format '" + format + "'");
}

}  // namespace dualrail::report
