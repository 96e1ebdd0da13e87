#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "secl/errors.hpp"

namespace secl {
namespace csv {

// Minimal CSV support for the engine's schemas: comma separated, UTF-8,
// '.' decimal separator, mandatory header, no quoting (no field in any
// schema may contain a comma). Trailing \r from CRLF files is stripped.

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // data rows, 1-based addressing
};

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SchemaError(path, "cannot open file");
  }
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      table.header = split_line(line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    table.rows.push_back(split_line(line));
  }
  if (first) {
    throw SchemaError(path, "file is empty (missing header)");
  }
  return table;
}

inline void require_header(const Table& table, const std::string& path,
                           const std::vector<std::string>& expected) {
  if (table.header != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    std::string got;
    for (const auto& h : table.header) got += (got.empty() ? "" : ",") + h;
    throw SchemaError(path, "header mismatch: expected '" + want +
                                "', got '" + got + "'");
  }
}

inline void require_width(const std::vector<std::string>& row,
                          const std::string& path, int row_number,
                          std::size_t expected) {
  if (row.size() != expected) {
    throw RowError(path, row_number, "-",
                   "expected " + std::to_string(expected) + " fields, got " +
                       std::to_string(row.size()));
  }
}

inline double parse_double(const std::string& field, const std::string& path,
                           int row, const std::string& column) {
  try {
    std::size_t consumed = 0;
    const double v = std::stod(field, &consumed);
    if (consumed != field.size()) {
      throw RowError(path, row, column, "trailing characters in '" + field + "'");
    }
    return v;
  } catch (const RowError&) {
    throw;
  } catch (const std::exception&) {
    throw RowError(path, row, column, "not a number: '" + field + "'");
  }
}

inline int parse_int(const std::string& field, const std::string& path,
                     int row, const std::string& column) {
  try {
    std::size_t consumed = 0;
    const int v = std::stoi(field, &consumed);
    if (consumed != field.size()) {
      throw RowError(path, row, column, "trailing characters in '" + field + "'");
    }
    return v;
  } catch (const RowError&) {
    throw;
  } catch (const std::exception&) {
    throw RowError(path, row, column, "not an integer: '" + field + "'");
  }
}

// Shortest representation that round-trips a double exactly: %.17g always
// round-trips; prefer %.15g/%.16g when they already do.
inline std::string format_full(double v) {
  char buf[64];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Monetary reporting precision for result files.
inline std::string format_money(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

class Writer {
 public:
  explicit Writer(const std::string& path) : path_(path), out_(path) {
    if (!out_) {
      throw SchemaError(path, "cannot open file for writing");
    }
  }

  void row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) line += ',';
      line += fields[i];
    }
    out_ << line << '\n';
  }

  void close() {
    out_.close();
    if (!out_) {
      throw SchemaError(path_, "write failed");
    }
  }

 private:
  std::string path_;
  std::ofstream out_;
};

}  // namespace csv
}  // namespace secl
