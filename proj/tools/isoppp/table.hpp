#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace isoppp::cli {

struct Row {
  std::vector<std::optional<double>> values;  // empty when the point failed
  std::string error;
};

// Result table; the last CSV column is always "error".
struct Table {
  nlohmann::json config;
  std::vector<std::string> columns;
  std::vector<Row> rows;
};

// 17 significant digits in scientific notation.
std::string format_number(double v);

// "# <config json>" line, header, then one line per row.
void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);

struct ParsedCsv {
  nlohmann::json config;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> fields;  // raw text per row
};

// Throws std::runtime_error on malformed input.
ParsedCsv read_csv(std::istream& in);

// Re-reads a CSV written by write_csv and checks every numeric field survives
// parse-and-format unchanged. Returns an empty string on success, otherwise a
// description of the first mismatch.
std::string replot_check(const ParsedCsv& csv);

}  // namespace isoppp::cli
