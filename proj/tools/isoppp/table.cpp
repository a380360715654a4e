#include "table.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace isoppp::cli {

namespace {

std::string quote(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch == '\n' || ch == '\r' ? ' ' : ch;
  }
  return out + "\"";
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted field");
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  out << "# " << table.config.dump() << '\n';
  for (const auto& c : table.columns) out << c << ',';
  out << "error\n";
  for (const Row& row : table.rows) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i < row.values.size() && row.values[i]) out << format_number(*row.values[i]);
      out << ',';
    }
    out << quote(row.error) << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const Row& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i < row.values.size() && row.values[i])
        r[table.columns[i]] = *row.values[i];
      else
        r[table.columns[i]] = nullptr;
    }
    r["error"] = row.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(row.error);
    rows.push_back(std::move(r));
  }
  nlohmann::json doc{{"config", table.config}, {"columns", table.columns}, {"rows", rows}};
  out << doc.dump(2) << '\n';
}

ParsedCsv read_csv(std::istream& in) {
  ParsedCsv csv;
  std::string line;
  bool have_header = false;
  std::string config_text;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && line.rfind('#', 0) == 0) {
      config_text += line.substr(1);
      continue;
    }
    if (!have_header) {
      csv.header = split_fields(line);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != csv.header.size())
      throw std::runtime_error("row " + std::to_string(csv.fields.size() + 1) + " has " +
                               std::to_string(fields.size()) + " fields, header has " +
                               std::to_string(csv.header.size()));
    csv.fields.push_back(std::move(fields));
  }
  if (!have_header) throw std::runtime_error("missing header row");
  if (config_text.empty()) throw std::runtime_error("missing config comment line");
  csv.config = nlohmann::json::parse(config_text, nullptr, false);
  if (csv.config.is_discarded()) throw std::runtime_error("config comment is not valid JSON");
  if (csv.header.empty() || csv.header.back() != "error")
    throw std::runtime_error("last column must be 'error'");
  return csv;
}

std::string replot_check(const ParsedCsv& csv) {
  for (std::size_t r = 0; r < csv.fields.size(); ++r) {
    for (std::size_t c = 0; c + 1 < csv.header.size(); ++c) {
      const std::string& text = csv.fields[r][c];
      if (text.empty()) continue;
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end != text.c_str() + text.size() || format_number(v) != text) {
        std::ostringstream os;
        os << "row " << r + 1 << ", column '" << csv.header[c] << "': '" << text
           << "' does not round-trip";
        return os.str();
      }
    }
  }
  return {};
}

}  // namespace isoppp::cli
