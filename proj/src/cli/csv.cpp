#include "slowwalk/cli/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slowwalk::cli {

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  return fields;
}

std::string to_csv(const Table& table) {
  std::string out = csv_line(table.header) + "\n";
  for (const auto& row : table.rows) out += csv_line(row) + "\n";
  return out;
}

Table parse_csv(std::string_view text) {
  Table table;
  bool first = true;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = text.substr(0, end);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (first) {
      table.header = parse_csv_line(line);
      first = false;
    } else if (!line.empty()) {
      table.rows.push_back(parse_csv_line(line));
    }
    if (end == std::string_view::npos) break;
    text.remove_prefix(end + 1);
  }
  return table;
}

namespace {

nlohmann::ordered_json json_value(const std::string& field) {
  if (field.empty()) return nullptr;
  long long integer = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, integer);
  if (ec == std::errc() && ptr == end) return integer;
  const bool digits_only = field.find_first_not_of("-0123456789") == std::string::npos;
  if (digits_only) return field;  // beyond 64 bits: keep exact
  double real = 0;
  auto [rptr, rec] = std::from_chars(begin, end, real);
  if (rec == std::errc() && rptr == end) return real;
  return field;
}

}  // namespace

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      record[table.header[i]] = i < row.size() ? json_value(row[i]) : nlohmann::ordered_json(nullptr);
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::string format_density(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

Table resume_csv(const std::string& path, const std::vector<std::string>& header) {
  Table table{header, {}};
  if (!std::filesystem::exists(path)) return table;
  std::string text;
  {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  const std::size_t last_newline = text.rfind('\n');
  const std::size_t complete = last_newline == std::string::npos ? 0 : last_newline + 1;
  if (complete != text.size()) std::filesystem::resize_file(path, complete);
  if (complete == 0) return table;
  Table existing = parse_csv(std::string_view(text).substr(0, complete));
  if (existing.header != header) throw std::invalid_argument("cannot resume " + path + ": header differs");
  return existing;
}

}  // namespace slowwalk::cli
