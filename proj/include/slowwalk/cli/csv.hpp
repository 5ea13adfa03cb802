#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace slowwalk::cli {

/// A header plus rows of string fields. CSV is the canonical output form;
/// JSON renders the same rows as an array of records.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Quotes a field only when it contains a comma, quote or line break.
std::string csv_field(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

// Inverse of csv_line for a single line without its terminator.
std::vector<std::string> parse_csv_line(std::string_view line);

std::string to_csv(const Table& table);
Table parse_csv(std::string_view text);

// Fields that parse as integers become JSON integers (strings once they
// exceed 64 bits), decimals become numbers, empty fields become null.
nlohmann::ordered_json to_json(const Table& table);

// Decimal with 10 significant digits.
std::string format_density(double value);

/// Existing rows of a partially written CSV file. Anything after the last
/// newline is an incomplete row and is cut from the file. Throws
/// std::invalid_argument if the header differs from `header`.
Table resume_csv(const std::string& path, const std::vector<std::string>& header);

}  // namespace slowwalk::cli
