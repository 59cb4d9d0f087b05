#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace parkassign {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

/// Six significant digits, "%.6g".
std::string format_number(double value);

/// RFC 4180 output: CRLF-free, fields quoted when they hold a comma, quote or newline.
void write_csv(const CsvTable& table, std::ostream& out);
std::string to_csv(const CsvTable& table);

/// Writes `table` to `path`; throws std::runtime_error naming the path on failure.
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

/// First record becomes the header.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace parkassign
