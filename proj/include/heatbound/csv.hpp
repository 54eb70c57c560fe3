#pragma once

// Comma-separated tables with a header row and LF line endings. Numbers are
// written with 17 significant digits so a write/read cycle is lossless; an
// empty cell stands for a missing value.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace heatbound::csv {

std::string format_number(double v);
std::string format_optional(const std::optional<double>& v);
// Strict: the whole string must be a number. Throws std::invalid_argument.
double parse_number(const std::string& s);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> find(const std::string& column) const;
  std::size_t index_of(const std::string& column) const;  // throws std::out_of_range
  // Numeric column; empty cells become NaN.
  std::vector<double> numbers(const std::string& column) const;
  std::vector<std::optional<double>> optional_numbers(const std::string& column) const;
  std::vector<std::string> text(const std::string& column) const;
};

void write(std::ostream& out, const Table& table);
void write_row(std::ostream& out, const std::vector<std::string>& cells);
Table read(std::istream& in);

void write_file(const std::filesystem::path& path, const Table& table);
Table read_file(const std::filesystem::path& path);

}  // namespace heatbound::csv
