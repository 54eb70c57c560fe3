#include "heatbound/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <boost/algorithm/string.hpp>

namespace heatbound::csv {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

double parse_number(const std::string& s) {
  const std::string t = boost::algorithm::trim_copy(s);
  if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (t == "inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  return v;
}

std::optional<std::size_t> Table::find(const std::string& column) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) return i;
  }
  return std::nullopt;
}

std::size_t Table::index_of(const std::string& column) const {
  if (auto i = find(column)) return *i;
  throw std::out_of_range("no column '" + column + "'");
}

std::vector<std::string> Table::text(const std::string& column) const {
  const std::size_t c = index_of(column);
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(c < r.size() ? r[c] : std::string());
  return out;
}

std::vector<std::optional<double>> Table::optional_numbers(const std::string& column) const {
  std::vector<std::optional<double>> out;
  for (const auto& cell : text(column)) {
    if (cell.empty()) {
      out.emplace_back();
    } else {
      out.emplace_back(parse_number(cell));
    }
  }
  return out;
}

std::vector<double> Table::numbers(const std::string& column) const {
  std::vector<double> out;
  for (const auto& v : optional_numbers(column)) {
    out.push_back(v.value_or(std::numeric_limits<double>::quiet_NaN()));
  }
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

void write(std::ostream& out, const Table& table) {
  write_row(out, table.header);
  for (const auto& r : table.rows) write_row(out, r);
}

Table read(std::istream& in) {
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    boost::algorithm::split(cells, line, boost::algorithm::is_any_of(","));
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) {
        throw std::runtime_error("row has " + std::to_string(cells.size()) + " cells, header has " +
                                 std::to_string(t.header.size()));
      }
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

void write_file(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write(out, table);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read(in);
}

}  // namespace heatbound::csv
