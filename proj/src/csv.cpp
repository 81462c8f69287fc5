#include "sglab/csv.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "sglab/error.hpp"

namespace sglab {

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size())
    throw ShapeError("CsvTable::add_row", "cells", "row width differs from header");
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("CsvTable::write", path.string(), "cannot open for writing");
  out << str();
}

std::vector<double> NumericCsv::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) {
      std::vector<double> col;
      col.reserve(rows.size());
      for (const auto& r : rows) col.push_back(r[c]);
      return col;
    }
  throw ShapeError("NumericCsv::column", name, "column not present");
}

NumericCsv read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("read_numeric_csv", path.string(), "cannot open");
  NumericCsv csv;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      cells.push_back(cell);
    }
    return cells;
  };
  if (!std::getline(in, line)) throw ShapeError("read_numeric_csv", path.string(), "empty file");
  csv.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (cells.size() != csv.header.size())
      throw ShapeError("read_numeric_csv", path.string(), "ragged row");
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      const bool numeric = ec == std::errc() && ptr == c.data() + c.size();
      row.push_back(numeric ? v : std::numeric_limits<double>::quiet_NaN());
    }
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

}  // namespace sglab
