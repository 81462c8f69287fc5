#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace sglab {

/// '.' decimal, 17 significant digits, no locale influence.
std::string format_double(double value);

/// Accumulates rows in memory and writes them in one go.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<double>& values);
  void add_row(const std::vector<std::string>& cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Parses a CSV with a header row into doubles; text cells read as NaN.
struct NumericCsv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(const std::string& name) const;
};
NumericCsv read_numeric_csv(const std::filesystem::path& path);

}  // namespace sglab
