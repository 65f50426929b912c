#ifndef LIEFOCK_IO_HPP
#define LIEFOCK_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace liefock {

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

// Row-major table of numbers with a header, joined with commas.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(const std::vector<double>& row);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

// Writes via a temporary file and rename so readers never see partial output.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct HeatmapOptions {
  bool fourth_root = false;
};

// 16-bit binary graymap: "P5", a "# normalization <max>" comment, then
// big-endian pixels scaled so the maximum maps to 65535. Rows are written
// top to bottom as stored. Throws InvalidArgument on empty or negative input.
std::string encode_heatmap(const Eigen::MatrixXd& table, const HeatmapOptions& opts = {});
void export_heatmap(const Eigen::MatrixXd& table, const std::string& path, const HeatmapOptions& opts = {});

// FNV-1a 64-bit digest as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace liefock

#endif  // LIEFOCK_IO_HPP
