#include "liefock/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "liefock/errors.hpp"

namespace liefock {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // folds -0 into 0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size()) {
    throw DimensionMismatch("csv row has " + std::to_string(row.size()) + " values for " +
                            std::to_string(columns_.size()) + " columns");
  }
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string encode_heatmap(const Eigen::MatrixXd& table, const HeatmapOptions& opts) {
  if (table.size() == 0) throw InvalidArgument("heatmap: empty array");
  if (!table.allFinite()) throw InvalidArgument("heatmap: non-finite value");
  if (table.minCoeff() < 0.0) throw InvalidArgument("heatmap: negative value");
  Eigen::MatrixXd v = table;
  if (opts.fourth_root) v = v.array().sqrt().sqrt().matrix();
  const double peak = v.maxCoeff();
  std::string out = "P5\n# normalization " + format_double(peak) + (opts.fourth_root ? " fourth_root" : "") + "\n" +
                    std::to_string(v.cols()) + " " + std::to_string(v.rows()) + "\n65535\n";
  out.reserve(out.size() + static_cast<std::size_t>(v.size()) * 2);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      const double scaled = peak > 0.0 ? v(r, c) / peak : 0.0;
      const auto px = static_cast<std::uint16_t>(std::lround(std::clamp(scaled, 0.0, 1.0) * 65535.0));
      out.push_back(static_cast<char>(px >> 8));
      out.push_back(static_cast<char>(px & 0xff));
    }
  }
  return out;
}

void export_heatmap(const Eigen::MatrixXd& table, const std::string& path, const HeatmapOptions& opts) {
  write_file(path, encode_heatmap(table, opts));
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace liefock
