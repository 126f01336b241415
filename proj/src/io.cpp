#include "dimlab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "dimlab/error.hpp"

namespace dimlab {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string where(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

}  // namespace

Matrix parse_points(std::istream& in, char delimiter, bool has_header) {
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::string line;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest = trim(line);
    if (rest.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::size_t col = 0;
    for (;;) {
      const auto cut = rest.find(delimiter);
      std::string_view field = trim(rest.substr(0, cut));
      if (field.size() > 1 && field.front() == '+') field.remove_prefix(1);
      ++col;
      double v = 0.0;
      const char* end = field.data() + field.size();
      auto [ptr, ec] = std::from_chars(field.data(), end, v);
      if (field.empty() || ec != std::errc() || ptr != end)
        throw InputError("non-numeric value '" + std::string(field) + "' at line " + std::to_string(line_no) + " (" +
                         where(rows + 1, col) + ")");
      if (!std::isfinite(v))
        throw InputError("non-finite value at line " + std::to_string(line_no) + " (" + where(rows + 1, col) + ")");
      values.push_back(v);
      if (cut == std::string_view::npos) break;
      rest = rest.substr(cut + 1);
    }
    ++rows;
    if (rows == 1) {
      cols = col;
    } else if (col != cols) {
      throw InputError("ragged input at line " + std::to_string(line_no) + ": row " + std::to_string(rows) + " has " +
                       std::to_string(col) + " columns, expected " + std::to_string(cols));
    }
  }
  if (rows < 2) throw InputError("need at least 2 data rows, found " + std::to_string(rows));
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

Matrix read_points(const DatasetFile& file) {
  std::ifstream f(file.path);
  if (!f) throw IoError("cannot open " + file.path);
  return parse_points(f, file.delimiter, file.has_header);
}

void write_points(std::ostream& out, const Matrix& points) {
  char buf[32];
  for (std::size_t i = 0; i < points.rows(); ++i) {
    for (std::size_t j = 0; j < points.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", points(i, j));
      if (j > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_points(const std::string& path, const Matrix& points) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write_points(f, points);
  f.flush();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace dimlab
