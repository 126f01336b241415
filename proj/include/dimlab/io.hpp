#pragma once

#include <iosfwd>
#include <string>

#include "dimlab/matrix.hpp"

namespace dimlab {

struct DatasetFile {
  std::string path;
  char delimiter = ',';
  bool has_header = false;
};

/// Parses delimited numeric text. Blank lines are skipped. Throws InputError naming
/// the offending row and column on ragged or non-numeric input, and when fewer than
/// two rows remain.
Matrix parse_points(std::istream& in, char delimiter = ',', bool has_header = false);

/// Throws IoError when the file cannot be opened.
Matrix read_points(const DatasetFile& file);

/// Headerless CSV, one point per row, 17 significant digits.
void write_points(std::ostream& out, const Matrix& points);
void write_points(const std::string& path, const Matrix& points);

}  // namespace dimlab
