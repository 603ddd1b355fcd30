#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "robustggm/errors.hpp"
#include "robustggm/linalg.hpp"

namespace robustggm {

/// Malformed CSV input. row and column are 1-based positions in the file
/// (column 0 when the whole row is at fault).
class CsvError : public Error {
 public:
  CsvError(const std::string& what, std::size_t row, std::size_t column)
      : Error(what), row_(row), column_(column) {}
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

struct CsvTable {
  std::vector<std::string> header;  // empty when the file has no header row
  Dataset data;
};

/// Rows are observations and columns variables. A first row containing a
/// non-numeric cell is treated as a header. Empty cells are rejected.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// 17 significant digits, so values round-trip exactly.
std::string format_double(double v);

void write_csv(std::ostream& out, const Dataset& data, const std::vector<std::string>& header = {});

}  // namespace robustggm
