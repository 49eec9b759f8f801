#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsamp::cli {

/// Rows of preformatted cells, written as CSV or as an aligned text table.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Table &) const = default;
};

void write_csv(std::ostream &out, const Table &t);
/// Inverse of write_csv; quoted fields may hold commas, quotes and newlines.
Table parse_csv(std::istream &in);
void write_text(std::ostream &out, const Table &t);

std::string fixed(double v, int decimals);

} // namespace dsamp::cli
