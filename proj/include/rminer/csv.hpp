#ifndef RMINER_CSV_HPP_
#define RMINER_CSV_HPP_

#include <string>
#include <vector>

namespace rminer::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of a header column, or -1.
  int column(const std::string& name) const;
};

// RFC-4180 style parser: comma separated, first row is the header,
// double-quoted fields with "" escapes, LF or CRLF line ends.
// Throws DataError on unbalanced quotes or a missing header row.
Table parse(const std::string& text);

// Quote a field if it contains a comma, quote or newline.
std::string escape_field(const std::string& field);

}  // namespace rminer::csv

#endif  // RMINER_CSV_HPP_
