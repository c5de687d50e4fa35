#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scorecast::csv {

using Row = std::vector<std::string>;

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
Row split_line(std::string_view line);

/// Header-aware reader. Blank lines and lines starting with '#' are skipped.
class Reader {
 public:
  explicit Reader(std::istream& in);

  const Row& header() const { return header_; }
  std::optional<std::size_t> column(std::string_view name) const;
  std::size_t require_column(std::string_view name) const;

  /// Returns false at end of input. `line_number()` is the 1-based line of the row.
  bool next(Row& row);
  std::size_t line_number() const { return line_number_; }

 private:
  std::istream& in_;
  Row header_;
  std::size_t line_number_ = 0;
};

std::string escape(std::string_view field);
void write_row(std::ostream& out, const Row& row);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace scorecast::csv
