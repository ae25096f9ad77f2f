// Minimal RFC 4180 CSV reading and writing. Quoted fields may contain
// separators, doubled quotes and line breaks.

#ifndef TOXSPAN_CSV_HPP_
#define TOXSPAN_CSV_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace toxspan::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line on which the record starts
};

// Throws std::runtime_error on an unterminated quoted field.
std::vector<Record> parse(std::string_view content, char sep = ',');
std::vector<Record> read_file(const std::string& path, char sep = ',');

std::string escape(std::string_view field, char sep = ',');
void write_row(std::ostream& os, const std::vector<std::string>& fields, char sep = ',');

}  // namespace toxspan::csv

#endif  // TOXSPAN_CSV_HPP_
