// File and JSON Lines plumbing shared by the readers and writers.

#ifndef TOXSPAN_IO_HPP_
#define TOXSPAN_IO_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace toxspan {

// Error raised by any reader; carries the file and the 1-based line (or row)
// that failed, 0 when not applicable.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& file, std::size_t line, const std::string& what);
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

std::string read_text_file(const std::string& path);
// Writes through a temporary file and renames, creating parent directories.
void write_text_file(const std::string& path, std::string_view content);

// Calls `fn(object, line)` for every non-blank line. Parse errors become
// FormatError; exceptions thrown by `fn` are rewrapped with file/line.
void for_each_jsonl(const std::string& path,
                    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace toxspan

#endif  // TOXSPAN_IO_HPP_
