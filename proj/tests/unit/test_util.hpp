#ifndef TOXSPAN_TESTS_UNIT_TEST_UTIL_HPP_
#define TOXSPAN_TESTS_UNIT_TEST_UTIL_HPP_

#include <filesystem>
#include <random>
#include <string>

#include <doctest.h>

#include "toxspan/corpus.hpp"
#include "toxspan/io.hpp"

namespace testutil {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("toxspan-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& content = {}) const {
    auto p = (path_ / name).string();
    if (!content.empty()) toxspan::write_text_file(p, content);
    return p;
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline toxspan::Sample sample(std::string id, std::string text, bool toxic,
                              toxspan::SpanSet gold = {},
                              toxspan::Split split = toxspan::Split::train) {
  return {std::move(id), std::move(text), toxic, std::move(gold), split};
}

}  // namespace testutil

namespace doctest {
template <>
struct StringMaker<toxspan::SpanSet> {
  static String convert(const toxspan::SpanSet& s) { return toxspan::to_string(s).c_str(); }
};
}  // namespace doctest

#endif  // TOXSPAN_TESTS_UNIT_TEST_UTIL_HPP_
