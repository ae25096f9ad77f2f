// Character-offset span algebra.
//
// A SpanSet is the compact form of a set of character offsets: a sorted list
// of disjoint half-open ranges in which no two ranges touch. Any construction
// path normalizes to this form, so two SpanSets compare equal exactly when
// they describe the same offset set.

#ifndef TOXSPAN_SPAN_SET_HPP_
#define TOXSPAN_SPAN_SET_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace toxspan {

using Offset = std::int64_t;

struct Range {
  Offset start = 0;
  Offset end = 0;  // exclusive

  Offset length() const { return end - start; }
  friend bool operator==(const Range&, const Range&) = default;
  friend auto operator<=>(const Range&, const Range&) = default;
};

class SpanSet {
 public:
  SpanSet() = default;

  // Ranges may be unsorted, overlapping or touching; empty ranges are dropped.
  // Throws std::invalid_argument on a negative start or end < start.
  explicit SpanSet(std::vector<Range> ranges);
  SpanSet(std::initializer_list<Range> ranges)
      : SpanSet(std::vector<Range>(ranges)) {}

  static SpanSet from_offsets(std::span<const Offset> offsets);
  static SpanSet from_offsets(const std::set<Offset>& offsets);
  std::set<Offset> to_offsets() const;

  const std::vector<Range>& ranges() const { return ranges_; }
  bool empty() const { return ranges_.empty(); }
  // Number of offsets covered.
  Offset size() const;
  bool contains(Offset offset) const;
  // One past the last covered offset, 0 when empty.
  Offset max_end() const { return ranges_.empty() ? 0 : ranges_.back().end; }

  SpanSet unite(const SpanSet& other) const;
  SpanSet intersect(const SpanSet& other) const;

  friend bool operator==(const SpanSet&, const SpanSet&) = default;

 private:
  std::vector<Range> ranges_;
};

// Number of offsets present in both sets.
Offset overlap(const SpanSet& a, const SpanSet& b);

struct MergeConfig {
  Offset fill_chars = 0;
};

// Joins consecutive ranges whose gap (next.start - prev.end) is at most
// cfg.fill_chars; the gap characters become part of the joined span.
SpanSet merge_spans(const SpanSet& spans, MergeConfig cfg);

struct Token {
  std::string surface;  // UTF-8
  Offset start = 0;
  Offset end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// A tokenizer maps a UTF-8 text to tokens with character offsets.
using Tokenizer = std::function<std::vector<Token>(std::string_view)>;

// Default tokenizer: maximal runs of word characters (see is_word_char).
std::vector<Token> tokenize(std::string_view text);
std::vector<Token> tokenize(std::u32string_view text);

// "[0,4) [5,8)" style rendering, used by sheets and diagnostics.
std::string to_string(const SpanSet& spans);

}  // namespace toxspan

#endif  // TOXSPAN_SPAN_SET_HPP_
