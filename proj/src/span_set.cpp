#include "toxspan/span_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "toxspan/text.hpp"

namespace toxspan {

SpanSet::SpanSet(std::vector<Range> ranges) {
  for (const auto& r : ranges) {
    if (r.start < 0 || r.end < r.start) {
      throw std::invalid_argument("invalid range [" + std::to_string(r.start) + "," +
                                  std::to_string(r.end) + ")");
    }
  }
  std::erase_if(ranges, [](const Range& r) { return r.start == r.end; });
  std::sort(ranges.begin(), ranges.end());
  for (const auto& r : ranges) {
    if (!ranges_.empty() && r.start <= ranges_.back().end) {
      ranges_.back().end = std::max(ranges_.back().end, r.end);
    } else {
      ranges_.push_back(r);
    }
  }
}

SpanSet SpanSet::from_offsets(std::span<const Offset> offsets) {
  std::vector<Range> ranges;
  ranges.reserve(offsets.size());
  for (Offset o : offsets) {
    if (o < 0) throw std::invalid_argument("negative offset " + std::to_string(o));
    ranges.push_back({o, o + 1});
  }
  return SpanSet(std::move(ranges));
}

SpanSet SpanSet::from_offsets(const std::set<Offset>& offsets) {
  std::vector<Offset> v(offsets.begin(), offsets.end());
  return from_offsets(std::span<const Offset>(v));
}

std::set<Offset> SpanSet::to_offsets() const {
  std::set<Offset> out;
  for (const auto& r : ranges_) {
    for (Offset o = r.start; o < r.end; ++o) out.insert(out.end(), o);
  }
  return out;
}

Offset SpanSet::size() const {
  Offset total = 0;
  for (const auto& r : ranges_) total += r.length();
  return total;
}

bool SpanSet::contains(Offset offset) const {
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), offset,
                             [](Offset o, const Range& r) { return o < r.start; });
  if (it == ranges_.begin()) return false;
  --it;
  return offset < it->end;
}

SpanSet SpanSet::unite(const SpanSet& other) const {
  std::vector<Range> all = ranges_;
  all.insert(all.end(), other.ranges_.begin(), other.ranges_.end());
  return SpanSet(std::move(all));
}

SpanSet SpanSet::intersect(const SpanSet& other) const {
  std::vector<Range> out;
  auto a = ranges_.begin();
  auto b = other.ranges_.begin();
  while (a != ranges_.end() && b != other.ranges_.end()) {
    Offset lo = std::max(a->start, b->start);
    Offset hi = std::min(a->end, b->end);
    if (lo < hi) out.push_back({lo, hi});
    if (a->end < b->end) {
      ++a;
    } else {
      ++b;
    }
  }
  return SpanSet(std::move(out));
}

Offset overlap(const SpanSet& a, const SpanSet& b) {
  Offset total = 0;
  auto x = a.ranges().begin();
  auto y = b.ranges().begin();
  while (x != a.ranges().end() && y != b.ranges().end()) {
    Offset lo = std::max(x->start, y->start);
    Offset hi = std::min(x->end, y->end);
    if (lo < hi) total += hi - lo;
    if (x->end < y->end) {
      ++x;
    } else {
      ++y;
    }
  }
  return total;
}

SpanSet merge_spans(const SpanSet& spans, MergeConfig cfg) {
  if (cfg.fill_chars < 0) throw std::invalid_argument("fill_chars must be >= 0");
  std::vector<Range> out;
  for (const auto& r : spans.ranges()) {
    if (!out.empty() && r.start - out.back().end <= cfg.fill_chars) {
      out.back().end = r.end;
    } else {
      out.push_back(r);
    }
  }
  return SpanSet(std::move(out));
}

std::vector<Token> tokenize(std::u32string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_word_char(text[j])) ++j;
    tokens.push_back({encode_utf8(text.substr(i, j - i)), static_cast<Offset>(i),
                      static_cast<Offset>(j)});
    i = j;
  }
  return tokens;
}

std::vector<Token> tokenize(std::string_view text) { return tokenize(decode_utf8(text)); }

std::string to_string(const SpanSet& spans) {
  std::ostringstream os;
  bool first = true;
  for (const auto& r : spans.ranges()) {
    if (!first) os << ' ';
    os << '[' << r.start << ',' << r.end << ')';
    first = false;
  }
  return os.str();
}

}  // namespace toxspan
