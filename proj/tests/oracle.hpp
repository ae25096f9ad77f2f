// Brute-force reference implementations used by the tests. They work on
// explicit offset sets and naive scans and share no code with the library
// beyond the data types.

#ifndef TOXSPAN_TESTS_ORACLE_HPP_
#define TOXSPAN_TESTS_ORACLE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using OffsetSet = std::set<long long>;

struct Score {
  double f1 = 0, p = 0, r = 0;
};

inline Score f1_plus(const OffsetSet& pred, const OffsetSet& gold) {
  if (pred.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  if (gold.empty() || pred.empty()) return {0.0, 0.0, 0.0};
  std::size_t common = 0;
  for (auto o : pred) common += gold.count(o);
  if (common == 0) return {0.0, 0.0, 0.0};
  double p = static_cast<double>(common) / static_cast<double>(pred.size());
  double r = static_cast<double>(common) / static_cast<double>(gold.size());
  return {2 * p * r / (p + r), p, r};
}

// Offsets of a bitmask over [0, n).
inline OffsetSet from_mask(std::uint64_t mask, int n) {
  OffsetSet s;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) s.insert(i);
  }
  return s;
}

// Gap filling on explicit offsets: any run of missing offsets of length <= n
// lying strictly between two present offsets is filled.
inline OffsetSet merge(const OffsetSet& s, long long n) {
  OffsetSet out = s;
  if (s.empty()) return out;
  long long prev = *s.begin();
  for (auto o : s) {
    if (o - prev - 1 > 0 && o - prev - 1 <= n) {
      for (long long k = prev + 1; k < o; ++k) out.insert(k);
    }
    prev = o;
  }
  return out;
}

inline char lower_ascii(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 32) : c; }

// Every offset inside any case-insensitive occurrence of any entry (ASCII).
inline OffsetSet substring_scan(const std::string& text, const std::vector<std::string>& entries) {
  std::string t = text;
  for (auto& c : t) c = lower_ascii(c);
  OffsetSet out;
  for (auto e : entries) {
    for (auto& c : e) c = lower_ascii(c);
    if (e.empty() || e.size() > t.size()) continue;
    for (std::size_t i = 0; i + e.size() <= t.size(); ++i) {
      if (t.compare(i, e.size(), e) == 0) {
        for (std::size_t k = i; k < i + e.size(); ++k) out.insert(static_cast<long long>(k));
      }
    }
  }
  return out;
}

inline bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'';
}

// ASCII tokens as (start, end).
inline std::vector<std::pair<long long, long long>> tokens(const std::string& text) {
  std::vector<std::pair<long long, long long>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && word_char(text[j])) ++j;
    out.emplace_back(static_cast<long long>(i), static_cast<long long>(j));
    i = j;
  }
  return out;
}

struct Counts {
  std::size_t total = 0, in_span = 0;
};

// Word counts with the strict-majority in-span rule, over ASCII texts.
inline std::map<std::string, Counts> recount(
    const std::vector<std::pair<std::string, OffsetSet>>& samples) {
  std::map<std::string, Counts> out;
  for (const auto& [text, gold] : samples) {
    for (auto [s, e] : tokens(text)) {
      std::string w = text.substr(static_cast<std::size_t>(s), static_cast<std::size_t>(e - s));
      for (auto& c : w) c = lower_ascii(c);
      long long covered = 0;
      for (long long k = s; k < e; ++k) covered += gold.count(k);
      auto& c = out[w];
      c.total++;
      if (2 * covered > e - s) c.in_span++;
    }
  }
  return out;
}

inline std::set<std::string> naive_lexicon(const std::map<std::string, Counts>& counts, double theta,
                                           std::size_t min_occ) {
  std::set<std::string> out;
  for (const auto& [w, c] : counts) {
    if (c.total >= min_occ && static_cast<double>(c.in_span) / static_cast<double>(c.total) > theta) {
      out.insert(w);
    }
  }
  return out;
}

}  // namespace oracle

#endif  // TOXSPAN_TESTS_ORACLE_HPP_
