// Lexicon-based span prediction.
//
// A constructed lexicon is induced from span-annotated training data: each
// word gets the fraction of its occurrences that fall inside a gold span, and
// words scoring strictly above theta with at least min_occ occurrences enter
// the lexicon. Off-the-shelf word lists load from plain text. Prediction marks
// every occurrence of every entry in the text.

#ifndef TOXSPAN_LEXICON_HPP_
#define TOXSPAN_LEXICON_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toxspan/aho_corasick.hpp"
#include "toxspan/corpus.hpp"
#include "toxspan/span_set.hpp"

namespace toxspan {

struct WordStats {
  std::string word;
  std::size_t total_count = 0;
  std::size_t in_span_count = 0;
};

// When a token occurrence counts as being inside a gold span.
enum class InSpanRule {
  majority_chars,    // strictly more than half of its characters covered
  any_overlap,       // at least one character covered
  full_containment,  // every character covered
};

std::string_view to_string(InSpanRule rule);
InSpanRule parse_in_span_rule(std::string_view name);

// Whether a token [start, end) counts as in-span under `rule`.
bool token_in_span(const SpanSet& gold, Offset start, Offset end, InSpanRule rule);

using WordStatsMap = std::map<std::string, WordStats>;

// Counts every token of every sample in `train`, lowercased.
WordStatsMap count_word_stats(const Dataset& train, InSpanRule rule = InSpanRule::majority_chars,
                              const Tokenizer& tokenizer = {});

// in_span_count / total_count. Throws std::invalid_argument if total_count == 0.
double toxicity_score(const WordStats& stats);

struct LexiconBuildConfig {
  double theta = 0.5;
  std::size_t min_occ = 1;
  InSpanRule in_span_rule = InSpanRule::majority_chars;
};

enum class LexiconSource { constructed, wordlist };

struct LexiconEntry {
  std::string word;
  std::optional<double> score;
  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct Lexicon {
  std::string name;
  LexiconSource source = LexiconSource::constructed;
  std::vector<LexiconEntry> entries;  // sorted by word, unique, lowercased

  bool contains(std::string_view word) const;
  friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

// Throws std::invalid_argument when theta is outside [0,1] or min_occ is 0.
Lexicon build_lexicon(const WordStatsMap& stats, const LexiconBuildConfig& cfg,
                      std::string name = "constructed");
Lexicon build_lexicon(const Dataset& train, const LexiconBuildConfig& cfg,
                      std::string name = "constructed");

// One entry per line, optionally followed by a tab and a score. Entries are
// trimmed, lowercased and deduplicated (first occurrence wins). An empty
// list is an error.
Lexicon load_wordlist(const std::string& path, const std::string& name,
                      LexiconSource source = LexiconSource::wordlist);
Lexicon parse_wordlist(std::string_view content, const std::string& name,
                       LexiconSource source = LexiconSource::wordlist);

// `word<TAB>score` lines sorted by descending score, then word. Entries
// without a score are written after scored ones, word only.
std::string format_lexicon(const Lexicon& lexicon);
void save_lexicon(const Lexicon& lexicon, const std::string& path);

enum class MatchKind { substring, word_boundary };

struct MatchMode {
  MatchKind kind = MatchKind::substring;
  bool case_fold = true;
};

std::string_view to_string(MatchKind kind);
MatchKind parse_match_kind(std::string_view name);

// Compiled lexicon for repeated prediction.
class LexiconMatcher {
 public:
  LexiconMatcher(const Lexicon& lexicon, MatchMode mode, Tokenizer tokenizer = {});

  SpanSet predict(std::string_view text) const;

 private:
  AhoCorasick automaton_;
  MatchMode mode_;
  Tokenizer tokenizer_;
};

SpanSet predict(std::string_view text, const Lexicon& lexicon, MatchMode mode = {});

}  // namespace toxspan

#endif  // TOXSPAN_LEXICON_HPP_
