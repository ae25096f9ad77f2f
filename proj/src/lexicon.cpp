#include "toxspan/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "toxspan/io.hpp"
#include "toxspan/text.hpp"

namespace toxspan {

std::string_view to_string(InSpanRule rule) {
  switch (rule) {
    case InSpanRule::majority_chars:
      return "majority_chars";
    case InSpanRule::any_overlap:
      return "any_overlap";
    case InSpanRule::full_containment:
      return "full_containment";
  }
  return "?";
}

InSpanRule parse_in_span_rule(std::string_view name) {
  if (name == "majority_chars") return InSpanRule::majority_chars;
  if (name == "any_overlap") return InSpanRule::any_overlap;
  if (name == "full_containment") return InSpanRule::full_containment;
  throw std::invalid_argument("unknown in-span rule '" + std::string(name) + "'");
}

bool token_in_span(const SpanSet& gold, Offset start, Offset end, InSpanRule rule) {
  const Offset covered = overlap(gold, SpanSet{{start, end}});
  const Offset length = end - start;
  switch (rule) {
    case InSpanRule::majority_chars:
      return 2 * covered > length;
    case InSpanRule::any_overlap:
      return covered > 0;
    case InSpanRule::full_containment:
      return length > 0 && covered == length;
  }
  return false;
}

WordStatsMap count_word_stats(const Dataset& train, InSpanRule rule, const Tokenizer& tokenizer) {
  WordStatsMap stats;
  for (const auto& sample : train.samples) {
    auto tokens = tokenizer ? tokenizer(sample.text) : tokenize(sample.text);
    for (const auto& tok : tokens) {
      std::string word = fold_case_utf8(tok.surface);
      auto& ws = stats[word];
      if (ws.word.empty()) ws.word = word;
      ws.total_count++;
      if (token_in_span(sample.gold_spans, tok.start, tok.end, rule)) ws.in_span_count++;
    }
  }
  return stats;
}

double toxicity_score(const WordStats& stats) {
  if (stats.total_count == 0) {
    throw std::invalid_argument("word '" + stats.word + "' has no occurrences");
  }
  return static_cast<double>(stats.in_span_count) / static_cast<double>(stats.total_count);
}

bool Lexicon::contains(std::string_view word) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), word,
                             [](const LexiconEntry& e, std::string_view w) { return e.word < w; });
  return it != entries.end() && it->word == word;
}

Lexicon build_lexicon(const WordStatsMap& stats, const LexiconBuildConfig& cfg, std::string name) {
  if (!(cfg.theta >= 0.0 && cfg.theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0,1]");
  }
  if (cfg.min_occ < 1) throw std::invalid_argument("min_occ must be >= 1");
  Lexicon lex;
  lex.name = std::move(name);
  lex.source = LexiconSource::constructed;
  for (const auto& [word, ws] : stats) {
    if (ws.total_count < cfg.min_occ) continue;
    const double score = toxicity_score(ws);
    if (score > cfg.theta) lex.entries.push_back({word, score});
  }
  return lex;
}

Lexicon build_lexicon(const Dataset& train, const LexiconBuildConfig& cfg, std::string name) {
  return build_lexicon(count_word_stats(train, cfg.in_span_rule), cfg, std::move(name));
}

Lexicon parse_wordlist(std::string_view content, const std::string& name, LexiconSource source) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  Lexicon lex;
  lex.name = name;
  lex.source = source;
  std::unordered_set<std::string> seen;
  std::size_t lineno = 0;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (lineno == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    std::optional<double> score;
    auto tab = view.find('\t');
    if (tab != std::string_view::npos) {
      std::string score_text(trim(view.substr(tab + 1)));
      try {
        std::size_t used = 0;
        score = std::stod(score_text, &used);
        if (used != score_text.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw FormatError(name, lineno, "bad score '" + score_text + "'");
      }
      view = view.substr(0, tab);
    }
    view = trim(view);
    if (view.empty()) continue;
    std::string word = fold_case_utf8(view);
    if (!seen.insert(word).second) continue;
    lex.entries.push_back({std::move(word), score});
  }
  if (lex.entries.empty()) throw FormatError(name, 0, "word list is empty");
  std::sort(lex.entries.begin(), lex.entries.end(),
            [](const LexiconEntry& a, const LexiconEntry& b) { return a.word < b.word; });
  return lex;
}

Lexicon load_wordlist(const std::string& path, const std::string& name, LexiconSource source) {
  try {
    return parse_wordlist(read_text_file(path), name, source);
  } catch (const FormatError& e) {
    throw FormatError(path, e.line(), std::string(e.what()).substr(e.file().size() + 2));
  }
}

std::string format_lexicon(const Lexicon& lexicon) {
  std::vector<const LexiconEntry*> order;
  for (const auto& e : lexicon.entries) order.push_back(&e);
  std::stable_sort(order.begin(), order.end(), [](const LexiconEntry* a, const LexiconEntry* b) {
    if (a->score.has_value() != b->score.has_value()) return a->score.has_value();
    if (a->score && *a->score != *b->score) return *a->score > *b->score;
    return a->word < b->word;
  });
  std::string out;
  for (const auto* e : order) {
    out += e->word;
    if (e->score) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "\t%.17g", *e->score);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void save_lexicon(const Lexicon& lexicon, const std::string& path) {
  write_text_file(path, format_lexicon(lexicon));
}

std::string_view to_string(MatchKind kind) {
  return kind == MatchKind::substring ? "substring" : "word_boundary";
}

MatchKind parse_match_kind(std::string_view name) {
  if (name == "substring") return MatchKind::substring;
  if (name == "word_boundary" || name == "word") return MatchKind::word_boundary;
  throw std::invalid_argument("unknown match mode '" + std::string(name) + "'");
}

LexiconMatcher::LexiconMatcher(const Lexicon& lexicon, MatchMode mode, Tokenizer tokenizer)
    : mode_(mode), tokenizer_(std::move(tokenizer)) {
  std::vector<std::u32string> patterns;
  patterns.reserve(lexicon.entries.size());
  for (const auto& e : lexicon.entries) {
    auto p = decode_utf8(e.word);
    if (mode.case_fold) p = fold_case(p);
    patterns.push_back(std::move(p));
  }
  automaton_ = AhoCorasick(patterns);
}

SpanSet LexiconMatcher::predict(std::string_view text) const {
  if (automaton_.pattern_count() == 0) return {};
  std::u32string decoded = decode_utf8(text);
  if (mode_.case_fold) decoded = fold_case(decoded);

  std::vector<char> starts, ends;
  if (mode_.kind == MatchKind::word_boundary) {
    starts.assign(decoded.size() + 1, 0);
    ends.assign(decoded.size() + 1, 0);
    auto tokens = tokenizer_ ? tokenizer_(text) : tokenize(text);
    for (const auto& t : tokens) {
      starts[static_cast<std::size_t>(t.start)] = 1;
      ends[static_cast<std::size_t>(t.end)] = 1;
    }
  }
  std::vector<Range> ranges;
  automaton_.for_each_match(decoded, [&](std::size_t, std::size_t start, std::size_t end) {
    if (mode_.kind == MatchKind::word_boundary && !(starts[start] && ends[end])) return;
    ranges.push_back({static_cast<Offset>(start), static_cast<Offset>(end)});
  });
  return SpanSet(std::move(ranges));
}

SpanSet predict(std::string_view text, const Lexicon& lexicon, MatchMode mode) {
  return LexiconMatcher(lexicon, mode).predict(text);
}

}  // namespace toxspan
