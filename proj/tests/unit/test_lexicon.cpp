#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "test_util.hpp"
#include "toxspan/aho_corasick.hpp"
#include "toxspan/lexicon.hpp"

using namespace toxspan;
using testutil::sample;

namespace {

Dataset idiot_fixture() {
  Dataset ds;
  ds.samples = {sample("1", "you idiot", true, SpanSet{{4, 9}}),
                sample("2", "IDIOT!", true, SpanSet{{0, 5}}),
                sample("3", "not an idiot here", true),
                sample("4", "fine day", false)};
  return ds;
}

std::vector<std::string> words(const Lexicon& lex) {
  std::vector<std::string> out;
  for (const auto& e : lex.entries) out.push_back(e.word);
  return out;
}

}  // namespace

TEST_CASE("count_word_stats") {
  auto stats = count_word_stats(idiot_fixture());
  CHECK(stats.at("idiot").total_count == 3);
  CHECK(stats.at("idiot").in_span_count == 2);
  CHECK(stats.at("you").in_span_count == 0);
  CHECK(stats.at("fine").total_count == 1);
  CHECK(toxicity_score(stats.at("idiot")) == doctest::Approx(2.0 / 3));
  CHECK(toxicity_score({"w", 4, 0}) == 0.0);
  CHECK(toxicity_score({"w", 4, 4}) == 1.0);
  CHECK_THROWS_AS(toxicity_score({"w", 0, 0}), std::invalid_argument);
}

TEST_CASE("in-span rules") {
  SpanSet gold{{0, 2}};
  CHECK_FALSE(token_in_span(gold, 0, 4, InSpanRule::majority_chars));  // exactly half
  CHECK(token_in_span(gold, 0, 3, InSpanRule::majority_chars));
  CHECK(token_in_span(gold, 0, 4, InSpanRule::any_overlap));
  CHECK_FALSE(token_in_span(gold, 2, 4, InSpanRule::any_overlap));
  CHECK(token_in_span(gold, 0, 2, InSpanRule::full_containment));
  CHECK_FALSE(token_in_span(gold, 0, 3, InSpanRule::full_containment));
  CHECK(parse_in_span_rule(to_string(InSpanRule::any_overlap)) == InSpanRule::any_overlap);
}

TEST_CASE("build_lexicon thresholds") {
  auto ds = idiot_fixture();
  CHECK(words(build_lexicon(ds, {0.5, 1, InSpanRule::majority_chars})) ==
        std::vector<std::string>{"idiot"});
  CHECK(words(build_lexicon(ds, {0.5, 4, InSpanRule::majority_chars})).empty());
  CHECK(build_lexicon(ds, {1.0, 1, InSpanRule::majority_chars}).entries.empty());
  auto zero = build_lexicon(ds, {0.0, 1, InSpanRule::majority_chars});
  CHECK(zero.entries.size() == 1);
  CHECK(*zero.entries[0].score == doctest::Approx(2.0 / 3));
  CHECK_THROWS_AS(build_lexicon(ds, {1.5, 1, InSpanRule::majority_chars}), std::invalid_argument);
  CHECK_THROWS_AS(build_lexicon(ds, {0.5, 0, InSpanRule::majority_chars}), std::invalid_argument);
}

TEST_CASE("build_lexicon matches the naive recount") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vocab = {"idiot", "Jerk", "you", "are", "a", "total", "moron",
                                          "nice", "day", "stupid", "ok", "so"};
  Dataset ds;
  std::vector<std::pair<std::string, oracle::OffsetSet>> naive;
  for (int i = 0; i < 40; ++i) {
    std::string text;
    std::set<Offset> gold;
    int n = 1 + static_cast<int>(rng() % 8);
    for (int w = 0; w < n; ++w) {
      if (!text.empty()) text += ' ';
      const auto& word = vocab[rng() % vocab.size()];
      auto start = static_cast<Offset>(text.size());
      text += word;
      if (rng() % 3 == 0) {
        auto len = static_cast<Offset>(word.size());
        auto from = start + static_cast<Offset>(rng() % 2);
        for (Offset k = from; k < start + len; ++k) gold.insert(k);
      }
    }
    ds.samples.push_back(sample(std::to_string(i), text, true, SpanSet::from_offsets(gold)));
    naive.emplace_back(text, oracle::OffsetSet(gold.begin(), gold.end()));
  }
  auto counts = oracle::recount(naive);
  auto stats = count_word_stats(ds);
  for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (std::size_t m : {1u, 3u, 5u}) {
      auto got = words(build_lexicon(stats, {theta, m, InSpanRule::majority_chars}));
      auto want = oracle::naive_lexicon(counts, theta, m);
      CHECK(got == std::vector<std::string>(want.begin(), want.end()));
    }
  }
}

TEST_CASE("wordlists") {
  auto lex = parse_wordlist("Idiot\nidiot\n  jerk\t0.9 \n\n", "w");
  REQUIRE(lex.entries.size() == 2);
  CHECK(lex.entries[0] == LexiconEntry{"idiot", std::nullopt});
  CHECK(lex.entries[1].word == "jerk");
  CHECK(*lex.entries[1].score == 0.9);
  CHECK(lex.contains("jerk"));
  CHECK_FALSE(lex.contains("Jerk"));
  CHECK_THROWS(parse_wordlist("\n \n", "empty"));
  CHECK(format_lexicon(lex) == "jerk\t0.90000000000000002\nidiot\n");

  testutil::TempDir dir;
  auto path = dir.file("lex.txt");
  save_lexicon(lex, path);
  auto back = load_wordlist(path, "w");
  CHECK(back.entries.size() == 2);
  CHECK(*back.entries[1].score == 0.9);
}

TEST_CASE("prediction modes") {
  Lexicon lex = parse_wordlist("ho\nlame\n", "toy");
  std::string text = "somehow blame him";
  CHECK(predict(text, lex, {MatchKind::substring, true}) == SpanSet{{4, 6}, {9, 13}});
  CHECK(predict(text, lex, {MatchKind::word_boundary, true}).empty());
  CHECK(predict(text, Lexicon{}, {}).empty());

  Lexicon phrase = parse_wordlist("you idiot\nidiot\n", "p");
  CHECK(predict("YOU IDIOT, idiots", phrase, {MatchKind::word_boundary, true}) ==
        SpanSet{{0, 9}});
  CHECK(predict("YOU IDIOT, idiots", phrase, {MatchKind::substring, true}) ==
        SpanSet{{0, 9}, {11, 16}});
  CHECK(predict("YOU IDIOT", phrase, {MatchKind::substring, false}).empty());

  Lexicon accent = parse_wordlist("\xC3\xA9t\xC3\xA9\n", "a");
  CHECK(predict("x \xC3\x89T\xC3\x89!", accent, {}) == SpanSet{{2, 5}});
  CHECK(parse_match_kind("word_boundary") == MatchKind::word_boundary);
}

TEST_CASE("Aho-Corasick agrees with a naive scan") {
  std::mt19937_64 rng(5);
  const std::string alphabet = "abAB c";
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<std::string> entries;
    int k = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < k; ++i) {
      std::string e;
      int len = 1 + static_cast<int>(rng() % 4);
      for (int j = 0; j < len; ++j) e += "abc"[rng() % 3];
      entries.push_back(e);
    }
    std::string text;
    int tlen = static_cast<int>(rng() % 40);
    for (int j = 0; j < tlen; ++j) text += alphabet[rng() % alphabet.size()];

    std::string content;
    for (const auto& e : entries) content += e + "\n";
    auto lex = parse_wordlist(content, "r");
    auto got = predict(text, lex, {MatchKind::substring, true});
    auto want = oracle::substring_scan(text, entries);
    CHECK(got.to_offsets() == std::set<Offset>(want.begin(), want.end()));
  }
}

TEST_CASE("AhoCorasick reports every overlapping match") {
  AhoCorasick ac({U"he", U"she", U"hers", U"his"});
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> hits;
  ac.for_each_match(U"ushers", [&](std::size_t p, std::size_t s, std::size_t e) {
    hits.emplace_back(p, s, e);
  });
  std::sort(hits.begin(), hits.end());
  REQUIRE(hits.size() == 3);
  CHECK(hits[0] == std::make_tuple(std::size_t{0}, std::size_t{2}, std::size_t{4}));
  CHECK(hits[1] == std::make_tuple(std::size_t{1}, std::size_t{1}, std::size_t{4}));
  CHECK(hits[2] == std::make_tuple(std::size_t{2}, std::size_t{2}, std::size_t{6}));
}
