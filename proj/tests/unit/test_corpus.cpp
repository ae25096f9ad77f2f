#include <doctest.h>

#include "test_util.hpp"
#include "toxspan/corpus.hpp"
#include "toxspan/io.hpp"

using namespace toxspan;
using testutil::sample;
using testutil::TempDir;

TEST_CASE("split names") {
  CHECK(parse_split("train") == Split::train);
  CHECK(parse_split("val") == Split::dev);
  CHECK(parse_split("trial") == Split::dev);
  CHECK(to_string(Split::test) == "test");
  CHECK_THROWS(parse_split("holdout"));
}

TEST_CASE("SemEval CSV ingest") {
  TempDir dir;
  auto path = dir.file("train.csv",
                       "spans,text\n"
                       "\"[0, 1, 2, 3]\",jerk face\n"
                       "[],have a nice day\n"
                       "\"[8, 9, 10, 11, 13, 14]\",\"you are scum, ok\"\n");
  auto ds = ingest_semeval(path, Split::train);
  REQUIRE(ds.samples.size() == 3);
  CHECK(ds.samples[0].gold_spans == SpanSet{{0, 4}});
  CHECK(ds.samples[0].toxic);
  CHECK(ds.samples[0].id == "semeval-train-0");
  CHECK(ds.samples[1].gold_spans.empty());
  CHECK(ds.samples[1].toxic);
  CHECK(ds.samples[2].gold_spans == SpanSet{{8, 12}, {13, 15}});
  CHECK_NOTHROW(validate(ds));

  SUBCASE("custom prefix") {
    auto p = ingest_semeval(path, Split::dev, {"se"});
    CHECK(p.samples[2].id == "se-2");
    CHECK(p.samples[2].split == Split::dev);
  }
}

TEST_CASE("SemEval ingest errors carry the row") {
  TempDir dir;
  auto bad_list = dir.file("a.csv", "spans,text\n[],fine\n\"[1, x]\",oops\n");
  try {
    ingest_semeval(bad_list, Split::train);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 3);
  }
  auto out_of_range = dir.file("b.csv", "spans,text\n\"[0, 9]\",short\n");
  CHECK_THROWS_AS(ingest_semeval(out_of_range, Split::train), FormatError);
}

namespace {

const char* kHateXplain = R"({
  "p1": {"post_id": "p1", "post_tokens": ["you", "are", "scum"],
         "annotators": [{"label": "hatespeech"}, {"label": "hatespeech"}, {"label": "normal"}],
         "rationales": [[0, 0, 1], [0, 0, 1], [0, 0, 0]]},
  "p2": {"post_id": "p2", "post_tokens": ["have", "a", "nice", "day"],
         "annotators": [{"label": "normal"}, {"label": "normal"}, {"label": "offensive"}],
         "rationales": []},
  "p3": {"post_id": "p3", "post_tokens": ["tie", "case"],
         "annotators": [{"label": "normal"}, {"label": "offensive"}, {"label": "hatespeech"}],
         "rationales": []},
  "p4": {"post_id": "p4", "post_tokens": ["all", "zero"],
         "annotators": [{"label": "offensive"}, {"label": "offensive"}, {"label": "normal"}],
         "rationales": [[0, 0], [0, 0]]}
})";

}  // namespace

TEST_CASE("HateXplain ingest") {
  TempDir dir;
  auto path = dir.file("dataset.json", kHateXplain);
  IngestLog log;
  auto ds = ingest_hatexplain(path, Split::train, {}, &log);
  REQUIRE(ds.samples.size() == 3);  // p3 has no majority
  CHECK(log.warnings.size() == 1);
  const auto& p1 = ds.samples[0];
  CHECK(p1.id == "p1");
  CHECK(p1.text == "you are scum");
  CHECK(p1.toxic);
  CHECK(p1.gold_spans == SpanSet{{8, 12}});
  CHECK_FALSE(ds.samples[1].toxic);
  CHECK(ds.samples[2].toxic);
  CHECK(ds.samples[2].gold_spans.empty());

  SUBCASE("divisions file") {
    auto div = dir.file("div.json", R"({"train": ["p1"], "val": ["p2"], "test": ["p4", "p3"]})");
    auto test = ingest_hatexplain(path, Split::test, {div, false});
    REQUIRE(test.samples.size() == 1);
    CHECK(test.samples[0].id == "p4");
    auto all = ingest_hatexplain_all(path, div);
    CHECK(all.samples.size() == 3);
    CHECK(all.subset(Split::dev).samples.at(0).id == "p2");
  }
  SUBCASE("bad rationale length") {
    auto bad = dir.file("bad.json", R"({"q": {"post_tokens": ["a", "b"],
      "annotators": [{"label": "offensive"}, {"label": "offensive"}, {"label": "normal"}],
      "rationales": [[1]]}})");
    CHECK_THROWS_AS(ingest_hatexplain(bad, Split::train), FormatError);
    IngestLog skip_log;
    auto skipped = ingest_hatexplain(bad, Split::train, {"", true}, &skip_log);
    CHECK(skipped.samples.empty());
    CHECK(skip_log.warnings.size() == 1);
  }
}

TEST_CASE("balance_binary") {
  Dataset ds;
  for (int i = 0; i < 10; ++i) ds.samples.push_back(sample("t" + std::to_string(i), "bad", true));
  Dataset pool;
  for (int i = 0; i < 25; ++i) pool.samples.push_back(sample("n" + std::to_string(i), "ok", false));

  auto out = balance_binary(ds, pool, 42);
  std::size_t toxic = 0, nontoxic = 0;
  for (const auto& s : out.samples) (s.toxic ? toxic : nontoxic)++;
  CHECK(toxic == 10);
  CHECK(nontoxic == 10);
  CHECK(balance_binary(ds, pool, 42) == out);
  CHECK(balance_binary(out, pool, 7) == out);

  Dataset small;
  for (int i = 0; i < 3; ++i) small.samples.push_back(sample("n" + std::to_string(i), "ok", false));
  CHECK_THROWS_AS(balance_binary(ds, small, 1), std::runtime_error);

  Dataset wrong_split = pool;
  for (auto& s : wrong_split.samples) s.split = Split::test;
  CHECK_THROWS_AS(balance_binary(ds, wrong_split, 1), std::runtime_error);
}

TEST_CASE("compute_stats") {
  Dataset ds;
  ds.samples = {sample("a", "0123456789", true, SpanSet{{2, 4}})};
  auto st = compute_stats(ds);
  REQUIRE(st.span_pct.has_value());
  CHECK(*st.span_pct == doctest::Approx(0.2));
  REQUIRE(st[Split::train].has_value());
  CHECK(st[Split::train]->toxic_with_span == 1.0);
  CHECK_FALSE(st[Split::dev].has_value());

  ds.samples.push_back(sample("b", "fine", false));
  ds.samples.push_back(sample("c", "rude", true));
  ds.samples.push_back(sample("d", "x", false, {}, Split::test));
  st = compute_stats(ds);
  CHECK(st[Split::train]->count == 3);
  CHECK(st[Split::train]->toxic_without_span == doctest::Approx(1.0 / 3));
  CHECK(st[Split::train]->nontoxic == doctest::Approx(1.0 / 3));
  CHECK(st[Split::test]->nontoxic == 1.0);
  CHECK(*st.span_pct == doctest::Approx(0.1));
}

TEST_CASE("canonical format") {
  TempDir dir;
  Dataset ds;
  ds.name = "mini";
  ds.provenance = "unit";
  ds.samples = {sample("a", "caf\xC3\xA9 jerk", true, SpanSet{{5, 9}}),
                sample("b", "line\nbreak \"quoted\"", false, {}, Split::dev),
                sample("c", "x", true, {}, Split::test)};
  auto path = dir.file("ds.jsonl");
  write_canonical(ds, path);
  CHECK(read_canonical(path) == ds);
  CHECK(read_text_file(path) == to_canonical_string(ds));

  Dataset empty;
  write_canonical(empty, path);
  CHECK(read_canonical(path) == empty);

  auto dup = dir.file("dup.jsonl",
                      "{\"schema\":\"toxspan/1\"}\n"
                      "{\"id\":\"x\",\"text\":\"a\",\"toxic\":false,\"spans\":[],\"split\":\"train\"}\n"
                      "{\"id\":\"x\",\"text\":\"b\",\"toxic\":false,\"spans\":[],\"split\":\"train\"}\n");
  try {
    read_canonical(dup);
    FAIL("expected rejection");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
  }

  auto old = dir.file("old.jsonl", "{\"schema\":\"toxspan/0\"}\n");
  try {
    read_canonical(old);
    FAIL("expected rejection");
  } catch (const std::exception& e) {
    std::string msg = e.what();
    CHECK(msg.find("toxspan/1") != std::string::npos);
    CHECK(msg.find("toxspan/0") != std::string::npos);
  }
}

TEST_CASE("validate") {
  Dataset ds;
  ds.samples = {sample("a", "abc", false, SpanSet{{0, 1}})};
  CHECK_THROWS_AS(validate(ds), std::invalid_argument);
  ds.samples = {sample("a", "abc", true, SpanSet{{0, 4}})};
  CHECK_THROWS_AS(validate(ds), std::invalid_argument);
  ds.samples = {sample("a", "abc", true), sample("a", "d", true)};
  CHECK_THROWS_AS(validate(ds), std::invalid_argument);
}
