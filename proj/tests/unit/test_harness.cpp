#include <doctest.h>

#include <algorithm>

#include "test_util.hpp"
#include "toxspan/harness.hpp"

using namespace toxspan;
using testutil::sample;

namespace {

// Toxic samples carry "idiot"/"moron" spans; the dev split is shaped so that
// a lexicon with both words wins.
Dataset domain(const std::string& prefix, const std::string& slur) {
  Dataset ds;
  ds.name = prefix;
  int n = 0;
  auto add = [&](const std::string& text, bool toxic, SpanSet gold, Split split) {
    ds.samples.push_back(sample(prefix + std::to_string(n++), text, toxic, std::move(gold), split));
  };
  for (Split split : kAllSplits) {
    add("you " + slur, true, SpanSet{{4, 4 + static_cast<Offset>(slur.size())}}, split);
    add("what an idiot", true, SpanSet{{8, 13}}, split);
    add("an idiot and a " + slur, true,
        SpanSet{{3, 8}, {15, 15 + static_cast<Offset>(slur.size())}}, split);
    add("nice day", false, {}, split);
    add("you are nice", false, {}, split);
    add("idiot proof design", false, {}, split);
  }
  return ds;
}

MethodSpec constructed() {
  MethodSpec m;
  m.name = "constructed";
  m.kind = MethodKind::constructed_lexicon;
  return m;
}

MethodSpec wordlist() {
  MethodSpec m;
  m.name = "wordlist";
  m.kind = MethodKind::wordlist_lexicon;
  m.lexicon = parse_wordlist("idiot\nmoron\n", "wordlist");
  return m;
}

}  // namespace

TEST_CASE("grid enumeration") {
  auto g = GridSpec::defaults();
  CHECK(g.fill_chars == std::vector<Offset>{0, 1, 9999});
  CHECK(g.theta.size() == 21);
  CHECK(g.tau.size() == 23);
  CHECK(g.tau.front() == doctest::Approx(-0.05));
  CHECK(g.tau.back() == doctest::Approx(0.5));
  CHECK(enumerate_grid(MethodKind::constructed_lexicon, g).size() == 315);
  CHECK(enumerate_grid(MethodKind::rationale_file, g).size() == 69);
  CHECK(enumerate_grid(MethodKind::wordlist_lexicon, g).size() == 3);
  CHECK(enumerate_grid(MethodKind::span_file, g).size() == 3);

  auto pts = enumerate_grid(MethodKind::constructed_lexicon, g);
  CHECK(pts[0] == GridPoint{0, 0.0, 1, std::nullopt});
  CHECK(pts[1] == GridPoint{0, 0.0, 3, std::nullopt});
  CHECK(pts[5].theta == doctest::Approx(0.05));
  CHECK(pts.back().fill_chars == 9999);

  GridSpec shuffled = g;
  std::reverse(shuffled.theta.begin(), shuffled.theta.end());
  std::reverse(shuffled.fill_chars.begin(), shuffled.fill_chars.end());
  shuffled.min_occ.push_back(3);
  CHECK(enumerate_grid(MethodKind::constructed_lexicon, shuffled) == pts);
}

TEST_CASE("setting and objective names") {
  CHECK(parse_setting("oracle") == Setting::oracle);
  CHECK(parse_setting("ToxicInferred") == Setting::inferred);
  CHECK(parse_objective("macro") == Objective::macro_f1p);
  CHECK(default_objective(Setting::oracle) == Objective::toxic_f1p);
  CHECK(default_objective(Setting::inferred) == Objective::macro_f1p);
  CHECK(to_string(Setting::oracle) == "ToxicOracle");
  CHECK_THROWS(parse_setting("neither"));
}

TEST_CASE("retention") {
  CHECK(*retention(0.5, 0.25) == 0.5);
  CHECK(*retention(0.37, 0.37) == 1.0);
  CHECK_FALSE(retention(0.0, 0.3).has_value());
}

TEST_CASE("grid_search is deterministic and picks the first best point") {
  auto ds = domain("a", "moron");
  auto train = ds.subset(Split::train);
  auto dev = ds.subset(Split::dev);
  SearchOptions opts;
  auto a = grid_search(constructed(), train, dev, GridSpec::defaults(), opts);
  opts.jobs = 4;
  auto b = grid_search(constructed(), train, dev, GridSpec::defaults(), opts);
  CHECK(a.best == b.best);
  REQUIRE(a.trace.size() == 315);
  REQUIRE(b.trace.size() == 315);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].point == b.trace[i].point);
    CHECK(a.trace[i].objective == b.trace[i].objective);
  }
  CHECK(*a.objective == 1.0);
  auto first = std::find_if(a.trace.begin(), a.trace.end(),
                            [&](const TraceEntry& e) { return e.objective == a.objective; });
  CHECK(first->point == a.best);
  CHECK_FALSE(a.degenerate);
}

TEST_CASE("grid_search under the inferred setting") {
  auto ds = domain("a", "moron");
  auto train = ds.subset(Split::train);
  auto dev = ds.subset(Split::dev);
  SearchOptions opts;
  opts.setting = Setting::inferred;
  opts.objective = Objective::macro_f1p;
  CHECK_THROWS(grid_search(wordlist(), train, dev, GridSpec::defaults(), opts));

  auto bin = gold_binary(dev);
  opts.dev_binary = &bin;
  auto tuned = grid_search(wordlist(), train, dev, GridSpec::defaults(), opts);
  // gating with gold labels removes the "idiot proof" false positive
  CHECK(*tuned.objective == 1.0);

  opts.setting = Setting::oracle;
  auto ungated = grid_search(wordlist(), train, dev, GridSpec::defaults(), opts);
  CHECK(*ungated.objective < 1.0);
}

TEST_CASE("degenerate searches still return a point") {
  auto ds = domain("a", "moron");
  auto train = ds.subset(Split::train);
  auto dev = ds.subset(Split::dev);
  GridSpec g = GridSpec::defaults();
  g.theta = {1.0};
  auto tuned = grid_search(constructed(), train, dev, g, {});
  CHECK(tuned.degenerate);
  CHECK(tuned.best == GridPoint{0, 1.0, 1, std::nullopt});
}

TEST_CASE("run_experiment") {
  ExperimentConfig cfg;
  cfg.name = "unit";
  cfg.datasets["a"] = domain("a", "moron");
  cfg.datasets["b"] = domain("b", "jerk");
  cfg.runs = {{"a", {"a", "b"}}, {"b", {"b", "a"}}};
  auto table = run_experiment(cfg, {constructed(), wordlist()});
  REQUIRE(table.rows.size() == 8);

  const ResultRow* wl_in = nullptr;
  const ResultRow* wl_cross = nullptr;
  for (const auto& r : table.rows) {
    if (r.method == "wordlist" && r.eval == "b" && r.train == "b") wl_in = &r;
    if (r.method == "wordlist" && r.eval == "b" && r.train == "a") wl_cross = &r;
  }
  REQUIRE(wl_in);
  REQUIRE(wl_cross);
  CHECK(report_values(wl_in->report) == report_values(wl_cross->report));
  CHECK(*wl_cross->retention == 1.0);
  CHECK(wl_in->in_domain);
  CHECK_FALSE(wl_cross->in_domain);

  auto again = run_experiment(cfg, {constructed(), wordlist()});
  CHECK(again.to_csv() == table.to_csv());
  CHECK(again.trace_csv() == table.trace_csv());
  CHECK(again.to_text() == table.to_text());
}

TEST_CASE("cross-domain evaluation only reads the eval test split") {
  ExperimentConfig cfg;
  cfg.datasets["a"] = domain("a", "moron");
  auto b = domain("b", "jerk");
  cfg.datasets["b"] = b;
  cfg.runs = {{"a", {"a", "b"}}};
  auto base = run_experiment(cfg, {constructed()});

  // scrambling b's train and dev splits must not change anything
  for (auto& s : cfg.datasets["b"].samples) {
    if (s.split != Split::test) {
      s.text = "zzz";
      s.gold_spans = {};
      s.toxic = false;
    }
  }
  auto scrambled = run_experiment(cfg, {constructed()});
  CHECK(scrambled.to_csv() == base.to_csv());
}

TEST_CASE("inferred experiments require binary predictions up front") {
  ExperimentConfig cfg;
  cfg.setting = Setting::inferred;
  cfg.objective = Objective::macro_f1p;
  cfg.datasets["a"] = domain("a", "moron");
  cfg.runs = {{"a", {"a"}}};
  CHECK_THROWS(run_experiment(cfg, {wordlist()}));
  cfg.binary["a"]["a"] = gold_binary(cfg.datasets["a"]);
  auto table = run_experiment(cfg, {wordlist()});
  REQUIRE(table.rows.size() == 1);
  CHECK(*table.rows[0].report.macro_f1p == 1.0);
}
