#include <doctest.h>

#include <random>

#include "../oracle.hpp"
#include "test_util.hpp"
#include "toxspan/metrics.hpp"

using namespace toxspan;
using testutil::sample;

namespace {

SpanSet from_mask(std::uint64_t mask, int n) {
  std::set<Offset> s;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) s.insert(i);
  }
  return SpanSet::from_offsets(s);
}

}  // namespace

TEST_CASE("score_sample branches") {
  auto both = score_sample({}, {});
  CHECK(both.f1_plus == 1.0);
  CHECK(both.degenerate_case == DegenerateCase::both_empty);

  auto pred_only = score_sample(SpanSet{{0, 3}}, {});
  CHECK(pred_only.f1_plus == 0.0);
  CHECK(pred_only.degenerate_case == DegenerateCase::pred_only);

  auto gold_only = score_sample({}, SpanSet{{0, 3}});
  CHECK(gold_only.f1_plus == 0.0);
  CHECK(gold_only.degenerate_case == DegenerateCase::gold_only);

  auto partial = score_sample(SpanSet{{0, 5}}, SpanSet{{2, 7}});
  CHECK(partial.precision == 0.6);
  CHECK(partial.recall == 0.6);
  CHECK(partial.f1_plus == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(partial.degenerate_case == DegenerateCase::normal);

  auto disjoint = score_sample(SpanSet{{0, 2}}, SpanSet{{4, 6}});
  CHECK(disjoint.f1_plus == 0.0);
  CHECK(disjoint.precision == 0.0);
  CHECK(disjoint.recall == 0.0);
}

TEST_CASE("score_sample matches the offset-set oracle on all pairs up to length 8") {
  const int n = 8;
  for (std::uint64_t a = 0; a < (1u << n); ++a) {
    for (std::uint64_t b = 0; b < (1u << n); ++b) {
      auto got = score_sample(from_mask(a, n), from_mask(b, n));
      auto want = oracle::f1_plus(oracle::from_mask(a, n), oracle::from_mask(b, n));
      REQUIRE(got.f1_plus == want.f1);
      REQUIRE(got.precision == want.p);
      REQUIRE(got.recall == want.r);
    }
  }
}

TEST_CASE("precision/recall symmetry and self score") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto a = from_mask(rng() | 1u, 30);
    auto b = from_mask(rng() | 2u, 30);
    CHECK(score_sample(a, b).precision == score_sample(b, a).recall);
    CHECK(score_sample(a, a).f1_plus == 1.0);
  }
}

TEST_CASE("aggregate") {
  CHECK_FALSE(aggregate({}).has_value());
  std::vector<SampleScore> one = {{1.0, 1.0, 1.0, DegenerateCase::both_empty}};
  CHECK(aggregate(one)->f1_plus == 1.0);
  std::vector<SampleScore> two = {{1.0, 1.0, 1.0, {}}, {0.0, 0.0, 0.0, {}}};
  CHECK(aggregate(two)->f1_plus == 0.5);
  std::vector<SampleScore> three = {{0.6, 0.6, 0.6, {}}, {0.6, 0.6, 0.6, {}}, {0.0, 0.0, 0.0, {}}};
  CHECK(aggregate(three)->f1_plus == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("macro_f1p") {
  CHECK(macro_f1p(0.6, 0.3) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(macro_f1p(0.37, 0.37) == doctest::Approx(0.37).epsilon(1e-15));
  CHECK(macro_f1p(0.8, 0.0) == 0.0);
  CHECK(macro_f1p(0.0, 0.0) == 0.0);
}

TEST_CASE("evaluate") {
  Dataset ds;
  ds.samples = {sample("t1", "you jerk", true, SpanSet{{4, 8}}),
                sample("t2", "what a fool", true, SpanSet{{7, 11}}),
                sample("t3", "rude but no span", true),
                sample("n1", "nice day", false),
                sample("n2", "hello there", false)};

  SUBCASE("perfect predictions") {
    Predictions p;
    for (const auto& s : ds.samples) p[s.id] = s.gold_spans;
    auto r = evaluate(ds, p);
    CHECK(*r.toxic_f1p == 1.0);
    CHECK(*r.nontoxic_f1p == 1.0);
    CHECK(*r.macro_f1p == 1.0);
    CHECK(r.missing_predictions == 0);
  }
  SUBCASE("all-empty predictions") {
    auto r = evaluate(ds, {});
    CHECK(*r.nontoxic_f1p == 1.0);
    // one of the three toxic samples has empty gold
    CHECK(*r.toxic_f1p == doctest::Approx(1.0 / 3.0));
    CHECK(r.missing_predictions == 5);
    CHECK(r.n_toxic == 3);
    CHECK(r.n_nontoxic == 2);
  }
  SUBCASE("mixed") {
    Predictions p{{"t1", SpanSet{{4, 8}}}, {"t2", SpanSet{{0, 4}}}, {"n1", SpanSet{{0, 4}}}};
    auto r = evaluate(ds, p);
    // toxic: t1 = 1, t2 = 0, t3 = 1 (both empty)
    CHECK(*r.toxic_f1p == doctest::Approx(2.0 / 3.0));
    CHECK(*r.nontoxic_f1p == 0.5);
    CHECK(*r.macro_f1p == doctest::Approx(2 * (2.0 / 3.0) * 0.5 / (2.0 / 3.0 + 0.5)));
  }
  SUBCASE("unknown id") {
    CHECK_THROWS_AS(evaluate(ds, {{"nope", SpanSet{}}}), std::invalid_argument);
  }
  SUBCASE("order invariance") {
    Predictions p{{"t1", SpanSet{{4, 6}}}, {"n2", SpanSet{{1, 2}}}};
    Dataset rev = ds;
    std::reverse(rev.samples.begin(), rev.samples.end());
    auto a = evaluate(ds, p);
    auto b = evaluate(rev, p);
    CHECK(*a.toxic_f1p == doctest::Approx(*b.toxic_f1p).epsilon(1e-15));
    CHECK(*a.macro_f1p == doctest::Approx(*b.macro_f1p).epsilon(1e-15));
  }
}

TEST_CASE("evaluate reports absent subsets") {
  Dataset toxic_only;
  toxic_only.samples = {sample("t", "jerk", true, SpanSet{{0, 4}})};
  auto r = evaluate(toxic_only, {});
  CHECK(r.toxic_f1p.has_value());
  CHECK_FALSE(r.nontoxic_f1p.has_value());
  CHECK_FALSE(r.macro_f1p.has_value());
  auto values = report_values(r);
  CHECK(values[0] == "0.000000");
  CHECK(values[3].empty());
}
