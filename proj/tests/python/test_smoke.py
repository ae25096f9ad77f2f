import os
from pathlib import Path

import pytest

import toxspan as ts

ROOT = Path(__file__).resolve().parents[2]


def test_f1_plus_branches():
    empty = ts.SpanSet()
    assert ts.score_sample(empty, empty).f1_plus == 1.0
    assert ts.score_sample(ts.SpanSet([(0, 3)]), empty).f1_plus == 0.0
    assert ts.score_sample(empty, ts.SpanSet([(0, 3)])).case == "gold_only"
    s = ts.score_sample(ts.SpanSet([(0, 5)]), ts.SpanSet([(2, 7)]))
    assert (s.precision, s.recall) == (0.6, 0.6)
    assert ts.macro_f1p(0.6, 0.3) == pytest.approx(0.4, abs=1e-12)


def test_spanset_and_merge():
    s = ts.SpanSet([(5, 8), (0, 4)])
    assert s.ranges() == [(0, 4), (5, 8)]
    assert ts.merge_spans(s, 1).ranges() == [(0, 8)]
    assert ts.SpanSet.from_offsets([0, 1, 2, 3]) == ts.SpanSet([(0, 4)])
    assert 6 in s and 4 not in s
    with pytest.raises(ValueError):
        ts.SpanSet([(4, 2)])


def test_tokenize_and_lexicon():
    assert ts.tokenize("don't go") == [("don't", 0, 5), ("go", 6, 8)]
    samples = [
        ts.Sample("a", "you idiot", True, ts.SpanSet([(4, 9)])),
        ts.Sample("b", "IDIOT!", True, ts.SpanSet([(0, 5)])),
        ts.Sample("c", "not an idiot", True),
        ts.Sample("d", "nice day", False),
    ]
    lex = ts.build_lexicon(ts.Dataset("toy", samples), theta=0.5, min_occ=1)
    assert lex.words == ["idiot"]
    assert ts.build_lexicon(ts.Dataset("toy", samples), theta=1.0).words == []
    wl = ts.parse_wordlist("ho\nlame\n")
    assert ts.predict("somehow blame him", wl).ranges() == [(4, 6), (9, 13)]
    assert ts.predict("somehow blame him", wl, match_mode="word_boundary").empty()


def test_rationale_and_gate():
    assert ts.normalize([2, 1, 1]) == [0.5, 0.25, 0.25]
    assert ts.normalize([0, 0]) == [0, 0]
    spans = ts.threshold_to_spans([(0, 3, 2.0), (4, 7, 1.0), (8, 11, 1.0)], tau=0.3)
    assert spans.ranges() == [(0, 3)]
    gated = ts.gate({"x": ts.SpanSet([(0, 2)]), "y": ts.SpanSet([(1, 3)])}, {"x": False, "y": True})
    assert gated["x"].empty() and gated["y"].ranges() == [(1, 3)]
    assert ts.grid_size("constructed_lexicon") == 315
    assert ts.grid_size("rationale_file") == 69
    assert ts.retention(0.5, 0.25) == 0.5


def test_evaluate_and_experiment():
    ds = ts.read_canonical(str(ROOT / "data/synthetic/alpha.jsonl"))
    assert len(ds) == 200
    gold = {s.id: s.gold_spans for s in ds.samples}
    report = ts.evaluate(ds, gold)
    assert report["toxic_f1p"] == 1.0 and report["macro_f1p"] == 1.0
    stats = ts.compute_stats(ds)
    assert stats["train"]["count"] == 120
    a = ts.run_experiment(str(ROOT / "configs/synthetic_oracle.yaml"))
    b = ts.run_experiment(str(ROOT / "configs/synthetic_oracle.yaml"))
    assert a["csv"] == b["csv"] and a["trace"] == b["trace"]
    assert "wordlist" in a["text"]
