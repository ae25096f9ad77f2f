#!/usr/bin/env python3
"""Generate the bundled synthetic mini-corpora under data/synthetic/.

Two 200-sample domains with different vocabularies, plus everything the
experiment configs need: a word list, simulated binary classifier output,
token attribution scores and span predictions for each (train, eval) pair.
The output is a pure function of the seed.
"""

import argparse
import json
import random
import re
from pathlib import Path

SCHEMA = "toxspan/1"
TOKEN = re.compile(r"[A-Za-z0-9']+")

SHARED_SLURS = ["idiot", "moron", "stupid", "loser", "trash"]
DOMAINS = {
    "alpha": {
        "slurs": SHARED_SLURS + ["clown", "dimwit", "scum"],
        "subjects": ["this thread", "the mod", "your post", "that reply", "the admin"],
        "neutral": ["forum", "thread", "topic", "reply", "update", "guide", "patch", "build"],
    },
    "beta": {
        "slurs": SHARED_SLURS + ["jerk", "creep", "fool"],
        "subjects": ["this video", "the host", "your clip", "that stream", "the channel"],
        "neutral": ["video", "stream", "clip", "song", "show", "episode", "music", "party"],
    },
}
# Deliberately incomplete: the domain-specific words are missing.
WORDLIST = SHARED_SLURS + ["scum", "jerk", "dumb"]

TOXIC_TEMPLATES = [
    "{subj} is run by an {slur}",
    "what a {slur}",
    "only a {slur} would post {neutral} like this",
    "{subj} is {slur} and so are you",
    "you absolute {slur}, read the {neutral}",
    "{slur} take on the {neutral} again",
    "stop being a {slur} about the {neutral}",
    "the {neutral} was fine but {subj} is a {slur}",
]
TWO_SLUR_TEMPLATES = [
    "you are a {slur} and frankly a {slur2} too",
    "{slur} opinion from a total {slur2}",
]
NO_SPAN_TEMPLATES = [
    "people like you should leave {subj}",
    "nobody wants your kind near the {neutral}",
]
CLEAN_TEMPLATES = [
    "great {neutral}, thanks for sharing",
    "{subj} posted a new {neutral} today",
    "has anyone tried the latest {neutral}",
    "i liked the {neutral} more than the last one",
    "the {neutral} starts at eight tonight",
    "can someone explain the {neutral} to me",
    "that {neutral} made my day",
    "stupid simple fix for the {neutral}",
    "calling people {slur} is not cool",
    "why would anyone say {slur} about the {neutral}",
]


def make_sample(rng, domain, name, idx, toxic, split):
    d = DOMAINS[domain]
    fill = {
        "subj": rng.choice(d["subjects"]),
        "neutral": rng.choice(d["neutral"]),
        "slur": rng.choice(d["slurs"]),
        "slur2": rng.choice(d["slurs"]),
    }
    if not toxic:
        template = rng.choice(CLEAN_TEMPLATES)
    else:
        r = rng.random()
        if r < 0.06:
            template = rng.choice(NO_SPAN_TEMPLATES)
        elif r < 0.22:
            template = rng.choice(TWO_SLUR_TEMPLATES)
        else:
            template = rng.choice(TOXIC_TEMPLATES)
    if rng.random() < 0.15:
        fill["slur"] = fill["slur"].upper()
    text = template.format(**fill)
    spans = []
    if toxic:
        for key in ("slur", "slur2"):
            if "{" + key + "}" not in template:
                continue
            word = fill[key]
            pos = text.find(word, spans[-1][1] if spans else 0)
            if rng.random() < 0.08:
                continue  # annotator missed it
            spans.append([pos, pos + len(word)])
    return {
        "id": f"{name}-{idx:03d}",
        "text": text,
        "toxic": toxic,
        "spans": spans,
        "split": split,
    }


def make_domain(name, seed):
    rng = random.Random(seed)
    samples = []
    plan = [("train", 120), ("dev", 40), ("test", 40)]
    idx = 0
    for split, n in plan:
        labels = [True] * (n // 2) + [False] * (n - n // 2)
        rng.shuffle(labels)
        for toxic in labels:
            samples.append(make_sample(rng, name, name, idx, toxic, split))
            idx += 1
    return samples


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")) + "\n")


def in_spans(start, end, spans):
    return any(s <= start and end <= e for s, e in spans)


def rationale_scores(rng, samples, noise):
    rows = []
    for s in samples:
        tokens = []
        for m in TOKEN.finditer(s["text"]):
            score = rng.uniform(0.0, noise)
            if in_spans(m.start(), m.end(), s["spans"]):
                score += rng.uniform(0.6, 1.4)
            tokens.append([m.start(), m.end(), round(score, 6)])
        rows.append({"id": s["id"], "method": "rationale", "tokens": tokens})
    return rows


def span_predictions(rng, samples, miss_rate):
    rows = []
    for s in samples:
        spans = []
        for start, end in s["spans"]:
            r = rng.random()
            if r < miss_rate:
                continue
            if r < miss_rate + 0.15:
                end = max(start + 1, end - 2)  # stops short of the word end
            spans.append([start, end])
        if not s["toxic"] and rng.random() < 0.1:
            m = next(TOKEN.finditer(s["text"]))
            spans.append([m.start(), m.end()])
        rows.append({"id": s["id"], "spans": spans})
    return rows


def binary_predictions(rng, samples, error_rate):
    return [
        {"id": s["id"], "toxic": s["toxic"] != (rng.random() < error_rate)} for s in samples
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "synthetic"))
    ap.add_argument("--seed", type=int, default=20231)
    args = ap.parse_args()
    out = Path(args.out)

    domains = {}
    for i, name in enumerate(sorted(DOMAINS)):
        samples = make_domain(name, args.seed + i)
        domains[name] = samples
        header = {"schema": SCHEMA, "name": name, "provenance": f"make_synthetic.py seed={args.seed}"}
        write_jsonl(out / f"{name}.jsonl", [header] + samples)

    (out / "wordlist.txt").write_text("\n".join(WORDLIST) + "\n", encoding="utf-8")

    rng = random.Random(args.seed + 100)
    for train in sorted(domains):
        for eval_name in sorted(domains):
            cross = train != eval_name
            samples = domains[eval_name]
            tag = f"{train}-on-{eval_name}"
            write_jsonl(out / "binary" / f"{tag}.jsonl",
                        binary_predictions(rng, samples, 0.2 if cross else 0.1))
            write_jsonl(out / "scores" / f"{tag}.jsonl",
                        rationale_scores(rng, samples, 0.6 if cross else 0.3))
            write_jsonl(out / "spans" / f"{tag}.jsonl",
                        span_predictions(rng, samples, 0.35 if cross else 0.1))


if __name__ == "__main__":
    main()
