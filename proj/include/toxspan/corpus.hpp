// Span-annotated corpora: the canonical sample store, readers for the two
// source layouts (SemEval-style CSV and HateXplain-style JSON), non-toxic
// supplementation and summary statistics.

#ifndef TOXSPAN_CORPUS_HPP_
#define TOXSPAN_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toxspan/span_set.hpp"

namespace toxspan {

enum class Split { train, dev, test };

inline constexpr std::array<Split, 3> kAllSplits = {Split::train, Split::dev, Split::test};

std::string_view to_string(Split split);
// Accepts "train", "dev", "test" and the aliases "val"/"validation"/"trial".
Split parse_split(std::string_view name);

struct Sample {
  std::string id;
  std::string text;  // UTF-8; offsets count scalar values
  bool toxic = false;
  SpanSet gold_spans;
  Split split = Split::train;

  friend bool operator==(const Sample&, const Sample&) = default;
};

struct Dataset {
  std::string name;
  std::vector<Sample> samples;
  std::string provenance;

  // Samples of one split, in dataset order.
  Dataset subset(Split split) const;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Throws std::invalid_argument naming the first offending sample: duplicate
// id, span offset beyond the text, or spans on a non-toxic sample.
void validate(const Dataset& dataset);

// Warnings produced while ingesting (dropped records and the like).
struct IngestLog {
  std::vector<std::string> warnings;
};

struct SemEvalOptions {
  // Sample ids are "<id_prefix>-<row index>"; defaults to "semeval-<split>".
  std::string id_prefix;
};

// CSV with a `spans` column holding a bracketed offset list and a `text`
// column. Every row is toxic. Malformed lists and out-of-range offsets raise
// FormatError with the 1-based record number (header = record 1).
Dataset ingest_semeval(const std::string& path, Split split, const SemEvalOptions& opts = {});

struct HateXplainOptions {
  // Optional post_id_divisions.json; when set only posts listed under the
  // requested split are kept.
  std::string divisions_path;
  // Drop records whose rationale length disagrees with the token count
  // instead of failing the whole ingest.
  bool skip_bad_records = false;
};

// The dataset.json layout: an object keyed by post id whose values carry
// `post_tokens`, `annotators` (each with a `label`) and `rationales`.
Dataset ingest_hatexplain(const std::string& path, Split split,
                          const HateXplainOptions& opts = {}, IngestLog* log = nullptr);

// Same, assigning each post the split named for it in the divisions file.
Dataset ingest_hatexplain_all(const std::string& path, const std::string& divisions_path,
                              bool skip_bad_records = false, IngestLog* log = nullptr);

// Appends pool samples (seeded, without replacement) until every split has as
// many non-toxic as toxic samples. Pool samples are drawn from the same split.
// Throws std::runtime_error listing the per-split shortfall when the pool is
// too small.
Dataset balance_binary(const Dataset& dataset, const Dataset& pool, std::uint64_t seed);

struct SplitFractions {
  std::size_t count = 0;
  double toxic_with_span = 0.0;
  double toxic_without_span = 0.0;
  double nontoxic = 0.0;
};

struct DatasetStats {
  // Indexed by Split; absent when the split has no samples.
  std::array<std::optional<SplitFractions>, 3> splits;
  // Mean over toxic samples of (characters inside gold spans / text length).
  std::optional<double> span_pct;

  const std::optional<SplitFractions>& operator[](Split s) const {
    return splits[static_cast<std::size_t>(s)];
  }
};

DatasetStats compute_stats(const Dataset& dataset);

inline constexpr std::string_view kCanonicalSchema = "toxspan/1";

// JSON Lines: a header object {"schema":"toxspan/1", "name":..., "provenance":...}
// followed by one object per sample.
Dataset read_canonical(const std::string& path);
void write_canonical(const Dataset& dataset, const std::string& path);
std::string to_canonical_string(const Dataset& dataset);

}  // namespace toxspan

#endif  // TOXSPAN_CORPUS_HPP_
