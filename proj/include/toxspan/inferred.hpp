// Message-level gating of span predictions: when a binary classifier calls a
// text non-toxic, no spans are predicted for it. Also the file formats for
// externally produced binary and span predictions.

#ifndef TOXSPAN_INFERRED_HPP_
#define TOXSPAN_INFERRED_HPP_

#include <map>
#include <string>

#include "toxspan/corpus.hpp"
#include "toxspan/lexicon.hpp"
#include "toxspan/metrics.hpp"

namespace toxspan {

struct BinaryPrediction {
  std::string sample_id;
  bool toxic = false;
  friend bool operator==(const BinaryPrediction&, const BinaryPrediction&) = default;
};

using BinaryMap = std::map<std::string, BinaryPrediction>;

// JSON Lines {"id": str, "toxic": bool}. Duplicate ids are rejected.
BinaryMap load_binary(const std::string& path);
void write_binary(const BinaryMap& binary, const std::string& path);

// Empties every prediction whose binary verdict is non-toxic. Throws
// std::invalid_argument naming the first id without a binary prediction.
Predictions gate(const Predictions& spans, const BinaryMap& binary);

// Stand-in classifier: toxic iff the lexicon matches anywhere in the text.
BinaryMap lexicon_binary(const Dataset& dataset, const Lexicon& lexicon, MatchMode mode = {});

// Binary map from the gold labels of a dataset.
BinaryMap gold_binary(const Dataset& dataset);

// JSON Lines {"id": str, "spans": [[start, end], ...]}. When `dataset` is
// given, ids must exist and spans must lie inside the text.
Predictions load_span_predictions(const std::string& path, const Dataset* dataset = nullptr);
void write_span_predictions(const Predictions& predictions, const std::string& path);

}  // namespace toxspan

#endif  // TOXSPAN_INFERRED_HPP_
