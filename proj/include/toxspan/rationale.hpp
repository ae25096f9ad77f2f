// Span prediction from per-token attribution scores: normalize each sample's
// scores to sum to one, then keep the tokens scoring strictly above tau.

#ifndef TOXSPAN_RATIONALE_HPP_
#define TOXSPAN_RATIONALE_HPP_

#include <map>
#include <string>
#include <vector>

#include "toxspan/corpus.hpp"
#include "toxspan/span_set.hpp"

namespace toxspan {

struct ScoredToken {
  Offset start = 0;
  Offset end = 0;
  double score = 0.0;
  friend bool operator==(const ScoredToken&, const ScoredToken&) = default;
};

struct TokenScores {
  std::string sample_id;
  std::string method_name;
  std::vector<ScoredToken> tokens;  // sorted, non-overlapping
  // Set by normalize() when the score sum was too close to zero to divide by.
  bool degenerate = false;
  friend bool operator==(const TokenScores&, const TokenScores&) = default;
};

using ScoreMap = std::map<std::string, TokenScores>;

struct ThresholdConfig {
  double tau = 0.0;
};

// Sums whose magnitude is at or below this are treated as zero.
inline constexpr double kDegenerateSum = 1e-12;

TokenScores normalize(const TokenScores& scores);

// Union of the ranges of tokens whose score is strictly greater than tau.
SpanSet threshold_to_spans(const TokenScores& scores, ThresholdConfig cfg);

// Checks ordering and, when `dataset` is given, that every token ends inside
// its sample's text and that the sample exists. Throws std::invalid_argument.
void validate_scores(const TokenScores& scores, const Dataset* dataset = nullptr);

// JSON Lines: {"id": str, "method": str, "tokens": [[start, end, score], ...]}.
ScoreMap load_scores(const std::string& path, const Dataset* dataset = nullptr);
void write_scores(const ScoreMap& scores, const std::string& path);

}  // namespace toxspan

#endif  // TOXSPAN_RATIONALE_HPP_
