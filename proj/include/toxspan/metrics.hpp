// Per-sample F1+ over character offsets and the subset/macro aggregation.
//
// F1+ is the usual offset-level F1 when the gold set is nonempty, 1 when both
// prediction and gold are empty and 0 otherwise. Scores are averaged per
// sample within the toxic and the non-toxic subsets, and the two subset means
// are combined with a harmonic mean.

#ifndef TOXSPAN_METRICS_HPP_
#define TOXSPAN_METRICS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toxspan/corpus.hpp"
#include "toxspan/span_set.hpp"

namespace toxspan {

enum class DegenerateCase { both_empty, pred_only, gold_only, normal };

struct SampleScore {
  double f1_plus = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  DegenerateCase degenerate_case = DegenerateCase::normal;
};

// Precision and recall with both sets empty are 1; with only one side empty
// the undefined ratio is reported as 0.
SampleScore score_sample(const SpanSet& pred, const SpanSet& gold);

struct Aggregate {
  double f1_plus = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Arithmetic means; nullopt for an empty list.
std::optional<Aggregate> aggregate(std::span<const SampleScore> scores);

// Harmonic mean, 0 when a + b == 0.
double macro_f1p(double toxic_f1p, double nontoxic_f1p);

struct EvalReport {
  std::optional<double> toxic_f1p;
  std::optional<double> toxic_precision;
  std::optional<double> toxic_recall;
  std::optional<double> nontoxic_f1p;
  std::optional<double> macro_f1p;
  std::size_t n_toxic = 0;
  std::size_t n_nontoxic = 0;
  // Dataset ids with no prediction; scored as empty predictions.
  std::size_t missing_predictions = 0;
};

using Predictions = std::map<std::string, SpanSet>;

// Throws std::invalid_argument when a prediction names an unknown id.
EvalReport evaluate(const Dataset& dataset, const Predictions& predictions);

// Column order used by every table writer.
std::vector<std::string> report_columns();
// Values formatted with six decimals; absent values are empty strings.
std::vector<std::string> report_values(const EvalReport& report);

}  // namespace toxspan

#endif  // TOXSPAN_METRICS_HPP_
