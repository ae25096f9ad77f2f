// Error-analysis sampling: collect erroneous predictions, split them into
// precision/recall quadrants around the medians (plus an empty-prediction
// bucket), draw a fixed number per bucket for human annotation, and turn the
// annotated sheet back into class prevalences corrected for the bucket sizes.

#ifndef TOXSPAN_ERRSAMPLE_HPP_
#define TOXSPAN_ERRSAMPLE_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "toxspan/corpus.hpp"
#include "toxspan/metrics.hpp"

namespace toxspan {

// Canonical order: P-high/R-high, P-high/R-low, P-low/R-high, P-low/R-low, empty.
enum class ErrorCategory { high_high, high_low, low_high, low_low, empty };

inline constexpr std::array<ErrorCategory, 5> kAllCategories = {
    ErrorCategory::high_high, ErrorCategory::high_low, ErrorCategory::low_high,
    ErrorCategory::low_low, ErrorCategory::empty};

// "P+R+", "P+R-", "P-R+", "P-R-", "empty".
std::string_view to_string(ErrorCategory c);
ErrorCategory parse_error_category(std::string_view name);

enum class ErrorClass {
  doubt_label_missing,
  doubt_label_toomany,
  fp_subword_toxic,
  fp_subword_nontoxic,
  fn_subword_morph,
  fn_subword,
  fn_explicit,
  fn_explicit_spelling,
  fn_implicit,
  fn_phrase_part,
  fn_whitespace,
  fp_target,
  fp_pos,
};

inline constexpr std::array<ErrorClass, 13> kAllErrorClasses = {
    ErrorClass::doubt_label_missing, ErrorClass::doubt_label_toomany, ErrorClass::fp_subword_toxic,
    ErrorClass::fp_subword_nontoxic, ErrorClass::fn_subword_morph,    ErrorClass::fn_subword,
    ErrorClass::fn_explicit,         ErrorClass::fn_explicit_spelling, ErrorClass::fn_implicit,
    ErrorClass::fn_phrase_part,      ErrorClass::fn_whitespace,       ErrorClass::fp_target,
    ErrorClass::fp_pos};

// "doubt-label-missing", "FP-subword-toxic", ...
std::string_view to_string(ErrorClass c);
ErrorClass parse_error_class(std::string_view name);

// Aggregate rows: "*-subword-*", "FN-*", "FP-*".
inline constexpr std::array<std::string_view, 3> kAggregates = {"*-subword-*", "FN-*", "FP-*"};
bool in_aggregate(std::string_view aggregate, ErrorClass c);

struct ErrorRecord {
  std::string sample_id;
  std::string method;
  std::string text;
  double precision = 0.0;
  double recall = 0.0;
  double f1_plus = 0.0;
  SpanSet pred;
  SpanSet gold;
  ErrorCategory category = ErrorCategory::empty;
  // Gold is empty while the prediction is not; recall ranked as 0.
  bool empty_gold = false;
  // Pre-annotation hints: a predicted boundary falls strictly inside a token;
  // a predicted span stops before the end of a token it started covering.
  bool hint_subword = false;
  bool hint_missing_suffix = false;
};

// Every sample whose F1+ is below 1; missing predictions count as empty.
std::vector<ErrorRecord> select_errors(const Dataset& dataset, const Predictions& predictions,
                                       const std::string& method);

using CategoryCounts = std::map<ErrorCategory, std::size_t>;

struct Categorized {
  std::vector<ErrorRecord> records;  // input order, category filled in
  CategoryCounts counts;             // every category present, possibly 0
  std::optional<double> precision_median;
  std::optional<double> recall_median;
};

// Median of a non-empty list (mean of the two middle values for even sizes).
double median(std::vector<double> values);

// Empty predictions go to `empty`; the rest split at the medians of the
// non-empty population, values <= median being low.
Categorized categorize(std::vector<ErrorRecord> errors);

struct SheetRow {
  ErrorRecord record;
  bool annotated = false;
  std::set<ErrorClass> classes;
};

struct AnnotatedSheet {
  std::vector<SheetRow> rows;
  std::vector<std::string> warnings;
};

// Per-category draw targets: per_category each, with the shortfall of small
// categories spread evenly over the categories that still have records
// (remainder to the earliest in canonical order).
std::map<ErrorCategory, std::size_t> sample_quotas(const CategoryCounts& available,
                                                   std::size_t per_category);

// Seeded draw without replacement according to sample_quotas.
AnnotatedSheet sample_sheet(const Categorized& categorized, std::size_t per_category,
                            std::uint64_t seed);

// Class and aggregate label -> prevalence over all errors, weighting each
// category's sampled rate by its share of the error population. Throws
// std::invalid_argument listing unannotated ids.
std::map<std::string, double> reweight_prevalence(const AnnotatedSheet& sheet,
                                                  const CategoryCounts& category_counts);

// Unweighted share of sampled records carrying each class/aggregate.
std::map<std::string, double> raw_prevalence(const AnnotatedSheet& sheet);

// Annotation sheet CSV: id, method, category, P, R, F1+, flags, text, spans,
// an `annotated` column and one column per error class.
std::string sheet_to_csv(const AnnotatedSheet& sheet);
AnnotatedSheet sheet_from_csv(const std::string& path);

std::string counts_to_csv(const std::string& method, const CategoryCounts& counts);
// method -> counts
std::map<std::string, CategoryCounts> counts_from_csv(const std::string& path);

// Rows: classes then aggregates; columns: one per method.
std::string prevalence_to_csv(const std::vector<std::pair<std::string, std::map<std::string, double>>>& by_method);

}  // namespace toxspan

#endif  // TOXSPAN_ERRSAMPLE_HPP_
