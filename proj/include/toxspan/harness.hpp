// Experiment protocol: exhaustive grid search on the in-domain dev split,
// then evaluation of the chosen point on the in-domain and cross-domain test
// splits, under either the oracle setting (no gating) or the inferred setting
// (binary predictions gate the spans).

#ifndef TOXSPAN_HARNESS_HPP_
#define TOXSPAN_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toxspan/corpus.hpp"
#include "toxspan/inferred.hpp"
#include "toxspan/lexicon.hpp"
#include "toxspan/metrics.hpp"
#include "toxspan/rationale.hpp"

namespace toxspan {

enum class MethodKind { constructed_lexicon, wordlist_lexicon, rationale_file, span_file };
enum class Setting { oracle, inferred };
enum class Objective { toxic_f1p, macro_f1p };

std::string_view to_string(MethodKind kind);
std::string_view to_string(Setting setting);
std::string_view to_string(Objective objective);
MethodKind parse_method_kind(std::string_view name);
// "oracle"/"ToxicOracle", "inferred"/"ToxicInferred".
Setting parse_setting(std::string_view name);
// "toxic"/"toxic_f1p", "macro"/"macro_f1p".
Objective parse_objective(std::string_view name);
Objective default_objective(Setting setting);

struct GridSpec {
  std::vector<Offset> fill_chars;
  std::vector<double> theta;
  std::vector<std::size_t> min_occ;
  std::vector<double> tau;

  // fill {0, 1, 9999}; theta {0, 0.05, ..., 1}; min_occ {1, 3, 5, 7, 11};
  // tau {-0.05, -0.025, ..., 0.5}.
  static GridSpec defaults();
};

struct GridPoint {
  Offset fill_chars = 0;
  std::optional<double> theta;
  std::optional<std::size_t> min_occ;
  std::optional<double> tau;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

// Every point a method of `kind` is searched over, in canonical order: fill
// ascending, then theta/tau ascending, then min_occ ascending. Values are
// sorted and deduplicated first, so the result does not depend on the order
// in which the grid lists them.
std::vector<GridPoint> enumerate_grid(MethodKind kind, const GridSpec& grid);

// Per (train domain, eval domain) file inputs, keyed [train][eval].
template <typename T>
using DomainPairMap = std::map<std::string, std::map<std::string, T>>;

struct MethodSpec {
  std::string name;
  MethodKind kind = MethodKind::constructed_lexicon;
  InSpanRule in_span_rule = InSpanRule::majority_chars;  // constructed_lexicon
  std::optional<Lexicon> lexicon;                        // wordlist_lexicon
  DomainPairMap<ScoreMap> scores;                        // rationale_file
  DomainPairMap<Predictions> spans;                      // span_file
  std::optional<GridSpec> grid;                          // overrides the experiment grid
};

// Method-specific inputs for one evaluation dataset.
struct MethodInputs {
  const ScoreMap* scores = nullptr;
  const Predictions* spans = nullptr;
};

// A method bound to its training data, ready to predict at any grid point.
class PreparedMethod {
 public:
  PreparedMethod(const MethodSpec& spec, const Dataset& train, MatchMode mode);

  const MethodSpec& spec() const { return *spec_; }
  // Predictions for every sample of `eval` before gating.
  Predictions predict(const Dataset& eval, const GridPoint& point, const MethodInputs& inputs) const;

 private:
  const MethodSpec* spec_;
  MatchMode mode_;
  WordStatsMap stats_;
  std::shared_ptr<LexiconMatcher> wordlist_matcher_;
};

struct SearchOptions {
  Setting setting = Setting::oracle;
  Objective objective = Objective::toxic_f1p;
  MatchMode match_mode;
  const BinaryMap* dev_binary = nullptr;  // required for the inferred setting
  MethodInputs dev_inputs;
  std::size_t jobs = 1;
};

struct TraceEntry {
  GridPoint point;
  EvalReport report;
  std::optional<double> objective;
};

struct TunedParams {
  GridPoint best;
  std::optional<double> objective;
  std::vector<TraceEntry> trace;  // canonical grid order
  bool degenerate = false;        // every point predicted nothing
};

std::optional<double> objective_value(const EvalReport& report, Objective objective);

// Evaluates every grid point on `dev`, building lexicons from `train`. The
// winner is the first point in canonical order reaching the best objective.
TunedParams grid_search(const MethodSpec& method, const Dataset& train, const Dataset& dev,
                        const GridSpec& grid, const SearchOptions& opts);

// cross / in-domain; nullopt when in_domain is 0.
std::optional<double> retention(double in_domain, double cross_domain);

struct ExperimentRun {
  std::string train;
  std::vector<std::string> eval;  // dataset names; the train dataset is in-domain
};

struct ExperimentConfig {
  std::string name;
  Setting setting = Setting::oracle;
  Objective objective = Objective::toxic_f1p;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  MatchMode match_mode;
  GridSpec grid = GridSpec::defaults();
  std::map<std::string, Dataset> datasets;
  std::vector<ExperimentRun> runs;
  DomainPairMap<BinaryMap> binary;  // [train][eval], inferred setting only
};

struct ResultRow {
  std::string method;
  MethodKind kind = MethodKind::constructed_lexicon;
  std::string train;
  std::string eval;
  bool in_domain = true;
  GridPoint params;
  std::optional<double> dev_objective;
  EvalReport report;
  std::optional<double> retention;
};

struct TraceRecord {
  std::string method;
  std::string train;
  TraceEntry entry;
  bool chosen = false;
};

struct ResultTable {
  std::string name;
  Setting setting = Setting::oracle;
  Objective objective = Objective::toxic_f1p;
  std::vector<ResultRow> rows;
  std::vector<TraceRecord> trace;
  std::vector<std::string> warnings;

  std::string to_csv() const;
  std::string to_text() const;
  std::string trace_csv() const;
};

// Tunes each method on the train dataset's dev split and evaluates the tuned
// point on the test split of every eval dataset. Only the test split of an
// eval dataset is read. Under the inferred setting, missing binary
// predictions are reported before any evaluation starts.
ResultTable run_experiment(const ExperimentConfig& cfg, const std::vector<MethodSpec>& methods);

// Declarative YAML experiment description (see README). Relative paths are
// resolved against `data_root` when given, else $TOXSPAN_DATA when set, else
// the config file's directory.
struct LoadedExperiment {
  ExperimentConfig config;
  std::vector<MethodSpec> methods;
  std::vector<std::string> input_files;  // every file read, for manifests
};

LoadedExperiment load_experiment(const std::string& path);

}  // namespace toxspan

#endif  // TOXSPAN_HARNESS_HPP_
