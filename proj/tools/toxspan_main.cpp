// toxspan command-line tool.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "toxspan/corpus.hpp"
#include "toxspan/csv.hpp"
#include "toxspan/errsample.hpp"
#include "toxspan/harness.hpp"
#include "toxspan/inferred.hpp"
#include "toxspan/io.hpp"
#include "toxspan/lexicon.hpp"
#include "toxspan/metrics.hpp"
#include "toxspan/rationale.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace toxspan;

namespace {

// Relative paths that do not exist from the working directory are looked up
// under $TOXSPAN_DATA.
std::string resolve_input(const std::string& p) {
  if (p.empty()) return p;
  fs::path path(p);
  if (path.is_absolute() || fs::exists(path)) return p;
  if (const char* root = std::getenv("TOXSPAN_DATA"); root && *root) {
    fs::path alt = fs::path(root) / path;
    if (fs::exists(alt)) return alt.string();
  }
  return p;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Records inputs, parameters and outputs of one invocation.
class Manifest {
 public:
  explicit Manifest(std::string command) : command_(std::move(command)) {}

  std::string input(const std::string& raw) {
    std::string p = resolve_input(raw);
    if (p.empty()) return p;
    if (!fs::is_regular_file(p)) throw std::invalid_argument("input file not found: " + raw);
    inputs_.push_back(p);
    return p;
  }
  void add_inputs(const std::vector<std::string>& paths) {
    for (const auto& p : paths) inputs_.push_back(p);
  }
  template <typename T>
  void param(const std::string& key, const T& value) {
    params_[key] = value;
  }
  void seed(std::uint64_t s) { seed_ = s; }
  void output(const std::string& p) { outputs_.push_back(p); }

  void write(const std::string& path) const {
    json j;
    j["tool"] = "toxspan";
    j["version"] = TOXSPAN_VERSION;
    j["command"] = command_;
    j["seed"] = seed_ ? json(*seed_) : json(nullptr);
    j["params"] = params_;
    json ins = json::array();
    for (const auto& p : inputs_) ins.push_back({{"path", p}, {"sha256", sha256_file(p)}});
    j["inputs"] = ins;
    // relative to the manifest, so a run reproduced elsewhere matches byte for byte
    fs::path base = fs::absolute(path).parent_path();
    json outs = json::array();
    for (const auto& p : outputs_) outs.push_back(fs::absolute(p).lexically_relative(base).string());
    j["outputs"] = outs;
    write_text_file(path, j.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  json params_ = json::object();
  std::optional<std::uint64_t> seed_;
};

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

void emit(Manifest& m, const std::string& out, const std::string& content) {
  write_text_file(out, content);
  m.output(out);
  m.write(manifest_path(out));
}

struct SplitView {
  Dataset full;
  Dataset part;
};

SplitView load_split(const std::string& path, const std::string& split) {
  SplitView v{read_canonical(path), {}};
  v.part = (split.empty() || split == "all") ? v.full : v.full.subset(parse_split(split));
  return v;
}

// Drops entries for samples outside `part`; files are validated against the
// whole dataset first.
template <typename Map>
Map restrict_to(Map map, const Dataset& part) {
  std::set<std::string> ids;
  for (const auto& s : part.samples) ids.insert(s.id);
  std::erase_if(map, [&](const auto& kv) { return !ids.contains(kv.first); });
  return map;
}

MatchMode match_mode(const std::string& kind, bool no_case_fold) {
  return {parse_match_kind(kind), !no_case_fold};
}

std::string report_csv(const EvalReport& r) {
  std::ostringstream os;
  csv::write_row(os, report_columns());
  csv::write_row(os, report_values(r));
  return os.str();
}

std::string stats_csv(const DatasetStats& st) {
  std::ostringstream os;
  csv::write_row(os, {"split", "count", "toxic_with_span", "toxic_without_span", "nontoxic"});
  for (Split s : kAllSplits) {
    const auto& f = st[s];
    if (f) {
      csv::write_row(os, {std::string(to_string(s)), std::to_string(f->count),
                          fmt(f->toxic_with_span), fmt(f->toxic_without_span), fmt(f->nontoxic)});
    } else {
      csv::write_row(os, {std::string(to_string(s)), "0", "", "", ""});
    }
  }
  csv::write_row(os, {"span_pct", "", st.span_pct ? fmt(*st.span_pct) : "", "", ""});
  return os.str();
}

json point_json(const GridPoint& p) {
  json j;
  j["fill_chars"] = p.fill_chars;
  j["theta"] = p.theta ? json(*p.theta) : json(nullptr);
  j["min_occ"] = p.min_occ ? json(*p.min_occ) : json(nullptr);
  j["tau"] = p.tau ? json(*p.tau) : json(nullptr);
  return j;
}

struct Args {
  std::string dataset, train, dev, test, test_binary, pred, scores, binary, lexicon, pool, config, out;
  std::string format, split, divisions, name, method, kind = "constructed_lexicon", counts;
  std::string match_mode = "substring", setting = "oracle", objective, in_span_rule = "majority_chars";
  std::vector<std::string> sheets;
  bool no_case_fold = false, skip_bad = false;
  double theta = 0.5, tau = 0.0;
  std::size_t min_occ = 1, jobs = 1, per_category = 15;
  Offset fill_chars = 0;
  std::uint64_t seed = 0;
};

int cmd_ingest(const Args& a) {
  Manifest m("ingest");
  std::string src = m.input(a.dataset);
  std::string divisions = m.input(a.divisions);
  m.param("format", a.format);
  m.param("split", a.split);
  Dataset ds;
  IngestLog log;
  if (a.format == "semeval") {
    if (!src.empty()) {
      if (a.split.empty() || a.split == "all") throw std::invalid_argument("semeval --dataset needs --split");
      ds = ingest_semeval(src, parse_split(a.split));
    } else {
      // one CSV per split, combined into a single dataset
      const std::pair<const std::string*, Split> parts[] = {
          {&a.train, Split::train}, {&a.dev, Split::dev}, {&a.test, Split::test}};
      for (const auto& [file, split] : parts) {
        if (file->empty()) continue;
        Dataset part = ingest_semeval(m.input(*file), split);
        ds.provenance += (ds.provenance.empty() ? "" : "; ") + part.provenance;
        for (auto& s : part.samples) ds.samples.push_back(std::move(s));
      }
      if (ds.samples.empty()) throw std::invalid_argument("semeval ingest needs --dataset or --train/--dev/--test");
    }
    ds.name = "semeval";
  } else if (a.format == "hatexplain") {
    if (src.empty()) throw std::invalid_argument("hatexplain ingest needs --dataset");
    if (a.split.empty() || a.split == "all") {
      if (divisions.empty()) throw std::invalid_argument("hatexplain ingest of all splits needs --divisions");
      ds = ingest_hatexplain_all(src, divisions, a.skip_bad, &log);
    } else {
      ds = ingest_hatexplain(src, parse_split(a.split), {divisions, a.skip_bad}, &log);
    }
  } else {
    throw std::invalid_argument("unknown --format '" + a.format + "'");
  }
  if (!a.name.empty()) ds.name = a.name;
  validate(ds);
  for (const auto& w : log.warnings) std::cerr << "warning: " << w << "\n";
  emit(m, a.out, to_canonical_string(ds));
  return 0;
}

int cmd_stats(const Args& a) {
  Manifest m("stats");
  Dataset ds = read_canonical(m.input(a.dataset));
  emit(m, a.out, stats_csv(compute_stats(ds)));
  return 0;
}

int cmd_balance(const Args& a) {
  Manifest m("balance");
  Dataset ds = read_canonical(m.input(a.dataset));
  Dataset pool = read_canonical(m.input(a.pool));
  m.seed(a.seed);
  Dataset out = balance_binary(ds, pool, a.seed);
  emit(m, a.out, to_canonical_string(out));
  return 0;
}

int cmd_build_lexicon(const Args& a) {
  Manifest m("build-lexicon");
  Dataset train = load_split(m.input(a.train), a.split.empty() ? "train" : a.split).part;
  LexiconBuildConfig cfg{a.theta, a.min_occ, parse_in_span_rule(a.in_span_rule)};
  m.param("theta", a.theta);
  m.param("min_occ", a.min_occ);
  m.param("in_span_rule", a.in_span_rule);
  Lexicon lex = build_lexicon(train, cfg);
  if (lex.entries.empty()) std::cerr << "warning: lexicon is empty\n";
  emit(m, a.out, format_lexicon(lex));
  return 0;
}

int cmd_predict(const Args& a) {
  Manifest m("predict");
  SplitView view = load_split(m.input(a.dataset), a.split);
  const Dataset& ds = view.part;
  if (a.lexicon.empty() == a.scores.empty()) {
    throw std::invalid_argument("predict needs exactly one of --lexicon or --scores");
  }
  Predictions pred;
  m.param("fill_chars", a.fill_chars);
  if (!a.lexicon.empty()) {
    Lexicon lex = load_wordlist(m.input(a.lexicon), "lexicon");
    LexiconMatcher matcher(lex, match_mode(a.match_mode, a.no_case_fold));
    m.param("match_mode", a.match_mode);
    m.param("case_fold", !a.no_case_fold);
    for (const auto& s : ds.samples) pred[s.id] = merge_spans(matcher.predict(s.text), {a.fill_chars});
  } else {
    ScoreMap scores = restrict_to(load_scores(m.input(a.scores), &view.full), ds);
    m.param("tau", a.tau);
    for (const auto& s : ds.samples) {
      auto it = scores.find(s.id);
      SpanSet spans;
      if (it != scores.end()) spans = threshold_to_spans(normalize(it->second), {a.tau});
      pred[s.id] = merge_spans(spans, {a.fill_chars});
    }
  }
  if (!a.binary.empty()) pred = gate(pred, load_binary(m.input(a.binary)));
  write_span_predictions(pred, a.out);
  m.output(a.out);
  m.write(manifest_path(a.out));
  return 0;
}

int cmd_evaluate(const Args& a) {
  Manifest m("evaluate");
  SplitView view = load_split(m.input(a.dataset), a.split);
  const Dataset& ds = view.part;
  m.param("split", a.split.empty() ? "all" : a.split);
  Predictions pred = restrict_to(load_span_predictions(m.input(a.pred), &view.full), ds);
  if (!a.binary.empty()) {
    BinaryMap bin = load_binary(m.input(a.binary));
    Predictions full;
    for (const auto& s : ds.samples) full[s.id] = pred.contains(s.id) ? pred.at(s.id) : SpanSet{};
    pred = gate(full, bin);
    m.param("gated", true);
  }
  EvalReport r = evaluate(ds, pred);
  if (r.missing_predictions > 0) {
    std::cerr << "warning: " << r.missing_predictions << " samples have no prediction; scored as empty\n";
  }
  emit(m, a.out, report_csv(r));
  return 0;
}

MethodSpec method_from_args(const Args& a, Manifest& m, const Dataset& train, const Dataset& dev,
                            const Dataset& dev_full) {
  MethodSpec spec;
  spec.kind = parse_method_kind(a.kind);
  spec.name = a.method.empty() ? a.kind : a.method;
  spec.in_span_rule = parse_in_span_rule(a.in_span_rule);
  switch (spec.kind) {
    case MethodKind::constructed_lexicon:
      break;
    case MethodKind::wordlist_lexicon:
      if (a.lexicon.empty()) throw std::invalid_argument("wordlist tuning needs --lexicon");
      spec.lexicon = load_wordlist(m.input(a.lexicon), "wordlist");
      break;
    case MethodKind::rationale_file:
      if (a.scores.empty()) throw std::invalid_argument("rationale tuning needs --scores (dev scores)");
      spec.scores[train.name][dev.name] = restrict_to(load_scores(m.input(a.scores), &dev_full), dev);
      break;
    case MethodKind::span_file:
      if (a.pred.empty()) throw std::invalid_argument("span-file tuning needs --pred (dev spans)");
      spec.spans[train.name][dev.name] = restrict_to(load_span_predictions(m.input(a.pred), &dev_full), dev);
      break;
  }
  return spec;
}

int cmd_tune(const Args& a) {
  Manifest m("tune");
  Dataset train_full = read_canonical(m.input(a.train));
  Dataset dev_full = a.dev.empty() ? train_full : read_canonical(m.input(a.dev));
  Dataset train = train_full.subset(Split::train);
  Dataset dev = dev_full.subset(Split::dev);
  train.name = "train";
  dev.name = "dev";
  MethodSpec spec = method_from_args(a, m, train, dev, dev_full);

  SearchOptions opts;
  opts.setting = parse_setting(a.setting);
  opts.objective = a.objective.empty() ? default_objective(opts.setting) : parse_objective(a.objective);
  opts.match_mode = match_mode(a.match_mode, a.no_case_fold);
  opts.jobs = a.jobs;
  BinaryMap bin;
  if (!a.binary.empty()) {
    bin = load_binary(m.input(a.binary));
    opts.dev_binary = &bin;
  }
  if (spec.kind == MethodKind::rationale_file) opts.dev_inputs.scores = &spec.scores["train"]["dev"];
  if (spec.kind == MethodKind::span_file) opts.dev_inputs.spans = &spec.spans["train"]["dev"];
  m.param("method", spec.name);
  m.param("kind", a.kind);
  m.param("setting", std::string(to_string(opts.setting)));
  m.param("objective", std::string(to_string(opts.objective)));
  m.param("match_mode", a.match_mode);

  TunedParams tuned = grid_search(spec, train, dev, GridSpec::defaults(), opts);
  if (tuned.degenerate) std::cerr << "warning: every grid point predicted no spans\n";

  json j = point_json(tuned.best);
  j["method"] = spec.name;
  j["objective"] = tuned.objective ? json(*tuned.objective) : json(nullptr);
  j["degenerate"] = tuned.degenerate;

  if (!a.test.empty()) {
    if (spec.kind != MethodKind::constructed_lexicon && spec.kind != MethodKind::wordlist_lexicon) {
      throw std::invalid_argument("--test is supported for lexicon methods only");
    }
    Dataset test = read_canonical(m.input(a.test)).subset(Split::test);
    PreparedMethod prepared(spec, train, opts.match_mode);
    Predictions pred = prepared.predict(test, tuned.best, {});
    if (opts.setting == Setting::inferred) {
      if (a.test_binary.empty()) throw std::invalid_argument("inferred --test needs --test-binary");
      pred = gate(pred, load_binary(m.input(a.test_binary)));
    }
    std::string test_path = a.out + ".test.csv";
    write_text_file(test_path, report_csv(evaluate(test, pred)));
    m.output(test_path);
  }

  ResultTable t;
  for (const auto& e : tuned.trace) t.trace.push_back({spec.name, "train", e, e.point == tuned.best});
  std::string trace_path = a.out + ".trace.csv";
  write_text_file(trace_path, t.trace_csv());
  m.output(trace_path);
  emit(m, a.out, j.dump(2) + "\n");
  return 0;
}

int cmd_experiment(const Args& a) {
  Manifest m("experiment");
  std::string config = m.input(a.config);
  LoadedExperiment loaded = load_experiment(config);
  for (const auto& f : loaded.input_files) {
    if (f != config) m.add_inputs({f});
  }
  if (a.jobs > 1) loaded.config.jobs = a.jobs;
  m.param("name", loaded.config.name);
  m.param("setting", std::string(to_string(loaded.config.setting)));
  m.param("objective", std::string(to_string(loaded.config.objective)));
  m.seed(loaded.config.seed);

  ResultTable table = run_experiment(loaded.config, loaded.methods);
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
  fs::path dir(a.out);
  fs::create_directories(dir);
  std::vector<std::pair<std::string, std::string>> files = {
      {"results.csv", table.to_csv()}, {"results.txt", table.to_text()}, {"trace.csv", table.trace_csv()}};
  for (const auto& [name, content] : files) {
    auto p = (dir / name).string();
    write_text_file(p, content);
    m.output(p);
  }
  std::cout << table.to_text();
  m.write((dir / "manifest.json").string());
  return 0;
}

int cmd_sample_errors(const Args& a) {
  Manifest m("sample-errors");
  if (a.method.empty()) throw std::invalid_argument("sample-errors needs --method");
  SplitView view = load_split(m.input(a.dataset), a.split.empty() ? "test" : a.split);
  const Dataset& ds = view.part;
  Predictions pred = restrict_to(load_span_predictions(m.input(a.pred), &view.full), ds);
  m.seed(a.seed);
  m.param("method", a.method);
  m.param("per_category", a.per_category);
  Categorized cat = categorize(select_errors(ds, pred, a.method));
  AnnotatedSheet sheet = sample_sheet(cat, a.per_category, a.seed);
  for (const auto& w : sheet.warnings) std::cerr << "warning: " << w << "\n";
  std::string counts_path = a.counts.empty() ? a.out + ".counts.csv" : a.counts;
  write_text_file(counts_path, counts_to_csv(a.method, cat.counts));
  m.output(counts_path);
  emit(m, a.out, sheet_to_csv(sheet));
  return 0;
}

int cmd_prevalence(const Args& a) {
  Manifest m("prevalence");
  if (a.sheets.empty()) throw std::invalid_argument("prevalence needs at least one --sheet");
  std::vector<AnnotatedSheet> sheets;
  for (const auto& s : a.sheets) sheets.push_back(sheet_from_csv(m.input(s)));
  auto counts = counts_from_csv(m.input(a.counts));

  std::map<std::string, AnnotatedSheet> by_method;
  for (const auto& sheet : sheets) {
    for (const auto& row : sheet.rows) by_method[row.record.method].rows.push_back(row);
  }
  std::vector<std::pair<std::string, std::map<std::string, double>>> result;
  for (const auto& [method, sheet] : by_method) {
    auto it = counts.find(method);
    if (it == counts.end()) throw std::invalid_argument("no category counts for method '" + method + "'");
    result.emplace_back(method, reweight_prevalence(sheet, it->second));
  }
  emit(m, a.out, prevalence_to_csv(result));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toxic span detection and evaluation toolkit"};
  app.set_version_flag("--version", std::string(TOXSPAN_VERSION));
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  Args a;

  auto out = [&](CLI::App* c) { c->add_option("--out", a.out, "Output path")->required(); };
  auto dataset = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--dataset", a.dataset, "Canonical dataset (JSONL)");
    if (required) o->required();
  };
  auto split = [&](CLI::App* c) { c->add_option("--split", a.split, "train, dev, test or all"); };
  auto mode = [&](CLI::App* c) {
    c->add_option("--match-mode", a.match_mode, "substring or word_boundary")
        ->check(CLI::IsMember({"substring", "word_boundary"}));
    c->add_flag("--no-case-fold", a.no_case_fold, "Match case-sensitively");
  };
  auto setting = [&](CLI::App* c) {
    c->add_option("--setting", a.setting, "oracle or inferred")->check(CLI::IsMember({"oracle", "inferred"}));
    c->add_option("--objective", a.objective, "toxic or macro")->check(CLI::IsMember({"toxic", "macro"}));
  };

  auto* ingest = app.add_subcommand("ingest", "Convert a source corpus to the canonical format");
  ingest->add_option("--dataset", a.dataset, "Source file (CSV or dataset.json)");
  ingest->add_option("--train", a.train, "SemEval train CSV");
  ingest->add_option("--dev", a.dev, "SemEval trial/dev CSV");
  ingest->add_option("--test", a.test, "SemEval test CSV");
  ingest->add_option("--format", a.format, "semeval or hatexplain")
      ->required()
      ->check(CLI::IsMember({"semeval", "hatexplain"}));
  ingest->add_option("--divisions", a.divisions, "HateXplain post_id_divisions.json");
  ingest->add_option("--name", a.name, "Dataset name");
  ingest->add_flag("--skip-bad-records", a.skip_bad, "Drop malformed records with a warning");
  split(ingest);
  out(ingest);

  auto* stats = app.add_subcommand("stats", "Split composition and span coverage");
  dataset(stats, true);
  out(stats);

  auto* balance = app.add_subcommand("balance", "Add non-toxic samples up to a 50/50 balance");
  dataset(balance, true);
  balance->add_option("--pool", a.pool, "Canonical dataset of non-toxic candidates")->required();
  balance->add_option("--seed", a.seed, "Random seed");
  out(balance);

  auto* build = app.add_subcommand("build-lexicon", "Induce a lexicon from span annotations");
  build->add_option("--train", a.train, "Canonical dataset; its train split is used")->required();
  build->add_option("--theta", a.theta, "Score threshold (strict)");
  build->add_option("--min-occ", a.min_occ, "Minimum occurrences");
  build->add_option("--in-span-rule", a.in_span_rule, "majority_chars, any_overlap or full_containment");
  split(build);
  out(build);

  auto* predict_cmd = app.add_subcommand("predict", "Predict spans from a lexicon or token scores");
  dataset(predict_cmd, true);
  predict_cmd->add_option("--lexicon", a.lexicon, "Lexicon or word list file");
  predict_cmd->add_option("--scores", a.scores, "Token score JSONL");
  predict_cmd->add_option("--tau", a.tau, "Score threshold (strict)");
  predict_cmd->add_option("--fill-chars", a.fill_chars, "Merge spans at most this many characters apart");
  predict_cmd->add_option("--binary", a.binary, "Binary predictions used to gate the spans");
  split(predict_cmd);
  mode(predict_cmd);
  out(predict_cmd);

  auto* eval = app.add_subcommand("evaluate", "Score span predictions");
  dataset(eval, true);
  eval->add_option("--pred", a.pred, "Span predictions JSONL")->required();
  eval->add_option("--binary", a.binary, "Binary predictions used to gate the spans");
  split(eval);
  out(eval);

  auto* tune = app.add_subcommand("tune", "Grid search on the dev split");
  tune->add_option("--train", a.train, "Canonical dataset providing the train split")->required();
  tune->add_option("--dev", a.dev, "Canonical dataset providing the dev split (default: --train)");
  tune->add_option("--kind", a.kind, "constructed_lexicon, wordlist_lexicon, rationale_file or span_file")
      ->check(CLI::IsMember({"constructed_lexicon", "wordlist_lexicon", "rationale_file", "span_file"}));
  tune->add_option("--method", a.method, "Method name (default: the kind)");
  tune->add_option("--lexicon", a.lexicon, "Word list for wordlist_lexicon");
  tune->add_option("--scores", a.scores, "Dev token scores for rationale_file");
  tune->add_option("--pred", a.pred, "Dev span predictions for span_file");
  tune->add_option("--binary", a.binary, "Dev binary predictions (inferred setting)");
  tune->add_option("--test", a.test, "Also evaluate the tuned point on this dataset's test split");
  tune->add_option("--test-binary", a.test_binary, "Test binary predictions (inferred setting)");
  tune->add_option("--in-span-rule", a.in_span_rule, "In-span rule for constructed lexicons");
  tune->add_option("--jobs", a.jobs, "Worker threads");
  setting(tune);
  mode(tune);
  out(tune);

  auto* exp = app.add_subcommand("experiment", "Run a configured in-/cross-domain experiment");
  exp->add_option("--config", a.config, "Experiment YAML")->required();
  exp->add_option("--jobs", a.jobs, "Worker threads");
  exp->add_option("--out", a.out, "Output directory")->required();

  auto* se = app.add_subcommand("sample-errors", "Draw an error-analysis annotation sheet");
  dataset(se, true);
  se->add_option("--pred", a.pred, "Span predictions JSONL")->required();
  se->add_option("--method", a.method, "Method name recorded in the sheet")->required();
  se->add_option("--per-category", a.per_category, "Records per category");
  se->add_option("--seed", a.seed, "Random seed");
  se->add_option("--counts", a.counts, "Category counts CSV (default: <out>.counts.csv)");
  split(se);
  out(se);

  auto* prev = app.add_subcommand("prevalence", "Re-weighted error class prevalence");
  prev->add_option("--sheet", a.sheets, "Annotated sheet CSV (repeatable)")->required();
  prev->add_option("--counts", a.counts, "Category counts CSV")->required();
  out(prev);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*ingest) return cmd_ingest(a);
    if (*stats) return cmd_stats(a);
    if (*balance) return cmd_balance(a);
    if (*build) return cmd_build_lexicon(a);
    if (*predict_cmd) return cmd_predict(a);
    if (*eval) return cmd_evaluate(a);
    if (*tune) return cmd_tune(a);
    if (*exp) return cmd_experiment(a);
    if (*se) return cmd_sample_errors(a);
    if (*prev) return cmd_prevalence(a);
  } catch (const std::exception& e) {
    std::cerr << "toxspan: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
