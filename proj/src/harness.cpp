#include "toxspan/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "toxspan/csv.hpp"

namespace toxspan {

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::constructed_lexicon:
      return "constructed_lexicon";
    case MethodKind::wordlist_lexicon:
      return "wordlist_lexicon";
    case MethodKind::rationale_file:
      return "rationale_file";
    case MethodKind::span_file:
      return "span_file";
  }
  return "?";
}

std::string_view to_string(Setting setting) {
  return setting == Setting::oracle ? "ToxicOracle" : "ToxicInferred";
}

std::string_view to_string(Objective objective) {
  return objective == Objective::toxic_f1p ? "toxic_f1p" : "macro_f1p";
}

MethodKind parse_method_kind(std::string_view name) {
  if (name == "constructed_lexicon") return MethodKind::constructed_lexicon;
  if (name == "wordlist_lexicon") return MethodKind::wordlist_lexicon;
  if (name == "rationale_file") return MethodKind::rationale_file;
  if (name == "span_file") return MethodKind::span_file;
  throw std::invalid_argument("unknown method kind '" + std::string(name) + "'");
}

Setting parse_setting(std::string_view name) {
  if (name == "oracle" || name == "ToxicOracle") return Setting::oracle;
  if (name == "inferred" || name == "ToxicInferred") return Setting::inferred;
  throw std::invalid_argument("unknown setting '" + std::string(name) + "'");
}

Objective parse_objective(std::string_view name) {
  if (name == "toxic" || name == "toxic_f1p") return Objective::toxic_f1p;
  if (name == "macro" || name == "macro_f1p") return Objective::macro_f1p;
  throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

Objective default_objective(Setting setting) {
  return setting == Setting::oracle ? Objective::toxic_f1p : Objective::macro_f1p;
}

GridSpec GridSpec::defaults() {
  GridSpec g;
  g.fill_chars = {0, 1, 9999};
  for (int i = 0; i <= 20; ++i) g.theta.push_back(i / 20.0);
  g.min_occ = {1, 3, 5, 7, 11};
  for (int i = -2; i <= 20; ++i) g.tau.push_back(i / 40.0);
  return g;
}

namespace {

template <typename T>
std::vector<T> canonical(std::vector<T> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

std::vector<GridPoint> enumerate_grid(MethodKind kind, const GridSpec& grid) {
  auto fills = canonical(grid.fill_chars);
  if (fills.empty()) throw std::invalid_argument("grid has no fill_chars values");
  std::vector<GridPoint> out;
  switch (kind) {
    case MethodKind::constructed_lexicon: {
      auto thetas = canonical(grid.theta);
      auto occs = canonical(grid.min_occ);
      if (thetas.empty() || occs.empty()) throw std::invalid_argument("grid needs theta and min_occ");
      for (auto f : fills)
        for (double t : thetas)
          for (auto m : occs) out.push_back({f, t, m, std::nullopt});
      break;
    }
    case MethodKind::rationale_file: {
      auto taus = canonical(grid.tau);
      if (taus.empty()) throw std::invalid_argument("grid has no tau values");
      for (auto f : fills)
        for (double t : taus) out.push_back({f, std::nullopt, std::nullopt, t});
      break;
    }
    case MethodKind::wordlist_lexicon:
    case MethodKind::span_file:
      for (auto f : fills) out.push_back({f, std::nullopt, std::nullopt, std::nullopt});
      break;
  }
  return out;
}

PreparedMethod::PreparedMethod(const MethodSpec& spec, const Dataset& train, MatchMode mode)
    : spec_(&spec), mode_(mode) {
  switch (spec.kind) {
    case MethodKind::constructed_lexicon:
      stats_ = count_word_stats(train, spec.in_span_rule);
      break;
    case MethodKind::wordlist_lexicon:
      if (!spec.lexicon) throw std::invalid_argument("method '" + spec.name + "' has no lexicon");
      wordlist_matcher_ = std::make_shared<LexiconMatcher>(*spec.lexicon, mode);
      break;
    case MethodKind::rationale_file:
    case MethodKind::span_file:
      break;
  }
}

namespace {

Predictions predict_unmerged(const MethodSpec& spec, const WordStatsMap& stats,
                             const LexiconMatcher* wordlist, MatchMode mode, const Dataset& eval,
                             const GridPoint& point, const MethodInputs& inputs) {
  Predictions out;
  switch (spec.kind) {
    case MethodKind::constructed_lexicon: {
      LexiconBuildConfig cfg{point.theta.value(), point.min_occ.value(), spec.in_span_rule};
      LexiconMatcher matcher(build_lexicon(stats, cfg, spec.name), mode);
      for (const auto& s : eval.samples) out.emplace(s.id, matcher.predict(s.text));
      break;
    }
    case MethodKind::wordlist_lexicon:
      for (const auto& s : eval.samples) out.emplace(s.id, wordlist->predict(s.text));
      break;
    case MethodKind::rationale_file: {
      if (!inputs.scores) throw std::invalid_argument("method '" + spec.name + "' has no scores");
      for (const auto& s : eval.samples) {
        auto it = inputs.scores->find(s.id);
        if (it == inputs.scores->end()) continue;
        out.emplace(s.id, threshold_to_spans(normalize(it->second), {point.tau.value()}));
      }
      break;
    }
    case MethodKind::span_file: {
      if (!inputs.spans) throw std::invalid_argument("method '" + spec.name + "' has no spans");
      for (const auto& s : eval.samples) {
        auto it = inputs.spans->find(s.id);
        if (it != inputs.spans->end()) out.emplace(s.id, it->second);
      }
      break;
    }
  }
  return out;
}

Predictions merged(Predictions preds, Offset fill) {
  for (auto& [_, s] : preds) s = merge_spans(s, {fill});
  return preds;
}

void require_binary_coverage(const Dataset& data, const BinaryMap& binary, const std::string& what) {
  for (const auto& s : data.samples) {
    if (!binary.contains(s.id)) {
      throw std::invalid_argument(what + ": no binary prediction for id '" + s.id + "'");
    }
  }
}

}  // namespace

Predictions PreparedMethod::predict(const Dataset& eval, const GridPoint& point,
                                    const MethodInputs& inputs) const {
  return merged(predict_unmerged(*spec_, stats_, wordlist_matcher_.get(), mode_, eval, point, inputs),
                point.fill_chars);
}

std::optional<double> objective_value(const EvalReport& report, Objective objective) {
  return objective == Objective::toxic_f1p ? report.toxic_f1p : report.macro_f1p;
}

TunedParams grid_search(const MethodSpec& method, const Dataset& train, const Dataset& dev,
                        const GridSpec& grid, const SearchOptions& opts) {
  if (dev.samples.empty()) throw std::invalid_argument("dev split is empty");
  if (opts.setting == Setting::inferred) {
    if (!opts.dev_binary) throw std::invalid_argument("inferred setting needs dev binary predictions");
    require_binary_coverage(dev, *opts.dev_binary, "dev");
  }
  const GridSpec& g = method.grid ? *method.grid : grid;
  const auto points = enumerate_grid(method.kind, g);
  const PreparedMethod prepared(method, train, opts.match_mode);

  // Points differing only in fill share their unmerged predictions.
  std::vector<GridPoint> bases;
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < points.size(); ++i) {
    GridPoint key = points[i];
    key.fill_chars = 0;
    auto it = std::find(bases.begin(), bases.end(), key);
    if (it == bases.end()) {
      bases.push_back(key);
      members.emplace_back();
      it = bases.end() - 1;
    }
    members[static_cast<std::size_t>(it - bases.begin())].push_back(i);
  }

  TunedParams tuned;
  tuned.trace.resize(points.size());
  std::vector<char> nonempty(points.size(), 0);
  std::vector<std::exception_ptr> errors(bases.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t u = next++; u < bases.size(); u = next++) {
      try {
        Predictions base = prepared.predict(dev, bases[u], opts.dev_inputs);
        for (std::size_t idx : members[u]) {
          const GridPoint& p = points[idx];
          Predictions preds = merged(base, p.fill_chars);
          if (opts.setting == Setting::inferred) preds = gate(preds, *opts.dev_binary);
          nonempty[idx] = std::any_of(preds.begin(), preds.end(),
                                      [](const auto& kv) { return !kv.second.empty(); });
          EvalReport report = evaluate(dev, preds);
          tuned.trace[idx] = {p, report, objective_value(report, opts.objective)};
        }
      } catch (...) {
        errors[u] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, bases.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < tuned.trace.size(); ++i) {
    const auto& cand = tuned.trace[i].objective;
    const auto& cur = tuned.trace[best].objective;
    if (cand && (!cur || *cand > *cur)) best = i;
  }
  tuned.best = tuned.trace[best].point;
  tuned.objective = tuned.trace[best].objective;
  tuned.degenerate = std::none_of(nonempty.begin(), nonempty.end(), [](char c) { return c; });
  return tuned;
}

std::optional<double> retention(double in_domain, double cross_domain) {
  if (in_domain == 0.0) return std::nullopt;
  return cross_domain / in_domain;
}

namespace {

const Dataset& find_dataset(const ExperimentConfig& cfg, const std::string& name) {
  auto it = cfg.datasets.find(name);
  if (it == cfg.datasets.end()) throw std::invalid_argument("unknown dataset '" + name + "'");
  return it->second;
}

template <typename T>
const T* find_pair(const DomainPairMap<T>& map, const std::string& train, const std::string& eval) {
  auto a = map.find(train);
  if (a == map.end()) return nullptr;
  auto b = a->second.find(eval);
  return b == a->second.end() ? nullptr : &b->second;
}

MethodInputs inputs_for(const MethodSpec& m, const std::string& train, const std::string& eval) {
  MethodInputs in;
  in.scores = find_pair(m.scores, train, eval);
  in.spans = find_pair(m.spans, train, eval);
  if (m.kind == MethodKind::rationale_file && !in.scores) {
    throw std::invalid_argument("method '" + m.name + "': no score file for " + train + " -> " + eval);
  }
  if (m.kind == MethodKind::span_file && !in.spans) {
    throw std::invalid_argument("method '" + m.name + "': no span file for " + train + " -> " + eval);
  }
  return in;
}

std::string fmt_double(const std::optional<double>& v, const char* spec = "%.6f") {
  if (!v) return "";
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, *v);
  return buf;
}

std::vector<std::string> point_values(const GridPoint& p) {
  return {std::to_string(p.fill_chars), fmt_double(p.theta, "%.6g"),
          p.min_occ ? std::to_string(*p.min_occ) : "", fmt_double(p.tau, "%.6g")};
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg, const std::vector<MethodSpec>& methods) {
  // Validate everything the runs will touch before evaluating anything.
  for (const auto& run : cfg.runs) {
    const Dataset& train = find_dataset(cfg, run.train);
    if (train.subset(Split::dev).samples.empty()) {
      throw std::invalid_argument("dataset '" + run.train + "' has no dev split");
    }
    std::vector<std::string> needed = {run.train};
    needed.insert(needed.end(), run.eval.begin(), run.eval.end());
    for (const auto& e : needed) {
      const Dataset& data = find_dataset(cfg, e);
      for (const auto& m : methods) inputs_for(m, run.train, e);
      if (cfg.setting == Setting::inferred) {
        const BinaryMap* b = find_pair(cfg.binary, run.train, e);
        if (!b) {
          throw std::invalid_argument("inferred setting: no binary predictions for " + run.train +
                                      " -> " + e);
        }
        const Split split = e == run.train ? Split::dev : Split::test;
        require_binary_coverage(data.subset(split), *b, run.train + " -> " + e);
        if (e == run.train) require_binary_coverage(data.subset(Split::test), *b, run.train + " -> " + e);
      }
    }
  }

  ResultTable table;
  table.name = cfg.name;
  table.setting = cfg.setting;
  table.objective = cfg.objective;
  for (const auto& run : cfg.runs) {
    const Dataset& full = find_dataset(cfg, run.train);
    const Dataset train = full.subset(Split::train);
    const Dataset dev = full.subset(Split::dev);
    for (const auto& m : methods) {
      SearchOptions opts;
      opts.setting = cfg.setting;
      opts.objective = cfg.objective;
      opts.match_mode = cfg.match_mode;
      opts.jobs = cfg.jobs;
      opts.dev_binary = find_pair(cfg.binary, run.train, run.train);
      opts.dev_inputs = inputs_for(m, run.train, run.train);
      TunedParams tuned = grid_search(m, train, dev, cfg.grid, opts);
      if (tuned.degenerate) {
        table.warnings.push_back(m.name + " (" + run.train + "): every grid point predicted no spans");
      }
      for (const auto& entry : tuned.trace) {
        table.trace.push_back({m.name, run.train, entry, entry.point == tuned.best});
      }

      const PreparedMethod prepared(m, train, cfg.match_mode);
      for (const auto& e : run.eval) {
        const Dataset test = find_dataset(cfg, e).subset(Split::test);
        Predictions preds = prepared.predict(test, tuned.best, inputs_for(m, run.train, e));
        if (cfg.setting == Setting::inferred) preds = gate(preds, *find_pair(cfg.binary, run.train, e));
        ResultRow row;
        row.method = m.name;
        row.kind = m.kind;
        row.train = run.train;
        row.eval = e;
        row.in_domain = e == run.train;
        row.params = tuned.best;
        row.dev_objective = tuned.objective;
        row.report = evaluate(test, preds);
        if (row.report.missing_predictions > 0) {
          table.warnings.push_back(m.name + " (" + run.train + " -> " + e + "): " +
                                   std::to_string(row.report.missing_predictions) +
                                   " test samples without prediction scored as empty");
        }
        table.rows.push_back(std::move(row));
      }
    }
  }

  for (auto& row : table.rows) {
    if (row.in_domain) continue;
    for (const auto& ref : table.rows) {
      if (ref.in_domain && ref.method == row.method && ref.eval == row.eval) {
        auto in = objective_value(ref.report, cfg.objective);
        auto cross = objective_value(row.report, cfg.objective);
        if (in && cross) row.retention = retention(*in, *cross);
      }
    }
  }
  return table;
}

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  std::vector<std::string> header = {"method", "kind",    "train",   "eval",       "domain",
                                     "setting", "objective", "fill_chars", "theta", "min_occ",
                                     "tau",     "dev_objective"};
  for (const auto& c : report_columns()) header.push_back(c);
  header.insert(header.end(), {"retention", "n_toxic", "n_nontoxic", "missing_predictions"});
  csv::write_row(os, header);
  for (const auto& r : rows) {
    std::vector<std::string> f = {r.method,
                                  std::string(to_string(r.kind)),
                                  r.train,
                                  r.eval,
                                  r.in_domain ? "in" : "cross",
                                  std::string(to_string(setting)),
                                  std::string(to_string(objective))};
    for (auto& v : point_values(r.params)) f.push_back(v);
    f.push_back(fmt_double(r.dev_objective));
    for (auto& v : report_values(r.report)) f.push_back(v);
    f.push_back(fmt_double(r.retention));
    f.push_back(std::to_string(r.report.n_toxic));
    f.push_back(std::to_string(r.report.n_nontoxic));
    f.push_back(std::to_string(r.report.missing_predictions));
    csv::write_row(os, f);
  }
  return os.str();
}

std::string ResultTable::to_text() const {
  auto pct = [](const std::optional<double>& v) { return v ? fmt_double(*v * 100.0, "%.1f") : "-"; };
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Method", "Train -> Eval", "F1+", "Prec.", "Rec.", "nonT F1+", "Macro F1+",
                   "Retention", "Params"});
  for (const auto& r : rows) {
    std::string params = "fill=" + std::to_string(r.params.fill_chars);
    if (r.params.theta) params += " theta=" + fmt_double(r.params.theta, "%g");
    if (r.params.min_occ) params += " min_occ=" + std::to_string(*r.params.min_occ);
    if (r.params.tau) params += " tau=" + fmt_double(r.params.tau, "%g");
    cells.push_back({r.method, r.train + " -> " + r.eval, pct(r.report.toxic_f1p),
                     pct(r.report.toxic_precision), pct(r.report.toxic_recall),
                     pct(r.report.nontoxic_f1p), pct(r.report.macro_f1p),
                     r.retention ? fmt_double(r.retention, "%.2f") : "-", params});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  os << name << " [" << to_string(setting) << ", tuned for " << to_string(objective) << "]\n";
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cells[r].size(); ++i) {
      const bool numeric = i >= 2 && i <= 7;
      if (i > 0) os << "  ";
      if (numeric) {
        os << std::setw(static_cast<int>(width[i])) << std::right << cells[r][i];
      } else if (i + 1 < cells[r].size()) {
        os << std::setw(static_cast<int>(width[i])) << std::left << cells[r][i];
      } else {
        os << cells[r][i];
      }
    }
    os << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      os << std::string(total - 2, '-') << '\n';
    }
  }
  return os.str();
}

std::string ResultTable::trace_csv() const {
  std::ostringstream os;
  std::vector<std::string> header = {"train", "method", "fill_chars", "theta", "min_occ", "tau"};
  for (const auto& c : report_columns()) header.push_back(c);
  header.insert(header.end(), {"objective", "chosen"});
  csv::write_row(os, header);
  for (const auto& t : trace) {
    std::vector<std::string> f = {t.train, t.method};
    for (auto& v : point_values(t.entry.point)) f.push_back(v);
    for (auto& v : report_values(t.entry.report)) f.push_back(v);
    f.push_back(fmt_double(t.entry.objective));
    f.push_back(t.chosen ? "1" : "0");
    csv::write_row(os, f);
  }
  return os.str();
}

}  // namespace toxspan
