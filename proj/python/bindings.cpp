#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "toxspan/corpus.hpp"
#include "toxspan/errsample.hpp"
#include "toxspan/harness.hpp"
#include "toxspan/inferred.hpp"
#include "toxspan/lexicon.hpp"
#include "toxspan/metrics.hpp"
#include "toxspan/rationale.hpp"
#include "toxspan/span_set.hpp"

namespace py = pybind11;
using namespace toxspan;

namespace {

using PyRanges = std::vector<std::pair<Offset, Offset>>;

SpanSet from_pairs(const PyRanges& pairs) {
  std::vector<Range> ranges;
  ranges.reserve(pairs.size());
  for (auto [s, e] : pairs) ranges.push_back({s, e});
  return SpanSet(std::move(ranges));
}

PyRanges to_pairs(const SpanSet& s) {
  PyRanges out;
  for (const auto& r : s.ranges()) out.emplace_back(r.start, r.end);
  return out;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  auto opt = [](const std::optional<double>& v) -> py::object {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
  };
  d["toxic_f1p"] = opt(r.toxic_f1p);
  d["toxic_precision"] = opt(r.toxic_precision);
  d["toxic_recall"] = opt(r.toxic_recall);
  d["nontoxic_f1p"] = opt(r.nontoxic_f1p);
  d["macro_f1p"] = opt(r.macro_f1p);
  d["n_toxic"] = r.n_toxic;
  d["n_nontoxic"] = r.n_nontoxic;
  d["missing_predictions"] = r.missing_predictions;
  return d;
}

std::string_view case_name(DegenerateCase c) {
  switch (c) {
    case DegenerateCase::both_empty: return "both_empty";
    case DegenerateCase::pred_only: return "pred_only";
    case DegenerateCase::gold_only: return "gold_only";
    case DegenerateCase::normal: break;
  }
  return "normal";
}

}  // namespace

PYBIND11_MODULE(_toxspan, m) {
  m.doc() = "Toxic span detection: metrics, lexicons, rationale thresholding and experiments";
  m.attr("__version__") = TOXSPAN_VERSION;

  py::class_<SpanSet>(m, "SpanSet")
      .def(py::init<>())
      .def(py::init(&from_pairs), py::arg("ranges"))
      .def_static("from_offsets",
                  [](const std::vector<Offset>& o) {
                    return SpanSet::from_offsets(std::set<Offset>(o.begin(), o.end()));
                  })
      .def("ranges", &to_pairs)
      .def("offsets",
           [](const SpanSet& s) {
             auto o = s.to_offsets();
             return std::vector<Offset>(o.begin(), o.end());
           })
      .def("size", &SpanSet::size)
      .def("empty", &SpanSet::empty)
      .def("__contains__", &SpanSet::contains)
      .def("unite", &SpanSet::unite)
      .def("intersect", &SpanSet::intersect)
      .def("__eq__", [](const SpanSet& a, const SpanSet& b) { return a == b; })
      .def("__repr__", [](const SpanSet& s) { return "SpanSet(" + to_string(s) + ")"; });

  m.def("merge_spans", [](const SpanSet& s, Offset fill) { return merge_spans(s, {fill}); },
        py::arg("spans"), py::arg("fill_chars"));
  m.def(
      "tokenize",
      [](const std::string& text) {
        std::vector<std::tuple<std::string, Offset, Offset>> out;
        for (auto& t : tokenize(std::string_view(text))) out.emplace_back(t.surface, t.start, t.end);
        return out;
      },
      py::arg("text"));

  py::class_<SampleScore>(m, "SampleScore")
      .def_readonly("f1_plus", &SampleScore::f1_plus)
      .def_readonly("precision", &SampleScore::precision)
      .def_readonly("recall", &SampleScore::recall)
      .def_property_readonly("case", [](const SampleScore& s) { return std::string(case_name(s.degenerate_case)); });
  m.def("score_sample", &score_sample, py::arg("pred"), py::arg("gold"));
  m.def("macro_f1p", &macro_f1p, py::arg("toxic_f1p"), py::arg("nontoxic_f1p"));

  py::class_<Sample>(m, "Sample")
      .def(py::init([](std::string id, std::string text, bool toxic, SpanSet gold, const std::string& split) {
             return Sample{std::move(id), std::move(text), toxic, std::move(gold), parse_split(split)};
           }),
           py::arg("id"), py::arg("text"), py::arg("toxic"), py::arg("gold_spans") = SpanSet{},
           py::arg("split") = "train")
      .def_readonly("id", &Sample::id)
      .def_readonly("text", &Sample::text)
      .def_readonly("toxic", &Sample::toxic)
      .def_readonly("gold_spans", &Sample::gold_spans)
      .def_property_readonly("split", [](const Sample& s) { return std::string(to_string(s.split)); });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](std::string name, std::vector<Sample> samples) {
             Dataset d;
             d.name = std::move(name);
             d.samples = std::move(samples);
             validate(d);
             return d;
           }),
           py::arg("name"), py::arg("samples"))
      .def_readonly("name", &Dataset::name)
      .def_readonly("samples", &Dataset::samples)
      .def("subset", [](const Dataset& d, const std::string& split) { return d.subset(parse_split(split)); })
      .def("__len__", [](const Dataset& d) { return d.samples.size(); });
  m.def("read_canonical", &read_canonical, py::arg("path"));
  m.def("write_canonical", &write_canonical, py::arg("dataset"), py::arg("path"));
  m.def(
      "compute_stats",
      [](const Dataset& d) {
        auto st = compute_stats(d);
        py::dict out;
        for (Split s : kAllSplits) {
          const auto& f = st[s];
          if (!f) continue;
          py::dict row;
          row["count"] = f->count;
          row["toxic_with_span"] = f->toxic_with_span;
          row["toxic_without_span"] = f->toxic_without_span;
          row["nontoxic"] = f->nontoxic;
          out[py::str(std::string(to_string(s)))] = row;
        }
        out["span_pct"] = st.span_pct ? py::object(py::float_(*st.span_pct)) : py::object(py::none());
        return out;
      },
      py::arg("dataset"));

  m.def(
      "evaluate",
      [](const Dataset& d, const Predictions& p) { return report_dict(evaluate(d, p)); },
      py::arg("dataset"), py::arg("predictions"));

  py::class_<Lexicon>(m, "Lexicon")
      .def_readonly("name", &Lexicon::name)
      .def_property_readonly("words",
                             [](const Lexicon& l) {
                               std::vector<std::string> w;
                               for (const auto& e : l.entries) w.push_back(e.word);
                               return w;
                             })
      .def("__contains__", &Lexicon::contains)
      .def("__len__", [](const Lexicon& l) { return l.entries.size(); });
  m.def(
      "build_lexicon",
      [](const Dataset& train, double theta, std::size_t min_occ, const std::string& rule) {
        return build_lexicon(train, {theta, min_occ, parse_in_span_rule(rule)});
      },
      py::arg("train"), py::arg("theta") = 0.5, py::arg("min_occ") = 1,
      py::arg("in_span_rule") = "majority_chars");
  m.def(
      "parse_wordlist", [](const std::string& content, const std::string& name) { return parse_wordlist(content, name); },
      py::arg("content"), py::arg("name") = "wordlist");
  m.def(
      "load_wordlist", [](const std::string& path, const std::string& name) { return load_wordlist(path, name); },
      py::arg("path"), py::arg("name") = "wordlist");
  m.def(
      "predict",
      [](const std::string& text, const Lexicon& lex, const std::string& mode, bool case_fold) {
        return predict(text, lex, {parse_match_kind(mode), case_fold});
      },
      py::arg("text"), py::arg("lexicon"), py::arg("match_mode") = "substring", py::arg("case_fold") = true);

  m.def(
      "normalize",
      [](const std::vector<double>& scores) {
        TokenScores ts;
        Offset pos = 0;
        for (double s : scores) {
          ts.tokens.push_back({pos, pos + 1, s});
          ++pos;
        }
        std::vector<double> out;
        for (const auto& t : normalize(ts).tokens) out.push_back(t.score);
        return out;
      },
      py::arg("scores"));
  m.def(
      "threshold_to_spans",
      [](const std::vector<std::tuple<Offset, Offset, double>>& tokens, double tau, bool normalized) {
        TokenScores ts;
        for (auto [s, e, v] : tokens) ts.tokens.push_back({s, e, v});
        validate_scores(ts);
        return threshold_to_spans(normalized ? ts : normalize(ts), {tau});
      },
      py::arg("tokens"), py::arg("tau"), py::arg("already_normalized") = false);

  m.def(
      "gate",
      [](const Predictions& spans, const std::map<std::string, bool>& binary) {
        BinaryMap b;
        for (const auto& [id, toxic] : binary) b[id] = {id, toxic};
        return gate(spans, b);
      },
      py::arg("spans"), py::arg("binary"));

  m.def(
      "grid_size",
      [](const std::string& kind) { return enumerate_grid(parse_method_kind(kind), GridSpec::defaults()).size(); },
      py::arg("kind"));
  m.def("retention", &retention, py::arg("in_domain"), py::arg("cross_domain"));

  m.def(
      "run_experiment",
      [](const std::string& config_path) {
        auto loaded = load_experiment(config_path);
        ResultTable t;
        {
          py::gil_scoped_release release;
          t = run_experiment(loaded.config, loaded.methods);
        }
        py::dict d;
        d["csv"] = t.to_csv();
        d["text"] = t.to_text();
        d["trace"] = t.trace_csv();
        d["warnings"] = t.warnings;
        return d;
      },
      py::arg("config_path"));

  m.def(
      "error_categories",
      [](const Dataset& d, const Predictions& p, const std::string& method) {
        auto cat = categorize(select_errors(d, p, method));
        std::map<std::string, std::size_t> out;
        for (const auto& [c, n] : cat.counts) out[std::string(to_string(c))] = n;
        return out;
      },
      py::arg("dataset"), py::arg("predictions"), py::arg("method") = "method");
}
