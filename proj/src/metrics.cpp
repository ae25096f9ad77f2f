#include "toxspan/metrics.hpp"

#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace toxspan {

SampleScore score_sample(const SpanSet& pred, const SpanSet& gold) {
  SampleScore s;
  const Offset n_pred = pred.size();
  const Offset n_gold = gold.size();
  if (n_pred == 0 && n_gold == 0) {
    s.degenerate_case = DegenerateCase::both_empty;
    s.f1_plus = s.precision = s.recall = 1.0;
    return s;
  }
  if (n_gold == 0) {
    s.degenerate_case = DegenerateCase::pred_only;
    return s;
  }
  if (n_pred == 0) {
    s.degenerate_case = DegenerateCase::gold_only;
    return s;
  }
  const auto common = static_cast<double>(overlap(pred, gold));
  s.precision = common / static_cast<double>(n_pred);
  s.recall = common / static_cast<double>(n_gold);
  s.f1_plus = common == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::optional<Aggregate> aggregate(std::span<const SampleScore> scores) {
  if (scores.empty()) return std::nullopt;
  Aggregate a;
  for (const auto& s : scores) {
    a.f1_plus += s.f1_plus;
    a.precision += s.precision;
    a.recall += s.recall;
  }
  const auto n = static_cast<double>(scores.size());
  a.f1_plus /= n;
  a.precision /= n;
  a.recall /= n;
  return a;
}

double macro_f1p(double toxic_f1p, double nontoxic_f1p) {
  const double sum = toxic_f1p + nontoxic_f1p;
  if (sum == 0.0) return 0.0;
  return 2.0 * toxic_f1p * nontoxic_f1p / sum;
}

EvalReport evaluate(const Dataset& dataset, const Predictions& predictions) {
  std::unordered_set<std::string> ids;
  for (const auto& s : dataset.samples) ids.insert(s.id);
  for (const auto& [id, _] : predictions) {
    if (!ids.contains(id)) throw std::invalid_argument("prediction for unknown id '" + id + "'");
  }

  EvalReport report;
  std::vector<SampleScore> toxic, nontoxic;
  const SpanSet none;
  for (const auto& s : dataset.samples) {
    auto it = predictions.find(s.id);
    if (it == predictions.end()) ++report.missing_predictions;
    const SpanSet& pred = it == predictions.end() ? none : it->second;
    (s.toxic ? toxic : nontoxic).push_back(score_sample(pred, s.gold_spans));
  }
  report.n_toxic = toxic.size();
  report.n_nontoxic = nontoxic.size();
  if (auto t = aggregate(toxic)) {
    report.toxic_f1p = t->f1_plus;
    report.toxic_precision = t->precision;
    report.toxic_recall = t->recall;
  }
  if (auto n = aggregate(nontoxic)) report.nontoxic_f1p = n->f1_plus;
  if (report.toxic_f1p && report.nontoxic_f1p) {
    report.macro_f1p = macro_f1p(*report.toxic_f1p, *report.nontoxic_f1p);
  }
  return report;
}

std::vector<std::string> report_columns() {
  return {"toxic_f1p", "toxic_precision", "toxic_recall", "nontoxic_f1p", "macro_f1p"};
}

std::vector<std::string> report_values(const EvalReport& report) {
  auto fmt = [](const std::optional<double>& v) -> std::string {
    if (!v) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *v);
    return buf;
  };
  return {fmt(report.toxic_f1p), fmt(report.toxic_precision), fmt(report.toxic_recall),
          fmt(report.nontoxic_f1p), fmt(report.macro_f1p)};
}

}  // namespace toxspan
