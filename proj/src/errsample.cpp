#include "toxspan/errsample.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "toxspan/csv.hpp"
#include "toxspan/io.hpp"
#include "toxspan/random.hpp"
#include "toxspan/text.hpp"

namespace toxspan {

std::string_view to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::high_high:
      return "P+R+";
    case ErrorCategory::high_low:
      return "P+R-";
    case ErrorCategory::low_high:
      return "P-R+";
    case ErrorCategory::low_low:
      return "P-R-";
    case ErrorCategory::empty:
      return "empty";
  }
  return "?";
}

ErrorCategory parse_error_category(std::string_view name) {
  for (auto c : kAllCategories) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown error category '" + std::string(name) + "'");
}

std::string_view to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::doubt_label_missing:
      return "doubt-label-missing";
    case ErrorClass::doubt_label_toomany:
      return "doubt-label-toomany";
    case ErrorClass::fp_subword_toxic:
      return "FP-subword-toxic";
    case ErrorClass::fp_subword_nontoxic:
      return "FP-subword-nontoxic";
    case ErrorClass::fn_subword_morph:
      return "FN-subword-morph";
    case ErrorClass::fn_subword:
      return "FN-subword";
    case ErrorClass::fn_explicit:
      return "FN-explicit";
    case ErrorClass::fn_explicit_spelling:
      return "FN-explicit-spelling";
    case ErrorClass::fn_implicit:
      return "FN-implicit";
    case ErrorClass::fn_phrase_part:
      return "FN-phrase-part";
    case ErrorClass::fn_whitespace:
      return "FN-whitespace";
    case ErrorClass::fp_target:
      return "FP-target";
    case ErrorClass::fp_pos:
      return "FP-pos";
  }
  return "?";
}

ErrorClass parse_error_class(std::string_view name) {
  for (auto c : kAllErrorClasses) {
    if (to_string(c) == name) return c;
  }
  throw std::invalid_argument("unknown error class '" + std::string(name) + "'");
}

bool in_aggregate(std::string_view aggregate, ErrorClass c) {
  const std::string_view name = to_string(c);
  if (aggregate == "*-subword-*") return name.find("-subword") != std::string_view::npos;
  if (aggregate == "FN-*") return name.starts_with("FN-");
  if (aggregate == "FP-*") return name.starts_with("FP-");
  throw std::invalid_argument("unknown aggregate '" + std::string(aggregate) + "'");
}

namespace {

void set_hints(ErrorRecord& rec) {
  if (rec.pred.empty()) return;
  for (const auto& tok : tokenize(rec.text)) {
    for (const auto& r : rec.pred.ranges()) {
      if ((r.start > tok.start && r.start < tok.end) || (r.end > tok.start && r.end < tok.end)) {
        rec.hint_subword = true;
      }
      if (r.start <= tok.start && r.end > tok.start && r.end < tok.end) {
        rec.hint_missing_suffix = true;
      }
    }
  }
}

}  // namespace

std::vector<ErrorRecord> select_errors(const Dataset& dataset, const Predictions& predictions,
                                       const std::string& method) {
  std::vector<ErrorRecord> out;
  const SpanSet none;
  for (const auto& s : dataset.samples) {
    auto it = predictions.find(s.id);
    const SpanSet& pred = it == predictions.end() ? none : it->second;
    SampleScore score = score_sample(pred, s.gold_spans);
    if (score.f1_plus >= 1.0) continue;
    ErrorRecord rec;
    rec.sample_id = s.id;
    rec.method = method;
    rec.text = s.text;
    rec.precision = score.precision;
    rec.recall = score.recall;
    rec.f1_plus = score.f1_plus;
    rec.pred = pred;
    rec.gold = s.gold_spans;
    rec.empty_gold = s.gold_spans.empty();
    set_hints(rec);
    out.push_back(std::move(rec));
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

Categorized categorize(std::vector<ErrorRecord> errors) {
  Categorized out;
  for (auto c : kAllCategories) out.counts[c] = 0;
  std::vector<double> ps, rs;
  for (const auto& e : errors) {
    if (e.pred.empty()) continue;
    ps.push_back(e.precision);
    rs.push_back(e.recall);
  }
  if (!ps.empty()) {
    out.precision_median = median(ps);
    out.recall_median = median(rs);
  }
  for (auto& e : errors) {
    if (e.pred.empty()) {
      e.category = ErrorCategory::empty;
    } else {
      const bool p_high = e.precision > *out.precision_median;
      const bool r_high = e.recall > *out.recall_median;
      e.category = p_high ? (r_high ? ErrorCategory::high_high : ErrorCategory::high_low)
                          : (r_high ? ErrorCategory::low_high : ErrorCategory::low_low);
    }
    out.counts[e.category]++;
  }
  out.records = std::move(errors);
  return out;
}

std::map<ErrorCategory, std::size_t> sample_quotas(const CategoryCounts& available,
                                                   std::size_t per_category) {
  std::map<ErrorCategory, std::size_t> quota;
  auto avail = [&](ErrorCategory c) {
    auto it = available.find(c);
    return it == available.end() ? std::size_t{0} : it->second;
  };
  std::size_t deficit = 0;
  for (auto c : kAllCategories) {
    quota[c] = std::min(per_category, avail(c));
    deficit += per_category - quota[c];
  }
  while (deficit > 0) {
    std::vector<ErrorCategory> open;
    for (auto c : kAllCategories) {
      if (avail(c) > quota[c]) open.push_back(c);
    }
    if (open.empty()) break;
    const std::size_t share = deficit / open.size();
    const std::size_t rem = deficit % open.size();
    for (std::size_t i = 0; i < open.size(); ++i) {
      const std::size_t want = share + (i < rem ? 1 : 0);
      const std::size_t give = std::min(want, avail(open[i]) - quota[open[i]]);
      quota[open[i]] += give;
      deficit -= give;
    }
  }
  return quota;
}

AnnotatedSheet sample_sheet(const Categorized& categorized, std::size_t per_category,
                            std::uint64_t seed) {
  if (per_category < 1) throw std::invalid_argument("per_category must be >= 1");
  AnnotatedSheet sheet;
  CategoryCounts available;
  std::map<ErrorCategory, std::vector<const ErrorRecord*>> by_category;
  for (const auto& r : categorized.records) {
    by_category[r.category].push_back(&r);
    available[r.category]++;
  }
  const std::size_t requested = per_category * kAllCategories.size();
  if (categorized.records.size() < requested) {
    sheet.warnings.push_back("only " + std::to_string(categorized.records.size()) +
                             " errors available, " + std::to_string(requested) +
                             " requested; sheet holds all of them");
  }
  auto quotas = sample_quotas(available, per_category);
  Rng rng(seed);
  for (auto c : kAllCategories) {
    const auto& pool = by_category[c];
    for (std::size_t idx : rng.sample_indices(pool.size(), quotas[c])) {
      sheet.rows.push_back({*pool[idx], false, {}});
    }
  }
  return sheet;
}

namespace {

// Whether a record carries a class or aggregate label.
bool has_label(const SheetRow& row, const std::string& label) {
  for (auto c : row.classes) {
    if (to_string(c) == label) return true;
    for (auto agg : kAggregates) {
      if (agg == label && in_aggregate(agg, c)) return true;
    }
  }
  return false;
}

std::vector<std::string> all_labels() {
  std::vector<std::string> labels;
  for (auto c : kAllErrorClasses) labels.emplace_back(to_string(c));
  for (auto a : kAggregates) labels.emplace_back(a);
  return labels;
}

void require_annotated(const AnnotatedSheet& sheet) {
  std::string missing;
  for (const auto& row : sheet.rows) {
    if (!row.annotated) missing += (missing.empty() ? "" : ", ") + row.record.sample_id;
  }
  if (!missing.empty()) throw std::invalid_argument("unannotated records: " + missing);
}

}  // namespace

std::map<std::string, double> reweight_prevalence(const AnnotatedSheet& sheet,
                                                  const CategoryCounts& category_counts) {
  require_annotated(sheet);
  std::size_t total = 0;
  for (const auto& [_, n] : category_counts) total += n;
  std::map<std::string, double> out;
  for (const auto& label : all_labels()) out[label] = 0.0;
  if (total == 0) return out;

  std::map<ErrorCategory, std::vector<const SheetRow*>> by_category;
  for (const auto& row : sheet.rows) by_category[row.record.category].push_back(&row);
  for (const auto& [category, n] : category_counts) {
    auto it = by_category.find(category);
    if (n == 0 || it == by_category.end()) continue;
    const double weight = static_cast<double>(n) / static_cast<double>(total);
    const auto sampled = static_cast<double>(it->second.size());
    for (const auto& label : all_labels()) {
      std::size_t hits = 0;
      for (const auto* row : it->second) hits += has_label(*row, label) ? 1 : 0;
      out[label] += weight * (static_cast<double>(hits) / sampled);
    }
  }
  return out;
}

std::map<std::string, double> raw_prevalence(const AnnotatedSheet& sheet) {
  std::map<std::string, double> out;
  for (const auto& label : all_labels()) {
    std::size_t hits = 0;
    for (const auto& row : sheet.rows) hits += has_label(row, label) ? 1 : 0;
    out[label] = sheet.rows.empty() ? 0.0
                                    : static_cast<double>(hits) / static_cast<double>(sheet.rows.size());
  }
  return out;
}

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> sheet_header() {
  std::vector<std::string> h = {"id",        "method",       "category",     "P",
                                "R",         "F1+",          "empty_gold",   "hint_subword",
                                "hint_missing_suffix", "text", "gold_spans", "pred_spans",
                                "annotated"};
  for (auto c : kAllErrorClasses) h.emplace_back(to_string(c));
  return h;
}

SpanSet parse_span_text(const std::string& text) {
  std::vector<Range> ranges;
  std::size_t pos = 0;
  while ((pos = text.find('[', pos)) != std::string::npos) {
    std::size_t comma = text.find(',', pos);
    std::size_t close = text.find(')', pos);
    if (comma == std::string::npos || close == std::string::npos || comma > close) {
      throw std::invalid_argument("bad span list '" + text + "'");
    }
    ranges.push_back({std::stoll(text.substr(pos + 1, comma - pos - 1)),
                      std::stoll(text.substr(comma + 1, close - comma - 1))});
    pos = close + 1;
  }
  return SpanSet(std::move(ranges));
}

bool truthy(const std::string& v) {
  return !v.empty() && v != "0" && v != "false" && v != "no" && v != "n";
}

}  // namespace

std::string sheet_to_csv(const AnnotatedSheet& sheet) {
  std::ostringstream os;
  csv::write_row(os, sheet_header());
  for (const auto& row : sheet.rows) {
    const auto& r = row.record;
    std::vector<std::string> f = {r.sample_id,
                                  r.method,
                                  std::string(to_string(r.category)),
                                  fmt6(r.precision),
                                  fmt6(r.recall),
                                  fmt6(r.f1_plus),
                                  r.empty_gold ? "1" : "0",
                                  r.hint_subword ? "1" : "0",
                                  r.hint_missing_suffix ? "1" : "0",
                                  r.text,
                                  to_string(r.gold),
                                  to_string(r.pred),
                                  row.annotated ? "1" : ""};
    for (auto c : kAllErrorClasses) f.push_back(row.classes.contains(c) ? "1" : "");
    csv::write_row(os, f);
  }
  return os.str();
}

AnnotatedSheet sheet_from_csv(const std::string& path) {
  auto records = csv::read_file(path);
  if (records.empty()) throw FormatError(path, 0, "empty sheet");
  const auto& header = records.front().fields;
  auto col = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw FormatError(path, 1, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  AnnotatedSheet sheet;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    if (f.size() != header.size()) {
      throw FormatError(path, records[i].line, "expected " + std::to_string(header.size()) + " fields");
    }
    try {
      SheetRow row;
      auto& r = row.record;
      r.sample_id = f[col("id")];
      r.method = f[col("method")];
      r.category = parse_error_category(f[col("category")]);
      r.precision = std::stod(f[col("P")]);
      r.recall = std::stod(f[col("R")]);
      r.f1_plus = std::stod(f[col("F1+")]);
      r.empty_gold = truthy(f[col("empty_gold")]);
      r.hint_subword = truthy(f[col("hint_subword")]);
      r.hint_missing_suffix = truthy(f[col("hint_missing_suffix")]);
      r.text = f[col("text")];
      r.gold = parse_span_text(f[col("gold_spans")]);
      r.pred = parse_span_text(f[col("pred_spans")]);
      for (auto c : kAllErrorClasses) {
        if (truthy(f[col(std::string(to_string(c)))])) row.classes.insert(c);
      }
      row.annotated = truthy(f[col("annotated")]) || !row.classes.empty();
      sheet.rows.push_back(std::move(row));
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError(path, records[i].line, e.what());
    }
  }
  return sheet;
}

std::string counts_to_csv(const std::string& method, const CategoryCounts& counts) {
  std::ostringstream os;
  csv::write_row(os, {"method", "category", "count"});
  for (auto c : kAllCategories) {
    auto it = counts.find(c);
    csv::write_row(os, {method, std::string(to_string(c)),
                        std::to_string(it == counts.end() ? 0 : it->second)});
  }
  return os.str();
}

std::map<std::string, CategoryCounts> counts_from_csv(const std::string& path) {
  auto records = csv::read_file(path);
  std::map<std::string, CategoryCounts> out;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i].fields;
    if (f.size() != 3) throw FormatError(path, records[i].line, "expected method,category,count");
    try {
      out[f[0]][parse_error_category(f[1])] = std::stoull(f[2]);
    } catch (const std::exception& e) {
      throw FormatError(path, records[i].line, e.what());
    }
  }
  return out;
}

std::string prevalence_to_csv(
    const std::vector<std::pair<std::string, std::map<std::string, double>>>& by_method) {
  std::ostringstream os;
  std::vector<std::string> header = {"class"};
  for (const auto& [method, _] : by_method) header.push_back(method);
  csv::write_row(os, header);
  for (const auto& label : all_labels()) {
    std::vector<std::string> row = {label};
    for (const auto& [_, prev] : by_method) {
      auto it = prev.find(label);
      row.push_back(it == prev.end() ? "" : fmt6(it->second));
    }
    csv::write_row(os, row);
  }
  return os.str();
}

}  // namespace toxspan
