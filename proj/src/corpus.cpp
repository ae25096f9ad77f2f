#include "toxspan/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "toxspan/csv.hpp"
#include "toxspan/io.hpp"
#include "toxspan/random.hpp"
#include "toxspan/text.hpp"

namespace toxspan {

using nlohmann::json;

std::string_view to_string(Split split) {
  switch (split) {
    case Split::train:
      return "train";
    case Split::dev:
      return "dev";
    case Split::test:
      return "test";
  }
  return "?";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "dev" || name == "val" || name == "validation" || name == "trial") return Split::dev;
  if (name == "test") return Split::test;
  throw std::invalid_argument("unknown split '" + std::string(name) + "'");
}

Dataset Dataset::subset(Split split) const {
  Dataset out{name, {}, provenance};
  for (const auto& s : samples) {
    if (s.split == split) out.samples.push_back(s);
  }
  return out;
}

void validate(const Dataset& dataset) {
  std::unordered_set<std::string> seen;
  for (const auto& s : dataset.samples) {
    if (!seen.insert(s.id).second) {
      throw std::invalid_argument("duplicate sample id '" + s.id + "'");
    }
    auto len = static_cast<Offset>(char_length(s.text));
    if (s.gold_spans.max_end() > len) {
      throw std::invalid_argument("sample '" + s.id + "': span offset " +
                                  std::to_string(s.gold_spans.max_end() - 1) +
                                  " outside text of length " + std::to_string(len));
    }
    if (!s.toxic && !s.gold_spans.empty()) {
      throw std::invalid_argument("sample '" + s.id + "' is non-toxic but has spans");
    }
  }
}

namespace {

// Parses "[0, 1, 2]" into offsets.
std::vector<Offset> parse_offset_list(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw std::invalid_argument("span list must be bracketed, got '" + std::string(text) + "'");
  }
  text = trim(text.substr(1, text.size() - 2));
  std::vector<Offset> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item =
        trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    Offset value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("bad offset '" + std::string(item) + "' in span list");
    }
    if (value < 0) throw std::invalid_argument("negative offset in span list");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Dataset ingest_semeval(const std::string& path, Split split, const SemEvalOptions& opts) {
  auto records = csv::read_file(path);
  if (records.empty()) throw FormatError(path, 0, "empty CSV");
  const auto& header = records.front().fields;
  auto col = [&](std::string_view name) -> std::size_t {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw FormatError(path, 1, "missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t spans_col = col("spans");
  const std::size_t text_col = col("text");
  const std::string prefix =
      opts.id_prefix.empty() ? "semeval-" + std::string(to_string(split)) : opts.id_prefix;

  Dataset ds;
  ds.name = std::filesystem::path(path).stem().string();
  ds.provenance = "semeval csv " + path;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& fields = records[r].fields;
    const std::size_t rowno = r + 1;
    if (fields.size() <= std::max(spans_col, text_col)) {
      throw FormatError(path, rowno, "row " + std::to_string(rowno) + ": expected " +
                                         std::to_string(header.size()) + " columns");
    }
    std::vector<Offset> offsets;
    try {
      offsets = parse_offset_list(fields[spans_col]);
    } catch (const std::exception& e) {
      throw FormatError(path, rowno, "row " + std::to_string(rowno) + ": " + e.what());
    }
    Sample s;
    s.id = prefix + "-" + std::to_string(r - 1);
    s.text = fields[text_col];
    s.toxic = true;
    s.split = split;
    std::size_t len;
    try {
      len = decode_utf8(s.text).size();
    } catch (const std::exception& e) {
      throw FormatError(path, rowno, "row " + std::to_string(rowno) + ": " + e.what());
    }
    for (Offset o : offsets) {
      if (o >= static_cast<Offset>(len)) {
        throw FormatError(path, rowno, "row " + std::to_string(rowno) + ": offset " +
                                           std::to_string(o) + " >= text length " +
                                           std::to_string(len));
      }
    }
    s.gold_spans = SpanSet::from_offsets(std::span<const Offset>(offsets));
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

namespace {

std::map<std::string, Split> read_divisions(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path, 0, std::string("invalid JSON: ") + e.what());
  }
  std::map<std::string, Split> out;
  for (const auto& [key, ids] : doc.items()) {
    Split split = parse_split(key);
    for (const auto& id : ids) out[id.get<std::string>()] = split;
  }
  return out;
}

// Converts one HateXplain record; returns nullopt when the record is dropped.
std::optional<Sample> convert_hatexplain(const std::string& path, const std::string& post_id,
                                         const json& rec, bool skip_bad, IngestLog* log) {
  auto warn = [&](const std::string& msg) {
    if (log) log->warnings.push_back(post_id + ": " + msg);
  };
  const auto& tokens = rec.at("post_tokens");
  std::map<std::string, int> votes;
  for (const auto& a : rec.at("annotators")) votes[a.at("label").get<std::string>()]++;
  std::string winner;
  int best = 0;
  bool tie = false;
  for (const auto& [label, n] : votes) {
    if (n > best) {
      best = n;
      winner = label;
      tie = false;
    } else if (n == best) {
      tie = true;
    }
  }
  if (votes.empty() || tie) {
    warn("no majority class; record dropped");
    return std::nullopt;
  }
  bool toxic;
  if (winner == "hatespeech" || winner == "offensive") {
    toxic = true;
  } else if (winner == "normal") {
    toxic = false;
  } else {
    throw FormatError(path, 0, post_id + ": unknown class label '" + winner + "'");
  }

  Sample s;
  s.id = post_id;
  s.toxic = toxic;
  std::vector<Range> token_ranges;
  Offset pos = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) {
      s.text.push_back(' ');
      ++pos;
    }
    std::string tok = tokens[i].get<std::string>();
    auto len = static_cast<Offset>(decode_utf8(tok).size());
    s.text += tok;
    token_ranges.push_back({pos, pos + len});
    pos += len;
  }

  const json empty = json::array();
  const auto& rationales = rec.contains("rationales") ? rec.at("rationales") : empty;
  for (const auto& r : rationales) {
    if (r.size() != tokens.size()) {
      std::string msg = "rationale length " + std::to_string(r.size()) + " != token count " +
                        std::to_string(tokens.size());
      if (skip_bad) {
        warn(msg + "; record dropped");
        return std::nullopt;
      }
      throw FormatError(path, 0, post_id + ": " + msg);
    }
  }
  if (toxic && !rationales.empty()) {
    std::vector<Range> in_span;
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      double sum = 0.0;
      for (const auto& r : rationales) sum += r[t].get<double>();
      if (sum / static_cast<double>(rationales.size()) >= 0.5) in_span.push_back(token_ranges[t]);
    }
    s.gold_spans = SpanSet(std::move(in_span));
  }
  return s;
}

Dataset ingest_hatexplain_impl(const std::string& path,
                               const std::function<std::optional<Split>(const std::string&)>& split_of,
                               bool skip_bad, IngestLog* log) {
  json doc;
  try {
    doc = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path, 0, std::string("invalid JSON: ") + e.what());
  }
  Dataset ds;
  ds.name = "hatexplain";
  ds.provenance = "hatexplain json " + path;
  for (const auto& [post_id, rec] : doc.items()) {
    auto split = split_of(post_id);
    if (!split) continue;
    std::optional<Sample> s;
    try {
      s = convert_hatexplain(path, post_id, rec, skip_bad, log);
    } catch (const FormatError&) {
      throw;
    } catch (const std::exception& e) {
      throw FormatError(path, 0, post_id + ": " + e.what());
    }
    if (!s) continue;
    s->split = *split;
    ds.samples.push_back(std::move(*s));
  }
  return ds;
}

}  // namespace

Dataset ingest_hatexplain(const std::string& path, Split split, const HateXplainOptions& opts,
                          IngestLog* log) {
  std::map<std::string, Split> divisions;
  if (!opts.divisions_path.empty()) divisions = read_divisions(opts.divisions_path);
  auto split_of = [&](const std::string& id) -> std::optional<Split> {
    if (opts.divisions_path.empty()) return split;
    auto it = divisions.find(id);
    if (it == divisions.end() || it->second != split) return std::nullopt;
    return split;
  };
  return ingest_hatexplain_impl(path, split_of, opts.skip_bad_records, log);
}

Dataset ingest_hatexplain_all(const std::string& path, const std::string& divisions_path,
                              bool skip_bad_records, IngestLog* log) {
  auto divisions = read_divisions(divisions_path);
  auto split_of = [&](const std::string& id) -> std::optional<Split> {
    auto it = divisions.find(id);
    if (it == divisions.end()) return std::nullopt;
    return it->second;
  };
  return ingest_hatexplain_impl(path, split_of, skip_bad_records, log);
}

Dataset balance_binary(const Dataset& dataset, const Dataset& pool, std::uint64_t seed) {
  for (const auto& p : pool.samples) {
    if (p.toxic || !p.gold_spans.empty()) {
      throw std::invalid_argument("pool sample '" + p.id + "' is not a non-toxic sample");
    }
  }
  std::unordered_set<std::string> ids;
  for (const auto& s : dataset.samples) ids.insert(s.id);

  Dataset out = dataset;
  Rng rng(seed);
  std::string shortfall;
  std::vector<std::vector<const Sample*>> draws(kAllSplits.size());
  for (Split split : kAllSplits) {
    std::size_t toxic = 0, nontoxic = 0;
    for (const auto& s : dataset.samples) {
      if (s.split != split) continue;
      (s.toxic ? toxic : nontoxic)++;
    }
    if (nontoxic >= toxic) continue;
    const std::size_t need = toxic - nontoxic;
    std::vector<const Sample*> candidates;
    for (const auto& p : pool.samples) {
      if (p.split == split && !ids.contains(p.id)) candidates.push_back(&p);
    }
    if (candidates.size() < need) {
      shortfall += " " + std::string(to_string(split)) + ": need " + std::to_string(need) +
                   ", pool has " + std::to_string(candidates.size()) + ";";
      continue;
    }
    for (std::size_t idx : rng.sample_indices(candidates.size(), need)) {
      draws[static_cast<std::size_t>(split)].push_back(candidates[idx]);
    }
  }
  if (!shortfall.empty()) throw std::runtime_error("non-toxic pool too small:" + shortfall);
  for (const auto& per_split : draws) {
    for (const Sample* p : per_split) {
      if (!ids.insert(p->id).second) {
        throw std::invalid_argument("pool sample id '" + p->id + "' appears twice");
      }
      out.samples.push_back(*p);
    }
  }
  return out;
}

DatasetStats compute_stats(const Dataset& dataset) {
  DatasetStats stats;
  std::array<std::array<std::size_t, 3>, 3> counts{};  // [split][with, without, nontoxic]
  double pct_sum = 0.0;
  std::size_t pct_n = 0;
  for (const auto& s : dataset.samples) {
    auto& c = counts[static_cast<std::size_t>(s.split)];
    if (!s.toxic) {
      c[2]++;
      continue;
    }
    c[s.gold_spans.empty() ? 1 : 0]++;
    auto len = char_length(s.text);
    if (len > 0) {
      pct_sum += static_cast<double>(s.gold_spans.size()) / static_cast<double>(len);
      ++pct_n;
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t total = counts[i][0] + counts[i][1] + counts[i][2];
    if (total == 0) continue;
    auto n = static_cast<double>(total);
    stats.splits[i] = SplitFractions{total, counts[i][0] / n, counts[i][1] / n, counts[i][2] / n};
  }
  if (pct_n > 0) stats.span_pct = pct_sum / static_cast<double>(pct_n);
  return stats;
}

namespace {

json sample_to_json(const Sample& s) {
  json spans = json::array();
  for (const auto& r : s.gold_spans.ranges()) spans.push_back({r.start, r.end});
  return json{{"id", s.id},
              {"text", s.text},
              {"toxic", s.toxic},
              {"spans", spans},
              {"split", std::string(to_string(s.split))}};
}

}  // namespace

std::string to_canonical_string(const Dataset& dataset) {
  validate(dataset);
  std::string out =
      json{{"schema", kCanonicalSchema}, {"name", dataset.name}, {"provenance", dataset.provenance}}
          .dump() +
      "\n";
  for (const auto& s : dataset.samples) out += sample_to_json(s).dump() + "\n";
  return out;
}

void write_canonical(const Dataset& dataset, const std::string& path) {
  write_text_file(path, to_canonical_string(dataset));
}

Dataset read_canonical(const std::string& path) {
  Dataset ds;
  bool have_header = false;
  std::unordered_set<std::string> ids;
  for_each_jsonl(path, [&](const json& obj, std::size_t line) {
    if (!have_header) {
      if (!obj.is_object() || !obj.contains("schema")) {
        throw FormatError(path, line, "missing schema header");
      }
      auto found = obj.at("schema").get<std::string>();
      if (found != kCanonicalSchema) {
        throw FormatError(path, line, "schema version mismatch: expected " +
                                          std::string(kCanonicalSchema) + ", found " + found);
      }
      ds.name = obj.value("name", std::filesystem::path(path).stem().string());
      ds.provenance = obj.value("provenance", std::string());
      have_header = true;
      return;
    }
    Sample s;
    s.id = obj.at("id").get<std::string>();
    s.text = obj.at("text").get<std::string>();
    s.toxic = obj.at("toxic").get<bool>();
    s.split = parse_split(obj.at("split").get<std::string>());
    std::vector<Range> ranges;
    for (const auto& r : obj.at("spans")) {
      if (!r.is_array() || r.size() != 2) throw std::invalid_argument("span must be [start,end]");
      ranges.push_back({r[0].get<Offset>(), r[1].get<Offset>()});
    }
    s.gold_spans = SpanSet(std::move(ranges));
    if (!ids.insert(s.id).second) {
      throw FormatError(path, line, "duplicate sample id '" + s.id + "'");
    }
    Dataset one{"", {s}, ""};
    validate(one);
    ds.samples.push_back(std::move(s));
  });
  if (!have_header) throw FormatError(path, 0, "missing schema header");
  return ds;
}

}  // namespace toxspan
