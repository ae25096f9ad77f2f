#include "toxspan/inferred.hpp"

#include <stdexcept>
#include <unordered_map>

#include "toxspan/io.hpp"
#include "toxspan/text.hpp"

namespace toxspan {

using nlohmann::json;

BinaryMap load_binary(const std::string& path) {
  BinaryMap out;
  for_each_jsonl(path, [&](const json& obj, std::size_t line) {
    BinaryPrediction b{obj.at("id").get<std::string>(), obj.at("toxic").get<bool>()};
    if (!out.emplace(b.sample_id, b).second) {
      throw FormatError(path, line, "duplicate id '" + b.sample_id + "'");
    }
  });
  return out;
}

void write_binary(const BinaryMap& binary, const std::string& path) {
  std::string out;
  for (const auto& [id, b] : binary) out += json{{"id", id}, {"toxic", b.toxic}}.dump() + "\n";
  write_text_file(path, out);
}

Predictions gate(const Predictions& spans, const BinaryMap& binary) {
  Predictions out;
  for (const auto& [id, s] : spans) {
    auto it = binary.find(id);
    if (it == binary.end()) throw std::invalid_argument("no binary prediction for id '" + id + "'");
    out.emplace(id, it->second.toxic ? s : SpanSet{});
  }
  return out;
}

BinaryMap lexicon_binary(const Dataset& dataset, const Lexicon& lexicon, MatchMode mode) {
  LexiconMatcher matcher(lexicon, mode);
  BinaryMap out;
  for (const auto& s : dataset.samples) {
    out.emplace(s.id, BinaryPrediction{s.id, !matcher.predict(s.text).empty()});
  }
  return out;
}

BinaryMap gold_binary(const Dataset& dataset) {
  BinaryMap out;
  for (const auto& s : dataset.samples) out.emplace(s.id, BinaryPrediction{s.id, s.toxic});
  return out;
}

Predictions load_span_predictions(const std::string& path, const Dataset* dataset) {
  std::unordered_map<std::string, Offset> lengths;
  if (dataset) {
    for (const auto& s : dataset->samples) lengths[s.id] = static_cast<Offset>(char_length(s.text));
  }
  Predictions out;
  for_each_jsonl(path, [&](const json& obj, std::size_t line) {
    auto id = obj.at("id").get<std::string>();
    std::vector<Range> ranges;
    for (const auto& r : obj.at("spans")) {
      if (!r.is_array() || r.size() != 2) throw std::invalid_argument("span must be [start,end]");
      ranges.push_back({r[0].get<Offset>(), r[1].get<Offset>()});
    }
    SpanSet spans(std::move(ranges));
    if (dataset) {
      auto it = lengths.find(id);
      if (it == lengths.end()) throw FormatError(path, line, "prediction for unknown id '" + id + "'");
      if (spans.max_end() > it->second) {
        throw FormatError(path, line, "id '" + id + "': span end " +
                                          std::to_string(spans.max_end()) +
                                          " exceeds text length " + std::to_string(it->second));
      }
    }
    if (!out.emplace(id, std::move(spans)).second) {
      throw FormatError(path, line, "duplicate id '" + id + "'");
    }
  });
  return out;
}

void write_span_predictions(const Predictions& predictions, const std::string& path) {
  std::string out;
  for (const auto& [id, spans] : predictions) {
    json arr = json::array();
    for (const auto& r : spans.ranges()) arr.push_back({r.start, r.end});
    out += json{{"id", id}, {"spans", arr}}.dump() + "\n";
  }
  write_text_file(path, out);
}

}  // namespace toxspan
