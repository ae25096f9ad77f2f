#include "toxspan/rationale.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "toxspan/io.hpp"
#include "toxspan/text.hpp"

namespace toxspan {

using nlohmann::json;

TokenScores normalize(const TokenScores& scores) {
  TokenScores out = scores;
  double sum = 0.0;
  for (const auto& t : scores.tokens) sum += t.score;
  if (std::abs(sum) <= kDegenerateSum) {
    for (auto& t : out.tokens) t.score = 0.0;
    out.degenerate = !scores.tokens.empty();
    return out;
  }
  for (auto& t : out.tokens) t.score /= sum;
  out.degenerate = false;
  return out;
}

SpanSet threshold_to_spans(const TokenScores& scores, ThresholdConfig cfg) {
  std::vector<Range> ranges;
  for (const auto& t : scores.tokens) {
    if (t.score > cfg.tau) ranges.push_back({t.start, t.end});
  }
  return SpanSet(std::move(ranges));
}

void validate_scores(const TokenScores& scores, const Dataset* dataset) {
  Offset prev_end = 0;
  for (const auto& t : scores.tokens) {
    if (t.start < 0 || t.end <= t.start) {
      throw std::invalid_argument("sample '" + scores.sample_id + "': invalid token range [" +
                                  std::to_string(t.start) + "," + std::to_string(t.end) + ")");
    }
    if (t.start < prev_end) {
      throw std::invalid_argument("sample '" + scores.sample_id +
                                  "': token ranges overlap or are unsorted at " +
                                  std::to_string(t.start));
    }
    if (!std::isfinite(t.score)) {
      throw std::invalid_argument("sample '" + scores.sample_id + "': non-finite score");
    }
    prev_end = t.end;
  }
  if (dataset) {
    const Sample* found = nullptr;
    for (const auto& s : dataset->samples) {
      if (s.id == scores.sample_id) {
        found = &s;
        break;
      }
    }
    if (!found) throw std::invalid_argument("scores for unknown sample '" + scores.sample_id + "'");
    auto len = static_cast<Offset>(char_length(found->text));
    if (prev_end > len) {
      throw std::invalid_argument("sample '" + scores.sample_id + "': token end " +
                                  std::to_string(prev_end) + " exceeds text length " +
                                  std::to_string(len));
    }
  }
}

ScoreMap load_scores(const std::string& path, const Dataset* dataset) {
  std::unordered_map<std::string, Offset> lengths;
  if (dataset) {
    for (const auto& s : dataset->samples) {
      lengths[s.id] = static_cast<Offset>(char_length(s.text));
    }
  }
  ScoreMap out;
  for_each_jsonl(path, [&](const json& obj, std::size_t line) {
    TokenScores ts;
    ts.sample_id = obj.at("id").get<std::string>();
    ts.method_name = obj.value("method", std::string());
    for (const auto& t : obj.at("tokens")) {
      if (!t.is_array() || t.size() != 3) {
        throw std::invalid_argument("token must be [start, end, score]");
      }
      ts.tokens.push_back({t[0].get<Offset>(), t[1].get<Offset>(), t[2].get<double>()});
    }
    validate_scores(ts);
    if (dataset) {
      auto it = lengths.find(ts.sample_id);
      if (it == lengths.end()) {
        throw FormatError(path, line, "scores for unknown sample '" + ts.sample_id + "'");
      }
      if (!ts.tokens.empty() && ts.tokens.back().end > it->second) {
        throw FormatError(path, line,
                          "sample '" + ts.sample_id + "': token end " +
                              std::to_string(ts.tokens.back().end) + " exceeds text length " +
                              std::to_string(it->second));
      }
    }
    if (!out.emplace(ts.sample_id, ts).second) {
      throw FormatError(path, line, "duplicate sample id '" + ts.sample_id + "'");
    }
  });
  return out;
}

void write_scores(const ScoreMap& scores, const std::string& path) {
  std::string out;
  for (const auto& [id, ts] : scores) {
    json tokens = json::array();
    for (const auto& t : ts.tokens) tokens.push_back({t.start, t.end, t.score});
    out += json{{"id", id}, {"method", ts.method_name}, {"tokens", tokens}}.dump() + "\n";
  }
  write_text_file(path, out);
}

}  // namespace toxspan
