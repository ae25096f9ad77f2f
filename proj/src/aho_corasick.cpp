#include "toxspan/aho_corasick.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace toxspan {

namespace {
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
}

AhoCorasick::AhoCorasick(const std::vector<std::u32string>& patterns) {
  nodes_.emplace_back();
  pattern_lengths_.reserve(patterns.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    const auto& pat = patterns[p];
    pattern_lengths_.push_back(pat.size());
    if (pat.empty()) continue;  // never matches
    std::uint32_t cur = 0;
    for (char32_t c : pat) {
      auto& edges = nodes_[cur].edges;
      auto it = std::find_if(edges.begin(), edges.end(), [c](const Edge& e) { return e.label == c; });
      if (it != edges.end()) {
        cur = it->target;
      } else {
        auto next = static_cast<std::uint32_t>(nodes_.size());
        edges.push_back({c, next});
        nodes_.emplace_back();
        cur = next;
      }
    }
    nodes_[cur].outputs.push_back(static_cast<std::uint32_t>(p));
  }
  for (auto& n : nodes_) {
    std::sort(n.edges.begin(), n.edges.end(),
              [](const Edge& a, const Edge& b) { return a.label < b.label; });
  }

  // Breadth-first failure links.
  std::queue<std::uint32_t> queue;
  for (const auto& e : nodes_[0].edges) {
    nodes_[e.target].fail = 0;
    queue.push(e.target);
  }
  while (!queue.empty()) {
    std::uint32_t u = queue.front();
    queue.pop();
    for (const auto& e : nodes_[u].edges) {
      std::uint32_t v = e.target;
      std::uint32_t f = nodes_[u].fail;
      while (f != 0 && child(f, e.label) == kNone) f = nodes_[f].fail;
      std::uint32_t fc = child(f, e.label);
      nodes_[v].fail = (fc != kNone && fc != v) ? fc : 0;
      std::uint32_t fl = nodes_[v].fail;
      nodes_[v].dict_link = nodes_[fl].outputs.empty() ? nodes_[fl].dict_link : fl;
      queue.push(v);
    }
  }
}

std::uint32_t AhoCorasick::child(std::uint32_t node, char32_t c) const {
  const auto& edges = nodes_[node].edges;
  auto it = std::lower_bound(edges.begin(), edges.end(), c,
                             [](const Edge& e, char32_t x) { return e.label < x; });
  return (it != edges.end() && it->label == c) ? it->target : kNone;
}

std::uint32_t AhoCorasick::step(std::uint32_t node, char32_t c) const {
  while (true) {
    std::uint32_t next = child(node, c);
    if (next != kNone) return next;
    if (node == 0) return 0;
    node = nodes_[node].fail;
  }
}

void AhoCorasick::for_each_match(
    std::u32string_view text,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) const {
  if (nodes_.empty()) return;
  std::uint32_t state = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    state = step(state, text[i]);
    for (std::uint32_t s = state; s != 0; s = nodes_[s].dict_link) {
      for (std::uint32_t p : nodes_[s].outputs) {
        const std::size_t end = i + 1;
        fn(p, end - pattern_lengths_[p], end);
      }
    }
  }
}

}  // namespace toxspan
