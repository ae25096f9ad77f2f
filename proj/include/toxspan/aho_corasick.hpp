// Aho-Corasick automaton over Unicode scalar values. Reports every
// occurrence of every pattern, overlapping ones included, in a single pass.

#ifndef TOXSPAN_AHO_CORASICK_HPP_
#define TOXSPAN_AHO_CORASICK_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace toxspan {

class AhoCorasick {
 public:
  AhoCorasick() = default;
  explicit AhoCorasick(const std::vector<std::u32string>& patterns);

  // fn(pattern_index, start, end) for each occurrence, in order of end offset.
  void for_each_match(std::u32string_view text,
                      const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) const;

  std::size_t pattern_count() const { return pattern_lengths_.size(); }
  std::size_t state_count() const { return nodes_.size(); }

 private:
  struct Edge {
    char32_t label;
    std::uint32_t target;
  };
  struct Node {
    std::vector<Edge> edges;  // sorted by label after build
    std::uint32_t fail = 0;
    std::uint32_t dict_link = 0;  // nearest proper suffix state with output, 0 if none
    std::vector<std::uint32_t> outputs;
  };

  std::uint32_t child(std::uint32_t node, char32_t c) const;  // UINT32_MAX if absent
  std::uint32_t step(std::uint32_t node, char32_t c) const;

  std::vector<Node> nodes_;
  std::vector<std::size_t> pattern_lengths_;
};

}  // namespace toxspan

#endif  // TOXSPAN_AHO_CORASICK_HPP_
