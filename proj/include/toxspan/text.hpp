// Unicode helpers. All offsets in this library count Unicode scalar values,
// so texts are decoded from UTF-8 into std::u32string before any offset
// arithmetic happens.

#ifndef TOXSPAN_TEXT_HPP_
#define TOXSPAN_TEXT_HPP_

#include <string>
#include <string_view>

namespace toxspan {

// Throws std::invalid_argument on malformed UTF-8.
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view text);

// Number of scalar values in a UTF-8 string.
std::size_t char_length(std::string_view utf8);

// Simple one-to-one lowercase mapping (ASCII, Latin-1, Latin Extended-A,
// Greek and Cyrillic). Never changes the length, so offsets survive folding.
char32_t fold_char(char32_t c);
std::u32string fold_case(std::u32string_view text);
std::string fold_case_utf8(std::string_view utf8);

// Word characters for the default tokenizer: letters and digits, plus the
// ASCII apostrophe and U+2019. Non-ASCII code points count as letters unless
// they fall in a punctuation, symbol, space or emoji block.
bool is_word_char(char32_t c);

}  // namespace toxspan

#endif  // TOXSPAN_TEXT_HPP_
