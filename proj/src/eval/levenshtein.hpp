#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace testrec::eval {

enum class LevMode { Character, Token };

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

// Unit-cost edit distance over two sequences, two-row DP.
std::size_t edit_distance(const std::vector<char32_t>& a,
                          const std::vector<char32_t>& b);
std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Raw character distance over UTF-8 code points (no normalization).
std::size_t levenshtein(std::string_view a, std::string_view b);

// Units the distance is measured in: code points of the normalized text,
// or lexer tokens (whitespace-split when the text does not lex).
std::vector<char32_t> code_points(std::string_view utf8);
std::vector<std::string> source_tokens(std::string_view text);

// Distance between two source snippets after whitespace normalization.
std::size_t source_distance(std::string_view a, std::string_view b, LevMode mode);

// Length of a snippet in the same units as source_distance.
std::size_t source_length(std::string_view text, LevMode mode);

}  // namespace testrec::eval
