#include "eval/levenshtein.hpp"

#include <algorithm>
#include <numeric>

#include "common/errors.hpp"
#include "frontend/lexer.hpp"

namespace testrec::eval {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

template <typename T>
std::size_t distance(const std::vector<T>& a, const std::vector<T>& b) {
  const std::vector<T>& s = a.size() < b.size() ? a : b;  // shorter runs along the row
  const std::vector<T>& t = a.size() < b.size() ? b : a;
  std::vector<std::size_t> prev(s.size() + 1);
  std::vector<std::size_t> cur(s.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= t.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= s.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (t[i - 1] == s[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[s.size()];
}

}  // namespace

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending = false;
  for (char c : text) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::size_t edit_distance(const std::vector<char32_t>& a, const std::vector<char32_t>& b) {
  return distance(a, b);
}

std::size_t edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return distance(a, b);
}

std::vector<char32_t> code_points(std::string_view s) {
  // Malformed sequences decode byte by byte rather than failing.
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3
                                 : (b0 >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      out.push_back(b0);
      ++i;
      continue;
    }
    char32_t cp = len == 1 ? b0 : b0 & (0x7F >> len);
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b >> 6) != 0x2) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(b0);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return distance(code_points(a), code_points(b));
}

std::vector<std::string> source_tokens(std::string_view text) {
  std::vector<std::string> out;
  try {
    for (auto& t : frontend::tokenize(text)) out.push_back(std::move(t.lexeme));
    return out;
  } catch (const LexError&) {
    out.clear();
  }
  const std::string norm = normalize_whitespace(text);
  std::size_t start = 0;
  while (start < norm.size()) {
    std::size_t end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    out.emplace_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::size_t source_distance(std::string_view a, std::string_view b, LevMode mode) {
  if (mode == LevMode::Token) return distance(source_tokens(a), source_tokens(b));
  return distance(code_points(normalize_whitespace(a)), code_points(normalize_whitespace(b)));
}

std::size_t source_length(std::string_view text, LevMode mode) {
  if (mode == LevMode::Token) return source_tokens(text).size();
  return code_points(normalize_whitespace(text)).size();
}

}  // namespace testrec::eval
