#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace testrec::frontend {

// One corpus line: {"id", "focal_method", "test_case"}.
struct CorpusPair {
  std::string id;
  std::string focal_method;
  std::string test_case;

  std::string method_unit_id() const { return id + ":method"; }
  std::string test_unit_id() const { return id + ":test"; }

  bool operator==(const CorpusPair&) const = default;
};

struct CorpusLineError {
  std::string reason;  // malformed-json, missing-field, empty-text
  std::string detail;
};

std::variant<CorpusPair, CorpusLineError> parse_corpus_line(std::string_view line);

std::string to_jsonl(const CorpusPair& pair);

struct CorpusRejection {
  std::size_t line = 0;  // 1-based
  std::string id;
  std::string reason;
  std::string detail;
};

struct CorpusReadResult {
  std::vector<CorpusPair> pairs;
  std::vector<CorpusRejection> rejections;
};

// Reads every non-blank line; malformed lines and repeated ids become
// rejections rather than errors.
CorpusReadResult read_corpus(std::istream& in);

}  // namespace testrec::frontend
