#include "frontend/corpus.hpp"

#include <set>

#include <json.hpp>

namespace testrec::frontend {

std::variant<CorpusPair, CorpusLineError> parse_corpus_line(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    return CorpusLineError{"malformed-json", e.what()};
  }
  if (!j.is_object()) return CorpusLineError{"malformed-json", "line is not a JSON object"};
  CorpusPair pair;
  for (auto [field, target] : {std::pair{"id", &pair.id},
                               std::pair{"focal_method", &pair.focal_method},
                               std::pair{"test_case", &pair.test_case}}) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string())
      return CorpusLineError{"missing-field", std::string("string field '") + field + "'"};
    *target = it->get<std::string>();
  }
  if (pair.id.empty()) return CorpusLineError{"missing-field", "empty id"};
  if (pair.focal_method.empty() || pair.test_case.empty())
    return CorpusLineError{"empty-text", "focal_method and test_case must be non-empty"};
  return pair;
}

std::string to_jsonl(const CorpusPair& pair) {
  nlohmann::ordered_json j;
  j["id"] = pair.id;
  j["focal_method"] = pair.focal_method;
  j["test_case"] = pair.test_case;
  return j.dump();
}

CorpusReadResult read_corpus(std::istream& in) {
  CorpusReadResult out;
  std::set<std::string> seen;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto parsed = parse_corpus_line(line);
    if (auto* err = std::get_if<CorpusLineError>(&parsed)) {
      out.rejections.push_back({number, "", err->reason, err->detail});
      continue;
    }
    auto& pair = std::get<CorpusPair>(parsed);
    if (!seen.insert(pair.id).second) {
      out.rejections.push_back({number, pair.id, "duplicate-id", "id already used earlier"});
      continue;
    }
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

}  // namespace testrec::frontend
