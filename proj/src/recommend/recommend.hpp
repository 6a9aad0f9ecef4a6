#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "index/embedding_store.hpp"

namespace testrec::recommend {

enum class Approach { Functionality = 1, Structure = 2 };

std::string to_string(Approach a);  // "functionality" / "structure"
Approach parse_approach(std::string_view text);  // accepts 1, 2 or the names

struct RecommendOptions {
  double method_threshold = 0.90;  // approach 1, strict >
  double test_threshold = 0.70;    // approach 2, strict >
  std::size_t k = 5;
  // Pair ids ("<id>") whose method and test are invisible to the query.
  std::set<std::string, std::less<>> exclude_pairs;
};

struct Recommendation {
  std::string test_id;
  std::string test_source;
  std::size_t rank = 0;  // 1-based
  std::optional<std::string> method_id;
  std::optional<double> method_similarity;
  double test_similarity = 0.0;
};

enum class Outcome { Ok, NoCandidates };

struct RecommendResult {
  Approach approach = Approach::Functionality;
  Outcome outcome = Outcome::NoCandidates;
  std::vector<Recommendation> candidates;
  // Approach 1: methods above threshold whose partner test is missing.
  std::size_t skipped_tests = 0;
};

// Pair id of a unit id "<pair>:method" / "<pair>:test".
std::string_view pair_of(std::string_view unit_id);

// Methods with cosine > method_threshold; their partner tests ranked by
// cosine(test, query), ties by ascending test id.
RecommendResult recommend_functionality(const index::EmbeddingStore& store,
                                        const model::Vector& query,
                                        const RecommendOptions& options);

// Tests with cosine(test, query) > test_threshold, descending.
RecommendResult recommend_structure(const index::EmbeddingStore& store,
                                    const model::Vector& query,
                                    const RecommendOptions& options);

RecommendResult recommend(Approach approach, const index::EmbeddingStore& store,
                          const model::Vector& query, const RecommendOptions& options);

// Embeds `query_source` first. Throws ParseReject.
RecommendResult recommend(Approach approach, std::string_view query_source,
                          const index::EmbeddingStore& store, const model::Model& model,
                          const vocab::Vocabulary& vocab,
                          const pathext::PreparationConfig& config,
                          const RecommendOptions& options);

// {query_id, approach, outcome, skipped_tests, candidates:[...]} as a
// compact JSON document.
std::string to_json(std::string_view query_id, const RecommendResult& result);

std::string to_text(std::string_view query_id, const RecommendResult& result);

}  // namespace testrec::recommend
