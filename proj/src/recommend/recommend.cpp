#include "recommend/recommend.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "common/errors.hpp"

namespace testrec::recommend {

using index::EmbeddingStore;
using index::StoreEntry;
using index::UnitKind;

std::string to_string(Approach a) {
  return a == Approach::Functionality ? "functionality" : "structure";
}

Approach parse_approach(std::string_view text) {
  if (text == "1" || text == "functionality") return Approach::Functionality;
  if (text == "2" || text == "structure") return Approach::Structure;
  throw UsageError("unknown approach '" + std::string(text) +
                   "' (expected 1, 2, functionality or structure)");
}

std::string_view pair_of(std::string_view unit_id) {
  const auto colon = unit_id.rfind(':');
  return colon == std::string_view::npos ? unit_id : unit_id.substr(0, colon);
}

namespace {

void check(const RecommendOptions& o) {
  if (o.k == 0) throw UsageError("k must be >= 1");
  for (double t : {o.method_threshold, o.test_threshold})
    if (!(t >= -1.0 && t <= 1.0)) throw UsageError("thresholds must lie in [-1, 1]");
}

bool excluded(const RecommendOptions& o, const StoreEntry& e) {
  return !o.exclude_pairs.empty() && o.exclude_pairs.count(pair_of(e.unit_id)) > 0;
}

void finish(RecommendResult& r, std::size_t k) {
  std::sort(r.candidates.begin(), r.candidates.end(),
            [](const Recommendation& a, const Recommendation& b) {
              if (a.test_similarity != b.test_similarity)
                return a.test_similarity > b.test_similarity;
              return a.test_id < b.test_id;
            });
  if (r.candidates.size() > k) r.candidates.resize(k);
  for (std::size_t i = 0; i < r.candidates.size(); ++i) r.candidates[i].rank = i + 1;
  r.outcome = r.candidates.empty() ? Outcome::NoCandidates : Outcome::Ok;
}

}  // namespace

RecommendResult recommend_functionality(const EmbeddingStore& store,
                                        const model::Vector& query,
                                        const RecommendOptions& options) {
  check(options);
  RecommendResult r;
  r.approach = Approach::Functionality;
  for (const auto& hit :
       index::above_threshold(store, query, UnitKind::Method, options.method_threshold)) {
    if (excluded(options, *hit.entry)) continue;
    const StoreEntry* test = store.partner(*hit.entry);
    if (test == nullptr) {
      ++r.skipped_tests;
      continue;
    }
    Recommendation rec;
    rec.test_id = test->unit_id;
    rec.test_source = test->source_text;
    rec.method_id = hit.entry->unit_id;
    rec.method_similarity = hit.similarity;
    rec.test_similarity = index::cosine(query, test->vector);
    r.candidates.push_back(std::move(rec));
  }
  finish(r, options.k);
  return r;
}

RecommendResult recommend_structure(const EmbeddingStore& store, const model::Vector& query,
                                    const RecommendOptions& options) {
  check(options);
  RecommendResult r;
  r.approach = Approach::Structure;
  for (const auto& hit :
       index::above_threshold(store, query, UnitKind::Test, options.test_threshold)) {
    if (excluded(options, *hit.entry)) continue;
    Recommendation rec;
    rec.test_id = hit.entry->unit_id;
    rec.test_source = hit.entry->source_text;
    rec.test_similarity = hit.similarity;
    r.candidates.push_back(std::move(rec));
  }
  finish(r, options.k);
  return r;
}

RecommendResult recommend(Approach approach, const EmbeddingStore& store,
                          const model::Vector& query, const RecommendOptions& options) {
  return approach == Approach::Functionality ? recommend_functionality(store, query, options)
                                             : recommend_structure(store, query, options);
}

RecommendResult recommend(Approach approach, std::string_view query_source,
                          const EmbeddingStore& store, const model::Model& model,
                          const vocab::Vocabulary& vocab,
                          const pathext::PreparationConfig& config,
                          const RecommendOptions& options) {
  const auto query =
      index::embed_source(query_source, "query", UnitKind::Method, model, vocab, config);
  return recommend(approach, store, query.values, options);
}

std::string to_json(std::string_view query_id, const RecommendResult& result) {
  nlohmann::ordered_json doc;
  doc["query_id"] = query_id;
  doc["approach"] = to_string(result.approach);
  doc["outcome"] = result.outcome == Outcome::Ok ? "ok" : "no-candidates";
  doc["skipped_tests"] = result.skipped_tests;
  auto& list = doc["candidates"] = nlohmann::ordered_json::array();
  for (const auto& c : result.candidates) {
    nlohmann::ordered_json item;
    item["test_id"] = c.test_id;
    item["rank"] = c.rank;
    if (c.method_id) item["method_id"] = *c.method_id;
    if (c.method_similarity) item["method_similarity"] = *c.method_similarity;
    item["test_similarity"] = c.test_similarity;
    item["source"] = c.test_source;
    list.push_back(std::move(item));
  }
  return doc.dump(2);
}

std::string to_text(std::string_view query_id, const RecommendResult& result) {
  std::ostringstream out;
  out << "query " << query_id << ", approach " << static_cast<int>(result.approach) << " ("
      << to_string(result.approach) << ")\n";
  if (result.outcome == Outcome::NoCandidates) {
    out << "no candidates above threshold\n";
  }
  if (result.skipped_tests > 0)
    out << result.skipped_tests << " matching method(s) had no embedded test\n";
  out.setf(std::ios::fixed);
  out.precision(4);
  for (const auto& c : result.candidates) {
    out << "#" << c.rank << "  " << c.test_id << "  test_sim=" << c.test_similarity;
    if (c.method_similarity) out << "  method=" << *c.method_id << " method_sim=" << *c.method_similarity;
    out << "\n    " << c.test_source << "\n";
  }
  return out.str();
}

}  // namespace testrec::recommend
