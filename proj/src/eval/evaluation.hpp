#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eval/levenshtein.hpp"
#include "eval/stats.hpp"
#include "index/embedding_store.hpp"
#include "recommend/recommend.hpp"

namespace testrec::eval {

struct RadarRow {
  std::string pair_id;  // "<pair a>|<pair b>", a < b
  double mm_sim = 0.0;
  double tt_sim = 0.0;
};

struct PairwiseResult {
  std::vector<double> mm;  // method-method cosines above the threshold
  std::vector<double> tt;  // cosines of the corresponding test pairs
  std::vector<RadarRow> radar;
  StatsRow mm_row;
  StatsRow tt_row;
};

// Unordered method pairs with cosine > method_threshold, in store order.
// Throws NoPairs when fewer than 2 methods exist or no pair qualifies.
PairwiseResult pairwise_stats(const index::EmbeddingStore& store, double method_threshold = 0.90);

struct QueryOutcome {
  std::string method_id;
  std::string oracle_test_id;
  std::string recommended_test_id;
  double query_similarity = 0.0;  // M-M (approach 1) or M-T (approach 2)
  double test_similarity = 0.0;   // oracle vs recommended test
  std::size_t distance = 0;
  std::size_t oracle_length = 0;
};

struct ApproachEval {
  recommend::Approach approach = recommend::Approach::Functionality;
  std::size_t queries = 0;        // methods tried
  std::size_t no_candidates = 0;  // excluded from the counts
  std::vector<QueryOutcome> outcomes;  // store order

  std::vector<double> query_similarities() const;
  std::vector<double> test_similarities() const;
  std::vector<double> distances() const;
  std::vector<double> oracle_lengths() const;
};

struct EvalOptions {
  recommend::RecommendOptions recommend;
  bool leave_one_out = true;
  LevMode lev_mode = LevMode::Character;
};

// Every method is a query; its own pair is hidden when leave_one_out is on.
// The rank-1 recommendation is compared to the method's oracle test.
ApproachEval evaluate_approach(const index::EmbeddingStore& store, recommend::Approach approach,
                               const EvalOptions& options);

struct FrequencyRow {
  std::string label;  // "lower than 50%"
  double threshold = 0.0;
  std::vector<std::optional<double>> percentages;  // per population; empty population -> none
};

// "lower than 50%" and "lower than 70%" rows over the given populations.
std::vector<FrequencyRow> frequency_rows(const std::vector<std::vector<double>>& populations);

// Cosine between each method and its own test, store order.
std::vector<double> method_test_similarities(const index::EmbeddingStore& store);

// Header plus one line per row; values printed in shortest round-trip form.
std::string export_radar(const std::vector<RadarRow>& rows);

// 40 bins on [-1, 1]; bin i = floor((c + 1) * 20), clamped to 39.
inline constexpr std::size_t kHistogramBins = 40;
std::size_t histogram_bin(double cosine);
std::vector<std::size_t> histogram_counts(const std::vector<double>& cosines);
std::string export_histogram(const std::vector<double>& cosines);
std::string export_histogram(const index::EmbeddingStore& store);

struct EvalReport {
  std::size_t corpus_pairs = 0;     // pairs in the store
  std::size_t method_threshold_pairs = 0;
  std::optional<PairwiseResult> all_samples;
  std::optional<ApproachEval> approach1;
  std::optional<ApproachEval> approach2;
  std::optional<TTestResult> t_test;  // approach 1 vs 2 test similarities
  std::string t_test_note;            // why t_test is absent
  LevMode lev_mode = LevMode::Character;
  bool leave_one_out = true;
};

// Runs the all-samples statistics and the requested approaches.
EvalReport evaluate(const index::EmbeddingStore& store, const EvalOptions& options,
                    bool approach1, bool approach2);

std::string report_text(const EvalReport& report);
std::string report_json(const EvalReport& report);

}  // namespace testrec::eval
