#include "eval/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "common/errors.hpp"

namespace testrec::eval {

using index::EmbeddingStore;
using index::StoreEntry;
using index::UnitKind;
using recommend::Approach;

PairwiseResult pairwise_stats(const EmbeddingStore& store, double method_threshold) {
  std::vector<const StoreEntry*> methods;
  for (const auto& e : store.entries())
    if (e.kind == UnitKind::Method) methods.push_back(&e);
  if (methods.size() < 2) throw NoPairs("pairwise statistics need at least 2 methods");

  PairwiseResult r;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      const double mm = index::cosine(methods[i]->vector, methods[j]->vector);
      if (!(mm > method_threshold)) continue;
      const StoreEntry* ta = store.partner(*methods[i]);
      const StoreEntry* tb = store.partner(*methods[j]);
      if (ta == nullptr || tb == nullptr) continue;
      const double tt = index::cosine(ta->vector, tb->vector);
      std::string a(recommend::pair_of(methods[i]->unit_id));
      std::string b(recommend::pair_of(methods[j]->unit_id));
      if (b < a) std::swap(a, b);
      r.mm.push_back(mm);
      r.tt.push_back(tt);
      r.radar.push_back({a + "|" + b, mm, tt});
    }
  }
  if (r.mm.empty()) throw NoPairs("no method pair above the similarity threshold");
  r.mm_row = summarize("Ma,Mb", r.mm);
  r.tt_row = summarize("Ta,Tb", r.tt);
  return r;
}

namespace {

template <typename F>
std::vector<double> column(const std::vector<QueryOutcome>& outcomes, F f) {
  std::vector<double> out;
  out.reserve(outcomes.size());
  for (const auto& o : outcomes) out.push_back(f(o));
  return out;
}

}  // namespace

std::vector<double> ApproachEval::query_similarities() const {
  return column(outcomes, [](const QueryOutcome& o) { return o.query_similarity; });
}
std::vector<double> ApproachEval::test_similarities() const {
  return column(outcomes, [](const QueryOutcome& o) { return o.test_similarity; });
}
std::vector<double> ApproachEval::distances() const {
  return column(outcomes, [](const QueryOutcome& o) { return static_cast<double>(o.distance); });
}
std::vector<double> ApproachEval::oracle_lengths() const {
  return column(outcomes,
                [](const QueryOutcome& o) { return static_cast<double>(o.oracle_length); });
}

ApproachEval evaluate_approach(const EmbeddingStore& store, Approach approach,
                               const EvalOptions& options) {
  ApproachEval ev;
  ev.approach = approach;
  for (const auto& method : store.entries()) {
    if (method.kind != UnitKind::Method) continue;
    const StoreEntry* oracle = store.partner(method);
    if (oracle == nullptr) continue;
    ++ev.queries;

    recommend::RecommendOptions opts = options.recommend;
    if (options.leave_one_out) opts.exclude_pairs.emplace(recommend::pair_of(method.unit_id));
    const auto result = recommend::recommend(approach, store, method.vector, opts);
    if (result.outcome == recommend::Outcome::NoCandidates) {
      ++ev.no_candidates;
      continue;
    }
    const auto& top = result.candidates.front();
    const StoreEntry* recommended = store.find(top.test_id);
    if (recommended == nullptr) throw Error(ErrorKind::Internal, "recommended test not in store");

    QueryOutcome o;
    o.method_id = method.unit_id;
    o.oracle_test_id = oracle->unit_id;
    o.recommended_test_id = recommended->unit_id;
    o.query_similarity = top.method_similarity ? *top.method_similarity : top.test_similarity;
    o.test_similarity = index::cosine(oracle->vector, recommended->vector);
    o.distance = source_distance(oracle->source_text, recommended->source_text, options.lev_mode);
    o.oracle_length = source_length(oracle->source_text, options.lev_mode);
    ev.outcomes.push_back(std::move(o));
  }
  return ev;
}

std::vector<FrequencyRow> frequency_rows(const std::vector<std::vector<double>>& populations) {
  std::vector<FrequencyRow> rows;
  for (const auto& [label, threshold] :
       {std::pair<const char*, double>{"lower than 50%", 0.5}, {"lower than 70%", 0.7}}) {
    FrequencyRow row{label, threshold, {}};
    for (const auto& p : populations) {
      if (p.empty())
        row.percentages.emplace_back();
      else
        row.percentages.emplace_back(percent_below(p, threshold));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<double> method_test_similarities(const EmbeddingStore& store) {
  std::vector<double> out;
  for (const auto& e : store.entries()) {
    if (e.kind != UnitKind::Method) continue;
    if (const StoreEntry* t = store.partner(e)) out.push_back(index::cosine(e.vector, t->vector));
  }
  return out;
}

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string export_radar(const std::vector<RadarRow>& rows) {
  std::string out = "pair_id,mm_sim,tt_sim\n";
  for (const auto& r : rows)
    out += r.pair_id + "," + shortest(r.mm_sim) + "," + shortest(r.tt_sim) + "\n";
  return out;
}

std::size_t histogram_bin(double c) {
  const double scaled = std::floor((c + 1.0) * 20.0);
  if (!(scaled > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(scaled), kHistogramBins - 1);
}

std::vector<std::size_t> histogram_counts(const std::vector<double>& cosines) {
  std::vector<std::size_t> counts(kHistogramBins, 0);
  for (double c : cosines) ++counts[histogram_bin(c)];
  return counts;
}

std::string export_histogram(const std::vector<double>& cosines) {
  std::string out = "bin_left,bin_right,count\n";
  if (cosines.empty()) return out;
  const auto counts = histogram_counts(cosines);
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    const double left = -1.0 + 0.05 * static_cast<double>(i);
    out += fixed(left, 2) + "," + fixed(left + 0.05, 2) + "," + std::to_string(counts[i]) + "\n";
  }
  return out;
}

std::string export_histogram(const EmbeddingStore& store) {
  return export_histogram(method_test_similarities(store));
}

EvalReport evaluate(const EmbeddingStore& store, const EvalOptions& options, bool approach1,
                    bool approach2) {
  EvalReport report;
  report.corpus_pairs = store.pair_count();
  report.lev_mode = options.lev_mode;
  report.leave_one_out = options.leave_one_out;
  try {
    report.all_samples = pairwise_stats(store, options.recommend.method_threshold);
    report.method_threshold_pairs = report.all_samples->mm.size();
  } catch (const NoPairs&) {
  }
  if (approach1) report.approach1 = evaluate_approach(store, Approach::Functionality, options);
  if (approach2) report.approach2 = evaluate_approach(store, Approach::Structure, options);
  if (report.approach1 && report.approach2) {
    try {
      report.t_test =
          t_test(report.approach1->test_similarities(), report.approach2->test_similarities());
    } catch (const DegenerateSample& e) {
      report.t_test_note = e.what();
    }
  } else {
    report.t_test_note = "needs both approaches";
  }
  return report;
}

namespace {

std::optional<StatsRow> maybe_stats(const char* name, const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return summarize(name, v);
}

struct Table {
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (width.size() <= i) width.push_back(0);
        width[i] = std::max(width[i], r[i].size());
      }
    std::string out;
    for (const auto& r : rows) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }
};

const char* kStatNames[] = {"Count", "Mean", "Std.", "Max.", "Min."};

std::string stat_cell(const std::optional<StatsRow>& s, int row, int digits) {
  if (!s) return row == 0 ? "0" : "-";
  switch (row) {
    case 0: return std::to_string(s->count);
    case 1: return fixed(s->mean, digits);
    case 2: return fixed(s->std, digits);
    case 3: return fixed(s->max, digits);
    default: return fixed(s->min, digits);
  }
}

struct Columns {
  std::optional<StatsRow> all_mm, all_tt, a1_mm, a1_tt, a2_mt, a2_tt;
  std::optional<StatsRow> a1_lev, a1_len, a2_lev, a2_len;
  std::vector<double> all_tt_v, a1_tt_v, a2_tt_v;
};

Columns columns(const EvalReport& r) {
  Columns c;
  if (r.all_samples) {
    c.all_mm = r.all_samples->mm_row;
    c.all_tt = r.all_samples->tt_row;
    c.all_tt_v = r.all_samples->tt;
  }
  if (r.approach1) {
    c.a1_tt_v = r.approach1->test_similarities();
    c.a1_mm = maybe_stats("Ma,Mb", r.approach1->query_similarities());
    c.a1_tt = maybe_stats("Ta,Tb", c.a1_tt_v);
    c.a1_lev = maybe_stats("Lev.", r.approach1->distances());
    c.a1_len = maybe_stats("Length", r.approach1->oracle_lengths());
  }
  if (r.approach2) {
    c.a2_tt_v = r.approach2->test_similarities();
    c.a2_mt = maybe_stats("Ma,Tb", r.approach2->query_similarities());
    c.a2_tt = maybe_stats("Ta,Tb", c.a2_tt_v);
    c.a2_lev = maybe_stats("Lev.", r.approach2->distances());
    c.a2_len = maybe_stats("Length", r.approach2->oracle_lengths());
  }
  return c;
}

std::string pct(const std::optional<double>& p) { return p ? fixed(*p, 1) + "%" : "-"; }

nlohmann::ordered_json stats_json(const std::optional<StatsRow>& s) {
  if (!s) return {{"count", 0}};
  return {{"count", s->count}, {"mean", s->mean}, {"std", s->std}, {"max", s->max},
          {"min", s->min}};
}

}  // namespace

std::string report_text(const EvalReport& r) {
  const Columns c = columns(r);
  std::ostringstream out;
  out << "corpus pairs: " << r.corpus_pairs << "\n";
  out << "method pairs above threshold: " << r.method_threshold_pairs << "\n";
  out << "leave-one-out: " << (r.leave_one_out ? "on" : "off") << "\n";
  if (r.approach1)
    out << "approach 1 queries: " << r.approach1->queries
        << ", no candidates: " << r.approach1->no_candidates << "\n";
  if (r.approach2)
    out << "approach 2 queries: " << r.approach2->queries
        << ", no candidates: " << r.approach2->no_candidates << "\n";

  out << "\nFrequency of (Ta,Tb) similarity\n";
  Table t2;
  t2.rows.push_back({"Similarity", "All Samples", "Approach 1", "Approach 2"});
  for (const auto& row : frequency_rows({c.all_tt_v, c.a1_tt_v, c.a2_tt_v}))
    t2.rows.push_back({row.label, pct(row.percentages[0]), pct(row.percentages[1]),
                       pct(row.percentages[2])});
  out << t2.render();

  out << "\nSimilarity of (Method, Method), (Method, Test) and (Test, Test) pairs\n";
  Table t3;
  t3.rows.push_back({"", "All Samples", "", "Approach 1", "", "Approach 2", ""});
  t3.rows.push_back({"", "Ma,Mb", "Ta,Tb", "Ma,Mb", "Ta,Tb", "Ma,Tb", "Ta,Tb"});
  for (int i = 0; i < 5; ++i)
    t3.rows.push_back({kStatNames[i], stat_cell(c.all_mm, i, 4), stat_cell(c.all_tt, i, 4),
                       stat_cell(c.a1_mm, i, 4), stat_cell(c.a1_tt, i, 4),
                       stat_cell(c.a2_mt, i, 4), stat_cell(c.a2_tt, i, 4)});
  out << t3.render();

  out << "\nLevenshtein distance from oracle to recommended test ("
      << (r.lev_mode == LevMode::Token ? "tokens" : "characters") << ")\n";
  Table t4;
  t4.rows.push_back({"", "Approach 1", "", "Approach 2", ""});
  t4.rows.push_back({"", "Lev.", "Length", "Lev.", "Length"});
  for (int i = 0; i < 5; ++i)
    t4.rows.push_back({kStatNames[i], stat_cell(c.a1_lev, i, 2), stat_cell(c.a1_len, i, 2),
                       stat_cell(c.a2_lev, i, 2), stat_cell(c.a2_len, i, 2)});
  out << t4.render();

  out << "\nWelch t-test, approach 1 vs approach 2 (Ta,Tb): ";
  if (r.t_test)
    out << "t = " << fixed(r.t_test->t, 4) << ", df = " << fixed(r.t_test->df, 2)
        << ", p = " << fixed(r.t_test->p, 6) << ", "
        << (r.t_test->significant ? "significant" : "not significant") << " at 0.05\n";
  else
    out << "not computed (" << r.t_test_note << ")\n";
  return out.str();
}

std::string report_json(const EvalReport& r) {
  const Columns c = columns(r);
  nlohmann::ordered_json doc;
  doc["corpus_pairs"] = r.corpus_pairs;
  doc["method_threshold_pairs"] = r.method_threshold_pairs;
  doc["leave_one_out"] = r.leave_one_out;
  doc["lev_mode"] = r.lev_mode == LevMode::Token ? "token" : "character";

  auto& freq = doc["frequency"] = nlohmann::ordered_json::array();
  for (const auto& row : frequency_rows({c.all_tt_v, c.a1_tt_v, c.a2_tt_v})) {
    nlohmann::ordered_json j;
    j["label"] = row.label;
    const char* names[] = {"all_samples", "approach1", "approach2"};
    for (std::size_t i = 0; i < 3; ++i)
      j[names[i]] = row.percentages[i] ? nlohmann::ordered_json(*row.percentages[i])
                                       : nlohmann::ordered_json(nullptr);
    freq.push_back(std::move(j));
  }
  auto& sim = doc["similarity"];
  sim["all_samples"] = {{"Ma,Mb", stats_json(c.all_mm)}, {"Ta,Tb", stats_json(c.all_tt)}};
  sim["approach1"] = {{"Ma,Mb", stats_json(c.a1_mm)}, {"Ta,Tb", stats_json(c.a1_tt)}};
  sim["approach2"] = {{"Ma,Tb", stats_json(c.a2_mt)}, {"Ta,Tb", stats_json(c.a2_tt)}};
  auto& lev = doc["levenshtein"];
  lev["approach1"] = {{"Lev.", stats_json(c.a1_lev)}, {"Length", stats_json(c.a1_len)}};
  lev["approach2"] = {{"Lev.", stats_json(c.a2_lev)}, {"Length", stats_json(c.a2_len)}};
  for (const auto* ev : {r.approach1 ? &*r.approach1 : nullptr,
                         r.approach2 ? &*r.approach2 : nullptr}) {
    if (ev == nullptr) continue;
    auto& a = doc[ev->approach == Approach::Functionality ? "approach1" : "approach2"];
    a["queries"] = ev->queries;
    a["no_candidates"] = ev->no_candidates;
    auto& list = a["outcomes"] = nlohmann::ordered_json::array();
    for (const auto& o : ev->outcomes)
      list.push_back({{"method_id", o.method_id},
                      {"oracle_test_id", o.oracle_test_id},
                      {"recommended_test_id", o.recommended_test_id},
                      {"query_similarity", o.query_similarity},
                      {"test_similarity", o.test_similarity},
                      {"distance", o.distance},
                      {"oracle_length", o.oracle_length}});
  }
  if (r.t_test)
    doc["t_test"] = {{"t", r.t_test->t},
                     {"df", r.t_test->df},
                     {"p", r.t_test->p},
                     {"significant", r.t_test->significant}};
  else
    doc["t_test"] = {{"note", r.t_test_note}};
  return doc.dump(2);
}

}  // namespace testrec::eval
