#include "index/embedding_store.hpp"

#include <algorithm>
#include <cmath>

#include "common/binary_io.hpp"
#include "common/errors.hpp"

namespace testrec::index {

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw UsageError("cosine of vectors with dimensions " + std::to_string(u.size()) +
                     " and " + std::to_string(v.size()));
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw ZeroVector("cosine with a zero vector");
  const double c = dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

double cosine(const Vector& u, const Vector& v) {
  return cosine(std::span<const double>(u.data(), static_cast<std::size_t>(u.size())),
                std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

void EmbeddingStore::add_pair(StoreEntry method, StoreEntry test) {
  if (method.kind != UnitKind::Method || test.kind != UnitKind::Test)
    throw UsageError("add_pair expects a method entry and a test entry");
  if (method.unit_id == test.unit_id) throw UsageError("pair members share an id");
  for (const auto* e : {&method, &test}) {
    if (static_cast<std::size_t>(e->vector.size()) != dimension_)
      throw UsageError("vector of '" + e->unit_id + "' has dimension " +
                       std::to_string(e->vector.size()) + ", store has " +
                       std::to_string(dimension_));
    if (by_id_.count(e->unit_id)) throw UsageError("duplicate unit id '" + e->unit_id + "'");
  }
  method.partner_id = test.unit_id;
  test.partner_id = method.unit_id;
  by_id_.emplace(method.unit_id, entries_.size());
  entries_.push_back(std::move(method));
  by_id_.emplace(test.unit_id, entries_.size());
  entries_.push_back(std::move(test));
}

const StoreEntry* EmbeddingStore::find(std::string_view unit_id) const {
  auto it = by_id_.find(unit_id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

const StoreEntry* EmbeddingStore::partner(const StoreEntry& entry) const {
  return find(entry.partner_id);
}

namespace {

bool ranks_before(const Hit& a, const Hit& b) {
  if (a.similarity != b.similarity) return a.similarity > b.similarity;
  return a.entry->unit_id < b.entry->unit_id;
}

std::vector<Hit> scan(const EmbeddingStore& store, const Vector& query,
                      std::optional<UnitKind> kind) {
  std::vector<Hit> hits;
  for (const auto& e : store.entries()) {
    if (kind && e.kind != *kind) continue;
    hits.push_back({&e, cosine(query, e.vector)});
  }
  return hits;
}

}  // namespace

std::vector<Hit> top_k(const EmbeddingStore& store, const Vector& query,
                       std::optional<UnitKind> kind, std::size_t k) {
  if (k == 0) throw UsageError("top_k requires k >= 1");
  std::vector<Hit> hits = scan(store, query, kind);
  const std::size_t n = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(),
                    ranks_before);
  hits.resize(n);
  return hits;
}

std::vector<Hit> above_threshold(const EmbeddingStore& store, const Vector& query,
                                 std::optional<UnitKind> kind, double tau) {
  if (!(tau >= -1.0 && tau <= 1.0)) throw UsageError("threshold must lie in [-1, 1]");
  std::vector<Hit> hits = scan(store, query, kind);
  std::erase_if(hits, [tau](const Hit& h) { return !(h.similarity > tau); });
  std::sort(hits.begin(), hits.end(), ranks_before);
  return hits;
}

model::CodeVector embed_source(std::string_view text, std::string unit_id, UnitKind kind,
                               const model::Model& model, const vocab::Vocabulary& vocab,
                               const pathext::PreparationConfig& config) {
  const auto bag = pathext::bag_from_source(text, std::move(unit_id), config);
  return model::code_vector(model.params, bag, vocab, kind);
}

StoreBuild build_store(std::span<const frontend::CorpusPair> pairs, const model::Model& model,
                       std::uint64_t model_hash, const vocab::Vocabulary& vocab,
                       const pathext::PreparationConfig& config) {
  StoreBuild out{EmbeddingStore(model.config.code_dim, model_hash), {}};
  for (const auto& pair : pairs) {
    std::optional<model::CodeVector> method;
    std::optional<model::CodeVector> test;
    try {
      method = embed_source(pair.focal_method, pair.method_unit_id(), UnitKind::Method, model,
                            vocab, config);
    } catch (const ParseReject& e) {
      out.rejections.push_back({pair.id, "method", e.reason(), e.what()});
      continue;
    }
    try {
      test = embed_source(pair.test_case, pair.test_unit_id(), UnitKind::Test, model, vocab,
                          config);
    } catch (const ParseReject& e) {
      out.rejections.push_back({pair.id, "test", e.reason(), e.what()});
      continue;
    }
    out.store.add_pair(
        StoreEntry{method->unit_id, UnitKind::Method, std::move(method->values), "",
                   pair.focal_method},
        StoreEntry{test->unit_id, UnitKind::Test, std::move(test->values), "", pair.test_case});
  }
  return out;
}

namespace {
constexpr std::string_view kMagic{"TRSTORE\0", 8};
}

std::string save_store(const EmbeddingStore& store, std::uint64_t stamp) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kStoreVersion);
  w.u64(stamp);
  w.u64(store.model_hash());
  w.u32(static_cast<std::uint32_t>(store.dimension()));
  w.u64(store.size());
  for (const auto& e : store.entries()) {
    w.str(e.unit_id);
    w.u8(e.kind == UnitKind::Method ? 0 : 1);
    w.str(e.partner_id);
    for (Eigen::Index i = 0; i < e.vector.size(); ++i) w.f64(e.vector[i]);
    w.str(e.source_text);
  }
  return w.take();
}

EmbeddingStore load_store(std::string_view bytes) {
  ByteReader r(bytes, "store");
  if (r.raw(kMagic.size()) != kMagic) throw FormatError("store: bad magic");
  const std::uint32_t version = r.u32();
  if (version != kStoreVersion)
    throw FormatError("store: unsupported version " + std::to_string(version));
  r.u64();  // stamp
  const std::uint64_t model_hash = r.u64();
  const std::uint32_t dim = r.u32();
  const std::uint64_t count = r.u64();
  if (count % 2 != 0) throw FormatError("store: odd entry count");
  EmbeddingStore store(dim, model_hash);

  auto read_entry = [&]() {
    StoreEntry e;
    e.unit_id = r.str();
    const std::uint8_t kind = r.u8();
    if (kind > 1) throw FormatError("store: unknown entry kind");
    e.kind = kind == 0 ? UnitKind::Method : UnitKind::Test;
    e.partner_id = r.str();
    if (static_cast<std::uint64_t>(dim) * 8 > r.remaining())
      throw FormatError("store: truncated vector");
    e.vector.resize(dim);
    for (std::uint32_t i = 0; i < dim; ++i) e.vector[i] = r.f64();
    e.source_text = r.str();
    return e;
  };
  for (std::uint64_t i = 0; i < count; i += 2) {
    StoreEntry method = read_entry();
    StoreEntry test = read_entry();
    if (method.partner_id != test.unit_id || test.partner_id != method.unit_id)
      throw FormatError("store: entries '" + method.unit_id + "' and '" + test.unit_id +
                        "' are not mutually linked");
    try {
      store.add_pair(std::move(method), std::move(test));
    } catch (const UsageError& e) {
      throw FormatError(std::string("store: ") + e.what());
    }
  }
  r.expect_end();
  return store;
}

}  // namespace testrec::index
