#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frontend/corpus.hpp"
#include "frontend/source_unit.hpp"
#include "model/model_io.hpp"
#include "pathext/bag_builder.hpp"

namespace testrec::index {

using frontend::UnitKind;
using model::Vector;

// (u . v) / (|u| |v|). Throws ZeroVector if either norm is 0 and UsageError
// on a dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(const Vector& u, const Vector& v);

struct StoreEntry {
  std::string unit_id;
  UnitKind kind = UnitKind::Method;
  Vector vector;
  std::string partner_id;
  std::string source_text;
};

// Method and test vectors with mutual method <-> test links.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dimension = 0, std::uint64_t model_hash = 0)
      : dimension_(dimension), model_hash_(model_hash) {}

  // Adds a linked pair. Throws UsageError on duplicate ids, wrong kinds or
  // a dimension mismatch.
  void add_pair(StoreEntry method, StoreEntry test);

  const StoreEntry* find(std::string_view unit_id) const;
  const StoreEntry* partner(const StoreEntry& entry) const;

  std::span<const StoreEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t pair_count() const { return entries_.size() / 2; }
  std::size_t dimension() const { return dimension_; }

  // Content hash of the model file the vectors came from.
  std::uint64_t model_hash() const { return model_hash_; }

 private:
  std::size_t dimension_;
  std::uint64_t model_hash_;
  std::vector<StoreEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

struct Hit {
  const StoreEntry* entry = nullptr;
  double similarity = 0.0;
};

// Exact scan; descending similarity, ties by ascending unit_id. `kind`
// empty means every entry.
std::vector<Hit> top_k(const EmbeddingStore& store, const Vector& query,
                       std::optional<UnitKind> kind, std::size_t k);

// Entries with cosine strictly greater than tau, in top_k order.
std::vector<Hit> above_threshold(const EmbeddingStore& store, const Vector& query,
                                 std::optional<UnitKind> kind, double tau);

// Turns one source snippet into its code vector. Throws ParseReject.
model::CodeVector embed_source(std::string_view text, std::string unit_id, UnitKind kind,
                               const model::Model& model, const vocab::Vocabulary& vocab,
                               const pathext::PreparationConfig& config);

struct PairRejection {
  std::string pair_id;
  std::string side;  // "method" or "test"
  std::string reason;
  std::string detail;
};

struct StoreBuild {
  EmbeddingStore store;
  std::vector<PairRejection> rejections;
};

// One method entry and one test entry per pair whose both sides embed;
// pairs with a failing side are dropped and reported.
StoreBuild build_store(std::span<const frontend::CorpusPair> pairs, const model::Model& model,
                       std::uint64_t model_hash, const vocab::Vocabulary& vocab,
                       const pathext::PreparationConfig& config);

// Store file layout (little-endian):
//   magic "TRSTORE\0" | u32 version (=1) | u64 stamp | u64 model hash |
//   u32 dimension | u64 entry count |
//   per entry: str unit_id | u8 kind (0 method, 1 test) | str partner_id |
//              dimension x f64 | str source_text
// where str is u32 byte length + UTF-8 bytes. Entries are stored in
// insertion order (method, test, method, test, ...).
inline constexpr std::uint32_t kStoreVersion = 1;

std::string save_store(const EmbeddingStore& store, std::uint64_t stamp = 0);
EmbeddingStore load_store(std::string_view bytes);

}  // namespace testrec::index
