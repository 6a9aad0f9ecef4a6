#include "vocab/vocabulary.hpp"

#include <algorithm>
#include <type_traits>

#include "common/binary_io.hpp"
#include "common/errors.hpp"
#include "common/hash.hpp"

namespace testrec::vocab {

namespace {

constexpr std::string_view kMagic{"TRVOCAB\0", 8};

template <typename Key>
void fill(Table<Key>& table, const std::map<Key, std::uint64_t>& counts,
          std::uint64_t min_count) {
  std::vector<std::pair<Key, std::uint64_t>> items;
  for (const auto& [key, n] : counts)
    if (n >= min_count) items.emplace_back(key, n);
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;  // keys already ascending from the map
  });
  for (auto& [key, n] : items) table.add(std::move(key), n);
}

void put_key(ByteWriter& w, const std::string& k) { w.str(k); }
void put_key(ByteWriter& w, std::uint64_t k) { w.u64(k); }

template <typename Key>
void put_table(ByteWriter& w, const Table<Key>& t) {
  w.u32(static_cast<std::uint32_t>(t.entries()));
  for (std::uint32_t i = kFirstEntry; i < t.size(); ++i) {
    put_key(w, t.key(i));
    w.u64(t.count(i));
  }
}

template <typename Key>
Table<Key> get_table(ByteReader& r) {
  Table<Key> t;
  const std::uint32_t n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    Key key;
    if constexpr (std::is_same_v<Key, std::string>) {
      key = r.str();
    } else {
      key = r.u64();
    }
    const std::uint64_t count = r.u64();
    if (t.lookup(key) != kOov) throw FormatError("vocabulary: duplicate key");
    t.add(std::move(key), count);
  }
  return t;
}

}  // namespace

std::string serialize_tables(const Vocabulary& v) {
  ByteWriter w;
  put_table(w, v.values_);
  put_table(w, v.paths_);
  put_table(w, v.labels_);
  return w.take();
}

std::uint64_t Vocabulary::content_hash() const { return fnv1a64(serialize_tables(*this)); }

Vocabulary build_vocab(std::span<const pathext::ContextBag> bags, std::uint64_t min_count) {
  if (bags.empty()) throw EmptyCorpus("cannot build a vocabulary from zero bags");
  std::map<std::string, std::uint64_t> values;
  std::map<std::uint64_t, std::uint64_t> paths;
  std::map<std::string, std::uint64_t> labels;
  for (const auto& bag : bags) {
    ++labels[bag.label];
    for (const auto& pc : bag.contexts) {
      ++values[pc.source_value];
      ++values[pc.target_value];
      ++paths[pc.path_hash];
    }
  }
  Vocabulary v;
  fill(v.values_, values, min_count);
  fill(v.paths_, paths, min_count);
  fill(v.labels_, labels, min_count);
  return v;
}

std::string save_vocab(const Vocabulary& vocab, std::uint64_t stamp) {
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kVocabVersion);
  w.u64(stamp);
  w.raw(serialize_tables(vocab));
  return w.take();
}

Vocabulary load_vocab(std::string_view bytes) {
  ByteReader r(bytes, "vocabulary");
  if (r.raw(kMagic.size()) != kMagic) throw FormatError("vocabulary: bad magic");
  const std::uint32_t version = r.u32();
  if (version != kVocabVersion)
    throw FormatError("vocabulary: unsupported version " + std::to_string(version));
  r.u64();  // stamp
  Vocabulary v;
  v.values_ = get_table<std::string>(r);
  v.paths_ = get_table<std::uint64_t>(r);
  v.labels_ = get_table<std::string>(r);
  r.expect_end();
  return v;
}

}  // namespace testrec::vocab
