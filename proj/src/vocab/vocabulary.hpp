#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathext/path_context.hpp"

namespace testrec::vocab {

inline constexpr std::uint32_t kOov = 0;
inline constexpr std::uint32_t kPad = 1;
inline constexpr std::uint32_t kFirstEntry = 2;

// Dense key -> index table with the two reserved slots.
template <typename Key>
class Table {
 public:
  std::uint32_t lookup(const Key& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? kOov : it->second;
  }

  // Number of rows including OOV and PAD.
  std::size_t size() const { return keys_.size() + kFirstEntry; }
  std::size_t entries() const { return keys_.size(); }

  const Key& key(std::uint32_t index) const { return keys_.at(index - kFirstEntry); }
  std::uint64_t count(std::uint32_t index) const { return counts_.at(index - kFirstEntry); }

  void add(Key key, std::uint64_t count) {
    const auto index = static_cast<std::uint32_t>(keys_.size() + kFirstEntry);
    index_.emplace(key, index);
    keys_.push_back(std::move(key));
    counts_.push_back(count);
  }

  bool operator==(const Table& other) const {
    return keys_ == other.keys_ && counts_ == other.counts_;
  }

 private:
  std::vector<Key> keys_;
  std::vector<std::uint64_t> counts_;
  std::map<Key, std::uint32_t> index_;
};

class Vocabulary {
 public:
  std::uint32_t lookup_value(std::string_view value) const {
    return values_.lookup(std::string(value));
  }
  std::uint32_t lookup_path(std::uint64_t path_hash) const { return paths_.lookup(path_hash); }
  std::uint32_t lookup_label(std::string_view label) const {
    return labels_.lookup(std::string(label));
  }

  const Table<std::string>& values() const { return values_; }
  const Table<std::uint64_t>& paths() const { return paths_; }
  const Table<std::string>& labels() const { return labels_; }

  // FNV-1a of the serialized tables; models record it to refuse loading
  // against a different vocabulary.
  std::uint64_t content_hash() const;

  bool operator==(const Vocabulary&) const = default;

 private:
  friend Vocabulary build_vocab(std::span<const pathext::ContextBag>, std::uint64_t);
  friend Vocabulary load_vocab(std::string_view);
  friend std::string serialize_tables(const Vocabulary&);

  Table<std::string> values_;
  Table<std::uint64_t> paths_;
  Table<std::string> labels_;
};

// Entries with count >= min_count get indices from 2 upward, ordered by
// descending count then ascending key. Throws EmptyCorpus on no bags.
Vocabulary build_vocab(std::span<const pathext::ContextBag> bags, std::uint64_t min_count = 1);

// File layout (little-endian):
//   magic "TRVOCAB\0" | u32 version (=1) | u64 stamp |
//   3 tables (values, paths, labels), each: u32 n | n x (key, u64 count)
//   where string keys are u32 length + bytes and path keys are u64.
// `stamp` is an opaque tag (the run's config hash) not part of the content.
inline constexpr std::uint32_t kVocabVersion = 1;

std::string save_vocab(const Vocabulary& vocab, std::uint64_t stamp = 0);

// Throws FormatError on bad magic, unknown version or truncation.
Vocabulary load_vocab(std::string_view bytes);

}  // namespace testrec::vocab
