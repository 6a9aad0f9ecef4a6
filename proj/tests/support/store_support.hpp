#pragma once

#include <cmath>
#include <string>

#include "index/embedding_store.hpp"
#include "test_support.hpp"

namespace testrec::testing {

inline index::StoreEntry entry(std::string id, index::UnitKind kind, model::Vector v,
                               std::string source = {}) {
  return {std::move(id), kind, std::move(v), {}, std::move(source)};
}

inline void add_pair(index::EmbeddingStore& store, const std::string& id, model::Vector m,
                     model::Vector t, std::string method_src = {}, std::string test_src = {}) {
  store.add_pair(entry(id + ":method", index::UnitKind::Method, std::move(m), std::move(method_src)),
                 entry(id + ":test", index::UnitKind::Test, std::move(t), std::move(test_src)));
}

// Unit vector in the plane of e0 and e1 at cosine c to e0.
inline model::Vector at_cosine(double c, std::size_t dim = 2, double e1_sign = 1.0) {
  model::Vector v = model::Vector::Zero(static_cast<Eigen::Index>(dim));
  v[0] = c;
  v[1] = e1_sign * std::sqrt(1.0 - c * c);
  return v;
}

inline model::Vector axis(std::size_t i, std::size_t dim) {
  model::Vector v = model::Vector::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

inline index::EmbeddingStore random_store(Rng& rng, std::size_t pairs, std::size_t dim) {
  index::EmbeddingStore store(dim);
  for (std::size_t i = 0; i < pairs; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "r%04zu", i);
    add_pair(store, id, random_vector(rng, dim), random_vector(rng, dim), "m" + std::to_string(i),
             "t" + std::to_string(i));
  }
  return store;
}

}  // namespace testrec::testing
