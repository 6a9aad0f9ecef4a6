#include "model/model_io.hpp"

#include "common/binary_io.hpp"
#include "common/errors.hpp"

namespace testrec::model {

namespace {

constexpr std::string_view kMagic{"TRMODEL\0", 8};

template <typename M>
void put_tensor(ByteWriter& w, const M& m) {
  w.u32(static_cast<std::uint32_t>(m.rows()));
  w.u32(static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.size(); ++i) w.f64(m.data()[i]);
}

Matrix get_matrix(ByteReader& r, Eigen::Index rows, Eigen::Index cols, const char* name) {
  const auto stored_rows = static_cast<Eigen::Index>(r.u32());
  const auto stored_cols = static_cast<Eigen::Index>(r.u32());
  if ((rows >= 0 && stored_rows != rows) || stored_cols != cols)
    throw FormatError(std::string("model: tensor '") + name + "' has unexpected shape");
  if (static_cast<std::uint64_t>(stored_rows) * static_cast<std::uint64_t>(stored_cols) >
      r.remaining() / 8)
    throw FormatError(std::string("model: tensor '") + name + "' is truncated");
  Matrix m(stored_rows, stored_cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = r.f64();
  return m;
}

}  // namespace

std::string save_model(const Model& model, std::uint64_t stamp) {
  const auto& c = model.config;
  ByteWriter w;
  w.raw(kMagic);
  w.u32(kModelVersion);
  w.u64(stamp);
  w.u64(model.vocab_hash);
  w.u32(static_cast<std::uint32_t>(c.token_dim));
  w.u32(static_cast<std::uint32_t>(c.path_dim));
  w.u32(static_cast<std::uint32_t>(c.code_dim));
  w.u32(static_cast<std::uint32_t>(c.epochs));
  w.f64(c.dropout_keep);
  w.f64(c.learning_rate);
  w.u64(c.seed);
  w.u8(c.optimizer == Optimizer::Adam ? 1 : 0);
  w.f64(c.holdout_fraction);
  w.f64(c.init_range);
  const auto& p = model.params;
  put_tensor(w, p.value_embeddings);
  put_tensor(w, p.path_embeddings);
  put_tensor(w, p.combine);
  put_tensor(w, p.attention);
  put_tensor(w, p.label_embeddings);
  return w.take();
}

Model load_model_unchecked(std::string_view bytes) {
  ByteReader r(bytes, "model");
  if (r.raw(kMagic.size()) != kMagic) throw FormatError("model: bad magic");
  const std::uint32_t version = r.u32();
  if (version != kModelVersion)
    throw FormatError("model: unsupported version " + std::to_string(version));
  r.u64();  // stamp
  Model m;
  m.vocab_hash = r.u64();
  auto& c = m.config;
  c.token_dim = r.u32();
  c.path_dim = r.u32();
  c.code_dim = r.u32();
  c.epochs = r.u32();
  c.dropout_keep = r.f64();
  c.learning_rate = r.f64();
  c.seed = r.u64();
  const std::uint8_t opt = r.u8();
  if (opt > 1) throw FormatError("model: unknown optimizer tag");
  c.optimizer = opt == 1 ? Optimizer::Adam : Optimizer::Sgd;
  c.holdout_fraction = r.f64();
  c.init_range = r.f64();
  try {
    c.validate();
  } catch (const UsageError& e) {
    throw FormatError(std::string("model: invalid config: ") + e.what());
  }
  const auto t = static_cast<Eigen::Index>(c.token_dim);
  const auto q = static_cast<Eigen::Index>(c.path_dim);
  const auto d = static_cast<Eigen::Index>(c.code_dim);
  auto& p = m.params;
  p.value_embeddings = get_matrix(r, -1, t, "value_embeddings");
  p.path_embeddings = get_matrix(r, -1, q, "path_embeddings");
  p.combine = get_matrix(r, d, 2 * t + q, "combine");
  p.attention = get_matrix(r, d, 1, "attention").col(0);
  p.label_embeddings = get_matrix(r, -1, d, "label_embeddings");
  r.expect_end();
  return m;
}

Model load_model(std::string_view bytes, const vocab::Vocabulary& vocab) {
  Model m = load_model_unchecked(bytes);
  if (m.vocab_hash != vocab.content_hash())
    throw VocabMismatch("model was trained against a different vocabulary");
  if (m.params.value_embeddings.rows() != static_cast<Eigen::Index>(vocab.values().size()) ||
      m.params.path_embeddings.rows() != static_cast<Eigen::Index>(vocab.paths().size()) ||
      m.params.label_embeddings.rows() != static_cast<Eigen::Index>(vocab.labels().size()))
    throw FormatError("model: embedding rows do not match the vocabulary sizes");
  return m;
}

}  // namespace testrec::model
