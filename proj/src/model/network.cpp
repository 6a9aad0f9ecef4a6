#include "model/network.hpp"

#include <algorithm>
#include <cmath>

#include "common/errors.hpp"

namespace testrec::model {

namespace {

void fill_uniform(Matrix& m, double range, Rng& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-range, range);
}

void fill_uniform(Vector& v, double range, Rng& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.uniform(-range, range);
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data(), a.data() + a.size(), b.data());
}

bool bitwise_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && std::equal(a.data(), a.data() + a.size(), b.data());
}

struct Forward {
  Matrix contexts;  // n x context_dim
  Matrix combined;  // n x code_dim
  Vector weights;   // n
  Vector code;      // code_dim
};

Forward forward(const ModelParams& p, std::span<const EncodedContext> bag) {
  if (bag.empty()) throw EmptyBag("code vector of an empty bag");
  const Eigen::Index t = p.value_embeddings.cols();
  const Eigen::Index q = p.path_embeddings.cols();
  const auto n = static_cast<Eigen::Index>(bag.size());

  Forward f;
  f.contexts.resize(n, 2 * t + q);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& c = bag[static_cast<std::size_t>(i)];
    f.contexts.row(i).segment(0, t) = p.value_embeddings.row(c.source);
    f.contexts.row(i).segment(t, q) = p.path_embeddings.row(c.path);
    f.contexts.row(i).segment(t + q, t) = p.value_embeddings.row(c.target);
  }
  f.combined = (f.contexts * p.combine.transpose()).array().tanh().matrix();

  Vector logits = f.combined * p.attention;
  f.weights = (logits.array() - logits.maxCoeff()).exp().matrix();
  f.weights /= f.weights.sum();
  f.code = f.combined.transpose() * f.weights;
  return f;
}

Vector softmax(const Vector& logits) {
  Vector e = (logits.array() - logits.maxCoeff()).exp().matrix();
  return e / e.sum();
}

double cross_entropy(const Vector& logits, std::uint32_t label) {
  // -log softmax(logits)[label] via log-sum-exp.
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return lse - logits[label];
}

void check_label(const ModelParams& p, std::uint32_t label) {
  if (label >= static_cast<std::uint32_t>(p.label_embeddings.rows()))
    throw UsageError("label index " + std::to_string(label) + " out of range");
}

}  // namespace

ModelParams ModelParams::zeros(const ModelConfig& c, std::size_t values, std::size_t paths,
                               std::size_t labels) {
  const auto ix = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
  ModelParams p;
  p.value_embeddings = Matrix::Zero(ix(values), ix(c.token_dim));
  p.path_embeddings = Matrix::Zero(ix(paths), ix(c.path_dim));
  p.combine = Matrix::Zero(ix(c.code_dim), ix(c.context_dim()));
  p.attention = Vector::Zero(ix(c.code_dim));
  p.label_embeddings = Matrix::Zero(ix(labels), ix(c.code_dim));
  return p;
}

ModelParams ModelParams::zeros_like(const ModelParams& o) {
  ModelParams p;
  p.value_embeddings = Matrix::Zero(o.value_embeddings.rows(), o.value_embeddings.cols());
  p.path_embeddings = Matrix::Zero(o.path_embeddings.rows(), o.path_embeddings.cols());
  p.combine = Matrix::Zero(o.combine.rows(), o.combine.cols());
  p.attention = Vector::Zero(o.attention.size());
  p.label_embeddings = Matrix::Zero(o.label_embeddings.rows(), o.label_embeddings.cols());
  return p;
}

ModelParams ModelParams::initialize(const ModelConfig& c, const vocab::Vocabulary& v,
                                    Rng& rng) {
  c.validate();
  ModelParams p = zeros(c, v.values().size(), v.paths().size(), v.labels().size());
  fill_uniform(p.value_embeddings, c.init_range, rng);
  fill_uniform(p.path_embeddings, c.init_range, rng);
  fill_uniform(p.combine, c.init_range, rng);
  fill_uniform(p.attention, c.init_range, rng);
  fill_uniform(p.label_embeddings, c.init_range, rng);
  return p;
}

std::size_t ModelParams::parameter_count() const {
  return static_cast<std::size_t>(value_embeddings.size() + path_embeddings.size() +
                                  combine.size() + attention.size() +
                                  label_embeddings.size());
}

bool ModelParams::all_finite() const {
  return value_embeddings.allFinite() && path_embeddings.allFinite() &&
         combine.allFinite() && attention.allFinite() && label_embeddings.allFinite();
}

bool ModelParams::same_shape(const ModelParams& o) const {
  const auto same = [](const auto& a, const auto& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
  };
  return same(value_embeddings, o.value_embeddings) &&
         same(path_embeddings, o.path_embeddings) && same(combine, o.combine) &&
         same(attention, o.attention) && same(label_embeddings, o.label_embeddings);
}

bool ModelParams::operator==(const ModelParams& o) const {
  return bitwise_equal(value_embeddings, o.value_embeddings) &&
         bitwise_equal(path_embeddings, o.path_embeddings) &&
         bitwise_equal(combine, o.combine) && bitwise_equal(attention, o.attention) &&
         bitwise_equal(label_embeddings, o.label_embeddings);
}

EncodedBag encode_bag(const pathext::ContextBag& bag, const vocab::Vocabulary& vocab) {
  EncodedBag out;
  out.reserve(bag.contexts.size());
  for (const auto& pc : bag.contexts) {
    out.push_back({vocab.lookup_value(pc.source_value), vocab.lookup_path(pc.path_hash),
                   vocab.lookup_value(pc.target_value)});
  }
  return out;
}

Vector embed_context(const ModelParams& p, const EncodedContext& c) {
  const Eigen::Index t = p.value_embeddings.cols();
  const Eigen::Index q = p.path_embeddings.cols();
  Vector out(2 * t + q);
  out.segment(0, t) = p.value_embeddings.row(c.source).transpose();
  out.segment(t, q) = p.path_embeddings.row(c.path).transpose();
  out.segment(t + q, t) = p.value_embeddings.row(c.target).transpose();
  return out;
}

Vector embed_context(const ModelParams& p, const pathext::PathContext& pc,
                     const vocab::Vocabulary& vocab) {
  return embed_context(p, EncodedContext{vocab.lookup_value(pc.source_value),
                                          vocab.lookup_path(pc.path_hash),
                                          vocab.lookup_value(pc.target_value)});
}

Vector combine_context(const ModelParams& p, const Vector& context) {
  return (p.combine * context).array().tanh().matrix();
}

Vector attention_weights(const ModelParams& p, std::span<const Vector> combined) {
  if (combined.empty()) throw EmptyBag("attention over an empty bag");
  Vector logits(static_cast<Eigen::Index>(combined.size()));
  for (std::size_t i = 0; i < combined.size(); ++i)
    logits[static_cast<Eigen::Index>(i)] = p.attention.dot(combined[i]);
  return softmax(logits);
}

Vector code_vector(const ModelParams& p, std::span<const EncodedContext> bag) {
  return forward(p, bag).code;
}

CodeVector code_vector(const ModelParams& p, const pathext::ContextBag& bag,
                       const vocab::Vocabulary& vocab, frontend::UnitKind kind) {
  const EncodedBag encoded = encode_bag(bag, vocab);
  return CodeVector{code_vector(p, encoded), bag.unit_id, kind};
}

Vector predict_label(const ModelParams& p, const Vector& code) {
  return softmax(p.label_embeddings * code);
}

std::vector<std::size_t> dropout_mask(std::size_t n, double keep, Rng& rng) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.uniform() < keep) kept.push_back(i);
  if (kept.empty() && n > 0) kept.push_back(rng.index(n));
  return kept;
}

namespace {

EncodedBag apply_dropout(std::span<const EncodedContext> bag, double keep, Rng& rng) {
  EncodedBag out;
  for (std::size_t i : dropout_mask(bag.size(), keep, rng)) out.push_back(bag[i]);
  return out;
}

}  // namespace

double loss(const ModelParams& p, std::span<const EncodedContext> bag, std::uint32_t label,
            Rng* dropout, double keep) {
  check_label(p, label);
  if (dropout && keep < 1.0) {
    const EncodedBag kept = apply_dropout(bag, keep, *dropout);
    return cross_entropy(p.label_embeddings * forward(p, kept).code, label);
  }
  return cross_entropy(p.label_embeddings * forward(p, bag).code, label);
}

SparseGradient backward(const ModelParams& p, std::span<const EncodedContext> bag,
                        std::uint32_t label) {
  check_label(p, label);
  const Forward f = forward(p, bag);
  const Eigen::Index t = p.value_embeddings.cols();
  const Eigen::Index q = p.path_embeddings.cols();
  const auto n = static_cast<Eigen::Index>(bag.size());

  SparseGradient g;
  const Vector logits = p.label_embeddings * f.code;
  g.loss = cross_entropy(logits, label);

  // d loss / d logits = softmax - onehot
  Vector dlogits = softmax(logits);
  dlogits[label] -= 1.0;
  g.label_embeddings = dlogits * f.code.transpose();
  const Vector dcode = p.label_embeddings.transpose() * dlogits;

  // code = sum_i w_i h_i
  const Vector dweights = f.combined * dcode;
  const double mean = f.weights.dot(dweights);
  const Vector dscores = (f.weights.array() * (dweights.array() - mean)).matrix();
  g.attention = f.combined.transpose() * dscores;

  Matrix dcombined = f.weights * dcode.transpose();  // n x d
  dcombined.noalias() += dscores * p.attention.transpose();

  const Matrix dpre = (dcombined.array() * (1.0 - f.combined.array().square())).matrix();
  g.combine = dpre.transpose() * f.contexts;
  const Matrix dcontexts = dpre * p.combine;  // n x context_dim

  const auto accumulate = [](std::map<std::uint32_t, Vector>& rows, std::uint32_t row,
                             const auto& delta) {
    auto [it, inserted] = rows.try_emplace(row, delta.transpose());
    if (!inserted) it->second += delta.transpose();
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& c = bag[static_cast<std::size_t>(i)];
    accumulate(g.value_rows, c.source, dcontexts.row(i).segment(0, t));
    accumulate(g.path_rows, c.path, dcontexts.row(i).segment(t, q));
    accumulate(g.value_rows, c.target, dcontexts.row(i).segment(t + q, t));
  }
  return g;
}

ModelParams grad(const ModelParams& p, std::span<const EncodedContext> bag,
                 std::uint32_t label) {
  SparseGradient s = backward(p, bag, label);
  ModelParams g;
  g.value_embeddings = Matrix::Zero(p.value_embeddings.rows(), p.value_embeddings.cols());
  g.path_embeddings = Matrix::Zero(p.path_embeddings.rows(), p.path_embeddings.cols());
  for (const auto& [row, delta] : s.value_rows) g.value_embeddings.row(row) = delta.transpose();
  for (const auto& [row, delta] : s.path_rows) g.path_embeddings.row(row) = delta.transpose();
  g.combine = std::move(s.combine);
  g.attention = std::move(s.attention);
  g.label_embeddings = std::move(s.label_embeddings);
  return g;
}

}  // namespace testrec::model
