#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "common/errors.hpp"
#include "finite_diff.hpp"
#include "fixture_corpus.hpp"
#include "model/model_io.hpp"
#include "model/trainer.hpp"
#include "vocab/vocabulary.hpp"

namespace testrec::model {
namespace {

using pathext::ContextBag;
using pathext::PathContext;

ModelConfig tiny_config() {
  ModelConfig c;
  c.token_dim = 4;
  c.path_dim = 4;
  c.code_dim = 12;
  return c;
}

// Three labels, three values, two paths.
struct Tiny {
  std::vector<ContextBag> bags{
      {"u1", "f", {{"a", "p1", 1, "b"}, {"b", "p2", 2, "c"}}},
      {"u2", "g", {{"c", "p1", 1, "a"}}},
      {"u3", "h", {{"a", "p2", 2, "a"}, {"c", "p2", 2, "b"}}},
  };
  vocab::Vocabulary vocab = vocab::build_vocab(bags);
  ModelConfig config = tiny_config();
  ModelParams params;

  explicit Tiny(std::uint64_t seed = 1, double init_range = 0.05) {
    config.init_range = init_range;
    Rng rng(seed);
    params = ModelParams::initialize(config, vocab, rng);
  }
  EncodedBag encoded(std::size_t i) const { return encode_bag(bags[i], vocab); }
};

TEST(EmbedContext, Layout) {
  Tiny t;
  const auto& v = t.vocab;
  const Vector c = embed_context(t.params, PathContext{"a", "p1", 1, "b"}, v);
  const auto a = v.lookup_value("a");
  const auto b = v.lookup_value("b");
  const auto p = v.lookup_path(1);
  EXPECT_EQ(c.segment(0, 4), t.params.value_embeddings.row(a).transpose());
  EXPECT_EQ(c.segment(4, 4), t.params.path_embeddings.row(p).transpose());
  EXPECT_EQ(c.segment(8, 4), t.params.value_embeddings.row(b).transpose());

  const Vector same = embed_context(t.params, PathContext{"a", "p1", 1, "a"}, v);
  EXPECT_EQ(same.segment(0, 4), same.segment(8, 4));
  const Vector oov = embed_context(t.params, PathContext{"a", "zz", 999, "a"}, v);
  EXPECT_EQ(oov.segment(4, 4), t.params.path_embeddings.row(vocab::kOov).transpose());
}

TEST(EmbedContext, HandBuiltRows) {
  ModelParams p = ModelParams::zeros(ModelConfig{1, 1, 3}, 4, 3, 3);
  p.value_embeddings(2, 0) = 0.25;
  p.value_embeddings(3, 0) = -1.5;
  p.path_embeddings(2, 0) = 4.0;
  const Vector c = embed_context(p, EncodedContext{2, 2, 3});
  EXPECT_EQ(c, (Vector(3) << 0.25, 4.0, -1.5).finished());
}

TEST(Combine, HandComputation) {
  ModelParams p = ModelParams::zeros(ModelConfig{1, 1, 3}, 2, 2, 2);
  EXPECT_EQ(combine_context(p, Vector::Zero(3)), Vector::Zero(3));
  p.combine << 1, 2, 0,  //
      0, 1, -1,          //
      0.5, 0, 0;
  const Vector c = (Vector(3) << 0.1, -0.2, 0.3).finished();
  const Vector h = combine_context(p, c);
  EXPECT_NEAR(h[0], std::tanh(0.1 - 0.4), 1e-12);
  EXPECT_NEAR(h[1], std::tanh(-0.2 - 0.3), 1e-12);
  EXPECT_NEAR(h[2], std::tanh(0.05), 1e-12);
  p.combine.setConstant(100.0);
  const Vector s = combine_context(p, c);
  EXPECT_TRUE((s.array().abs() <= 1.0).all());
}

TEST(Attention, ClosedForms) {
  ModelParams p = ModelParams::zeros(ModelConfig{1, 1, 3}, 2, 2, 2);
  p.attention << 1.0, 0.0, 0.0;
  const std::vector<Vector> same(4, (Vector(3) << 0.3, 0.1, 0.2).finished());
  const Vector w = attention_weights(p, same);
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_NEAR(w[i], 0.25, 1e-15);
  EXPECT_EQ(attention_weights(p, std::vector<Vector>{same[0]}), Vector::Ones(1));

  const std::vector<Vector> two{(Vector(3) << std::log(2.0), 5, 5).finished(),
                                (Vector(3) << 0, -5, 9).finished()};
  const Vector w2 = attention_weights(p, two);
  EXPECT_NEAR(w2[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(w2[1], 1.0 / 3.0, 1e-15);
}

// Weights sum to 1 for bags up to 10^4 contexts with logits up to +-50.
TEST(Attention, PropertyStableSum) {
  ModelParams p = ModelParams::zeros(ModelConfig{1, 1, 3}, 2, 2, 2);
  p.attention << 50.0, 0.0, 0.0;
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = trial < 10 ? 10000 : 1 + rng.index(300);
    std::vector<Vector> combined(n, Vector::Zero(3));
    for (auto& c : combined) c[0] = rng.uniform(-1.0, 1.0);
    const Vector w = attention_weights(p, combined);
    ASSERT_NEAR(w.sum(), 1.0, 1e-9);
    ASSERT_TRUE(w.allFinite());
  }
}

TEST(CodeVector, SingleAndDuplicatedContexts) {
  Tiny t;
  const EncodedBag one{t.encoded(0)[0]};
  const Vector h = combine_context(t.params, embed_context(t.params, one[0]));
  EXPECT_LT((code_vector(t.params, one) - h).norm(), 1e-15);
  const EncodedBag twice{one[0], one[0]};
  EXPECT_LT((code_vector(t.params, twice) - h).norm(), 1e-15);
  EXPECT_THROW(code_vector(t.params, EncodedBag{}), EmptyBag);
}

TEST(CodeVector, PropertyPermutationInvariant) {
  Tiny t;
  Rng rng(2);
  EncodedBag bag;
  for (int i = 0; i < 30; ++i)
    bag.push_back({static_cast<std::uint32_t>(rng.index(5)), static_cast<std::uint32_t>(rng.index(4)),
                   static_cast<std::uint32_t>(rng.index(5))});
  const Vector base = code_vector(t.params, bag);
  for (int i = 0; i < 1000; ++i) {
    rng.shuffle(std::span<EncodedContext>(bag));
    ASSERT_LT((code_vector(t.params, bag) - base).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PredictLabel, Simplex) {
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    Tiny t(rng.next());
    const Vector code = testing::random_vector(rng, 12);
    const Vector p = predict_label(t.params, code);
    ASSERT_NEAR(p.sum(), 1.0, 1e-9);
    ASSERT_TRUE((p.array() > 0.0).all());
  }
}

TEST(PredictLabel, UniformAndShiftInvariant) {
  Tiny t;
  Rng rng(8);
  const Vector code = testing::random_vector(rng, 12);
  ModelParams same = t.params;
  for (Eigen::Index r = 1; r < same.label_embeddings.rows(); ++r)
    same.label_embeddings.row(r) = same.label_embeddings.row(0);
  const Vector u = predict_label(same, code);
  for (Eigen::Index i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i], 1.0 / static_cast<double>(u.size()), 1e-15);

  // Adding w to every row with w . code = c shifts every logit by c.
  ModelParams shifted = t.params;
  const Vector w = code * (37.0 / code.squaredNorm());
  for (Eigen::Index r = 0; r < shifted.label_embeddings.rows(); ++r)
    shifted.label_embeddings.row(r) += w.transpose();
  Eigen::Index a = 0, b = 0;
  predict_label(t.params, code).maxCoeff(&a);
  predict_label(shifted, code).maxCoeff(&b);
  EXPECT_EQ(a, b);
  EXPECT_LT((predict_label(t.params, code) - predict_label(shifted, code)).norm(), 1e-12);
}

TEST(Loss, ClosedForms) {
  Tiny t;
  const auto bag = t.encoded(0);
  ModelParams zero_head = t.params;
  zero_head.label_embeddings.setZero();
  const double k = static_cast<double>(zero_head.label_embeddings.rows());
  EXPECT_NEAR(loss(zero_head, bag, 2), std::log(k), 1e-12);

  ModelParams perfect = t.params;
  perfect.label_embeddings.setZero();
  const Vector code = code_vector(t.params, bag);
  perfect.label_embeddings.row(2) = 1e4 * code.transpose() / code.squaredNorm();
  EXPECT_NEAR(loss(perfect, bag, 2), 0.0, 1e-12);
  EXPECT_THROW(loss(t.params, bag, 99), UsageError);
}

TEST(Loss, DecreasesAfterOneStep) {
  Tiny t;
  const auto bag = t.encoded(0);
  const auto label = t.vocab.lookup_label("f");
  const double before = loss(t.params, bag, label);
  const ModelParams g = grad(t.params, bag, label);
  ModelParams p = t.params;
  const double lr = 1e-2;
  p.value_embeddings -= lr * g.value_embeddings;
  p.path_embeddings -= lr * g.path_embeddings;
  p.combine -= lr * g.combine;
  p.attention -= lr * g.attention;
  p.label_embeddings -= lr * g.label_embeddings;
  EXPECT_LT(loss(p, bag, label), before);
}

TEST(Grad, FiniteDifferences) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Tiny t(seed, 1.0);
    for (std::size_t b : {0u, 2u}) {
      const auto bag = t.encoded(b);
      ASSERT_EQ(bag.size(), 2u);
      EXPECT_LT(oracle::max_gradient_error(t.params, bag, t.vocab.lookup_label(t.bags[b].label)), 1e-4);
    }
  }
}

TEST(Grad, UntouchedRowsAreExactlyZero) {
  Tiny t;
  const auto bag = t.encoded(1);  // uses only c, a and path 1
  const ModelParams g = grad(t.params, bag, t.vocab.lookup_label("g"));
  const auto b = t.vocab.lookup_value("b");
  const auto p2 = t.vocab.lookup_path(2);
  EXPECT_TRUE((g.value_embeddings.row(b).array() == 0.0).all());
  EXPECT_TRUE((g.value_embeddings.row(vocab::kOov).array() == 0.0).all());
  EXPECT_TRUE((g.path_embeddings.row(p2).array() == 0.0).all());
  EXPECT_GT(g.value_embeddings.row(t.vocab.lookup_value("c")).norm(), 0.0);
}

TEST(Grad, VanishesAtTrainedMinimum) {
  Tiny t;
  ModelConfig c = t.config;
  c.epochs = 4000;
  c.dropout_keep = 1.0;
  c.holdout_fraction = 0.0;
  c.learning_rate = 0.05;
  const std::vector<TrainingExample> one{{t.encoded(0), t.vocab.lookup_label("f")}};
  const ModelParams p = train(one, t.vocab, c);
  const ModelParams g = grad(p, one[0].bag, one[0].label);
  const double norm = std::sqrt(g.value_embeddings.squaredNorm() + g.path_embeddings.squaredNorm() +
                                g.combine.squaredNorm() + g.attention.squaredNorm() +
                                g.label_embeddings.squaredNorm());
  EXPECT_LT(norm, 1e-6);
}

TEST(Train, Deterministic) {
  Tiny t;
  ModelConfig c = t.config;
  c.epochs = 5;
  const ModelParams a = train(t.bags, t.vocab, c);
  const ModelParams b = train(t.bags, t.vocab, c);
  EXPECT_TRUE(a == b);
  c.seed = 43;
  EXPECT_FALSE(a == train(t.bags, t.vocab, c));
}

TEST(Train, DefaultConfigLogsNineEpochs) {
  const auto pairs = testing::fixture_pairs();
  const auto bags = testing::method_bags({pairs.begin(), pairs.begin() + 10});
  const auto vocab = vocab::build_vocab(bags);
  const ModelConfig c;
  EXPECT_EQ(c.epochs, 9u);
  EXPECT_EQ(c.code_dim, 384u);
  EXPECT_EQ(c.dropout_keep, 0.75);
  TrainReport report;
  std::size_t callbacks = 0;
  const ModelParams p =
      train(bags, vocab, c, &report, [&](std::size_t, double) { ++callbacks; });
  EXPECT_EQ(report.epoch_losses.size(), 9u);
  EXPECT_EQ(callbacks, 9u);
  EXPECT_EQ(report.holdout_examples, 1u);
  EXPECT_EQ(p.combine.rows(), 384);
  EXPECT_TRUE(p.all_finite());
}

TEST(Train, EmptyCorpus) {
  Tiny t;
  EXPECT_THROW(train(std::span<const TrainingExample>{}, t.vocab, t.config), EmptyCorpus);
}

TEST(Train, SgdAlsoLearns) {
  Tiny t;
  ModelConfig c = t.config;
  c.optimizer = Optimizer::Sgd;
  c.learning_rate = 0.5;
  c.epochs = 300;
  c.holdout_fraction = 0.0;
  c.dropout_keep = 1.0;
  const auto examples = encode_examples(t.bags, t.vocab);
  EXPECT_EQ(top1_accuracy(train(examples, t.vocab, c), examples), 1.0);
}

TEST(Train, OverfitsFiftyPairFixture) {
  const auto start = std::chrono::steady_clock::now();
  const auto bags = testing::method_bags(testing::fixture_pairs());
  const auto vocab = vocab::build_vocab(bags);
  ModelConfig c;
  c.token_dim = 16;
  c.path_dim = 16;
  c.code_dim = 48;
  c.epochs = 200;
  c.holdout_fraction = 0.0;
  c.learning_rate = 0.01;
  const auto examples = encode_examples(bags, vocab);
  const ModelParams p = train(examples, vocab, c);
  EXPECT_GE(top1_accuracy(p, examples), 0.95);
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::minutes(2));
}

TEST(ModelIo, RoundTripAndMismatch) {
  Tiny t;
  const Model m{t.config, t.params, t.vocab.content_hash()};
  const std::string bytes = save_model(m, 99);
  EXPECT_EQ(load_model(bytes, t.vocab), m);

  const std::vector<ContextBag> other{{"u", "z", {{"q", "p9", 9, "r"}}}};
  EXPECT_THROW(load_model(bytes, vocab::build_vocab(other)), VocabMismatch);

  std::string bumped = bytes;
  bumped[8] = 7;
  EXPECT_THROW(load_model_unchecked(bumped), FormatError);
  EXPECT_THROW(load_model_unchecked(bytes.substr(0, bytes.size() / 2)), FormatError);
  EXPECT_THROW(load_model_unchecked(bytes + "junk"), FormatError);
}

TEST(ModelConfig, Validation) {
  ModelConfig c;
  EXPECT_NO_THROW(c.validate());
  c.code_dim = 100;
  EXPECT_THROW(c.validate(), UsageError);
  c = ModelConfig{};
  c.dropout_keep = 0.0;
  EXPECT_THROW(c.validate(), UsageError);
  EXPECT_THROW(parse_optimizer("rmsprop"), UsageError);
}

}  // namespace
}  // namespace testrec::model
