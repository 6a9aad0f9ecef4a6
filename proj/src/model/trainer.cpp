#include "model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "common/errors.hpp"

namespace testrec::model {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEpsilon = 1e-8;

// Independent streams derived from the one configured seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kSplitStream = 0x5851f42d4c957f2dULL;
constexpr std::uint64_t kOrderStream = 0x14057b7ef767814fULL;
constexpr std::uint64_t kDropoutStream = 0x2545f4914f6cdd1dULL;

// Adam with dense moments; embedding rows are updated lazily, only when
// they occur in the current example.
class Updater {
 public:
  Updater(const ModelParams& shape, const ModelConfig& config)
      : config_(config),
        m_(ModelParams::zeros_like(shape)),
        v_(ModelParams::zeros_like(shape)) {}

  void apply(ModelParams& p, const SparseGradient& g) {
    ++step_;
    if (config_.optimizer == Optimizer::Sgd) {
      const double lr = config_.learning_rate;
      for (const auto& [row, d] : g.value_rows) p.value_embeddings.row(row) -= lr * d.transpose();
      for (const auto& [row, d] : g.path_rows) p.path_embeddings.row(row) -= lr * d.transpose();
      p.combine -= lr * g.combine;
      p.attention -= lr * g.attention;
      p.label_embeddings -= lr * g.label_embeddings;
      return;
    }
    const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(step_));
    const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(step_));
    const double lr = config_.learning_rate * std::sqrt(c2) / c1;

    const auto adam = [&](auto param, auto m, auto v, const auto& grad) {
      m = kBeta1 * m + (1.0 - kBeta1) * grad;
      v = kBeta2 * v + (1.0 - kBeta2) * grad.cwiseProduct(grad);
      param -= (lr * m.array() / (v.array().sqrt() + kEpsilon)).matrix();
    };
    for (const auto& [row, d] : g.value_rows)
      adam(p.value_embeddings.row(row), m_.value_embeddings.row(row),
           v_.value_embeddings.row(row), d.transpose());
    for (const auto& [row, d] : g.path_rows)
      adam(p.path_embeddings.row(row), m_.path_embeddings.row(row),
           v_.path_embeddings.row(row), d.transpose());
    adam(Eigen::Ref<Matrix>(p.combine), Eigen::Ref<Matrix>(m_.combine),
         Eigen::Ref<Matrix>(v_.combine), g.combine);
    adam(Eigen::Ref<Vector>(p.attention), Eigen::Ref<Vector>(m_.attention),
         Eigen::Ref<Vector>(v_.attention), g.attention);
    adam(Eigen::Ref<Matrix>(p.label_embeddings), Eigen::Ref<Matrix>(m_.label_embeddings),
         Eigen::Ref<Matrix>(v_.label_embeddings), g.label_embeddings);
  }

 private:
  const ModelConfig& config_;
  ModelParams m_;
  ModelParams v_;
  std::uint64_t step_ = 0;
};

}  // namespace

std::vector<TrainingExample> encode_examples(std::span<const pathext::ContextBag> bags,
                                             const vocab::Vocabulary& vocab) {
  std::vector<TrainingExample> out;
  out.reserve(bags.size());
  for (const auto& bag : bags)
    out.push_back({encode_bag(bag, vocab), vocab.lookup_label(bag.label)});
  return out;
}

double top1_accuracy(const ModelParams& params, std::span<const TrainingExample> examples) {
  if (examples.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& ex : examples) {
    Eigen::Index best = 0;
    predict_label(params, code_vector(params, ex.bag)).maxCoeff(&best);
    if (static_cast<std::uint32_t>(best) == ex.label) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(examples.size());
}

ModelParams train(std::span<const TrainingExample> examples, const vocab::Vocabulary& vocab,
                  const ModelConfig& config, TrainReport* report,
                  const EpochCallback& on_epoch) {
  config.validate();
  if (examples.empty()) throw EmptyCorpus("no training examples");

  Rng init_rng(config.seed ^ kInitStream);
  ModelParams params = ModelParams::initialize(config, vocab, init_rng);

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t holdout = static_cast<std::size_t>(
      std::floor(config.holdout_fraction * static_cast<double>(examples.size())));
  holdout = std::min(holdout, examples.size() - 1);
  if (holdout > 0) {
    Rng split_rng(config.seed ^ kSplitStream);
    split_rng.shuffle(std::span<std::size_t>(order));
  }
  std::vector<TrainingExample> held;
  for (std::size_t i = 0; i < holdout; ++i) held.push_back(examples[order[i]]);
  std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(holdout),
                                     order.end());
  std::sort(train_idx.begin(), train_idx.end());

  TrainReport local;
  TrainReport& rep = report ? *report : local;
  rep = TrainReport{};
  rep.train_examples = train_idx.size();
  rep.holdout_examples = held.size();

  Rng order_rng(config.seed ^ kOrderStream);
  Rng dropout_rng(config.seed ^ kDropoutStream);
  Updater updater(params, config);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(train_idx));
    double total = 0.0;
    for (std::size_t idx : train_idx) {
      const auto& ex = examples[idx];
      const SparseGradient g = [&] {
        if (config.dropout_keep >= 1.0) return backward(params, ex.bag, ex.label);
        EncodedBag kept;
        for (std::size_t i : dropout_mask(ex.bag.size(), config.dropout_keep, dropout_rng))
          kept.push_back(ex.bag[i]);
        return backward(params, kept, ex.label);
      }();
      total += g.loss;
      updater.apply(params, g);
    }
    const double mean = total / static_cast<double>(train_idx.size());
    rep.epoch_losses.push_back(mean);
    if (!held.empty()) rep.holdout_accuracy.push_back(top1_accuracy(params, held));
    if (on_epoch) on_epoch(epoch + 1, mean);
  }
  if (!params.all_finite()) throw Error(ErrorKind::Internal, "training diverged (non-finite parameters)");
  return params;
}

ModelParams train(std::span<const pathext::ContextBag> bags, const vocab::Vocabulary& vocab,
                  const ModelConfig& config, TrainReport* report,
                  const EpochCallback& on_epoch) {
  if (bags.empty()) throw EmptyCorpus("no training bags");
  const auto examples = encode_examples(bags, vocab);
  return train(std::span<const TrainingExample>(examples), vocab, config, report, on_epoch);
}

}  // namespace testrec::model
