#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "model/network.hpp"

namespace testrec::model {

struct TrainingExample {
  EncodedBag bag;
  std::uint32_t label = vocab::kOov;
};

struct TrainReport {
  std::vector<double> epoch_losses;       // mean training loss per epoch
  std::vector<double> holdout_accuracy;   // top-1, per epoch; empty without holdout
  std::size_t train_examples = 0;
  std::size_t holdout_examples = 0;
};

using EpochCallback = std::function<void(std::size_t epoch, double mean_loss)>;

// Encodes bags against the vocabulary; labels come from lookup_label.
std::vector<TrainingExample> encode_examples(std::span<const pathext::ContextBag> bags,
                                             const vocab::Vocabulary& vocab);

// Runs exactly config.epochs passes of per-example updates in a
// seed-determined order. The holdout slice (holdout_fraction of the
// examples, chosen by seed) is only scored, never trained on. Throws
// EmptyCorpus on an empty example set.
ModelParams train(std::span<const TrainingExample> examples, const vocab::Vocabulary& vocab,
                  const ModelConfig& config, TrainReport* report = nullptr,
                  const EpochCallback& on_epoch = {});

ModelParams train(std::span<const pathext::ContextBag> bags, const vocab::Vocabulary& vocab,
                  const ModelConfig& config, TrainReport* report = nullptr,
                  const EpochCallback& on_epoch = {});

double top1_accuracy(const ModelParams& params, std::span<const TrainingExample> examples);

}  // namespace testrec::model
