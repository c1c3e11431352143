// Copyright 2026 The wikiner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WIKINER_CORE_TRAIN_HPP_
#define WIKINER_CORE_TRAIN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/corpus.hpp"
#include "core/eval.hpp"
#include "core/tagger.hpp"

namespace wikiner {

struct AdamConfig {
  double learning_rate = 5e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam with bias-corrected moments and no weight decay.
class Adam {
 public:
  Adam(const AdamConfig& config, const Gradients& shape);

  void Step(std::span<NamedTensor> params, const Gradients& grads);
  std::size_t steps() const { return step_; }

 private:
  AdamConfig config_;
  std::size_t step_ = 0;
  std::vector<Eigen::MatrixXd> m_;
  std::vector<Eigen::MatrixXd> v_;
};

struct TrainConfig {
  std::size_t batch_size = 32;
  std::size_t epochs = 10;
  AdamConfig adam;
  std::uint64_t seed = 7;
  TrainingStrategy strategy = TrainingStrategy::kSoftmax;
  // Dev selection metric: micro F1 over all classes, or this class's F1.
  std::optional<std::string> select_class;

  void Validate() const;
};

struct EpochLog {
  std::size_t epoch = 0;
  double mean_loss = 0.0;  // mean of the batch losses
  double dev_precision = 0.0;
  double dev_recall = 0.0;
  double dev_f1 = 0.0;

  std::string ToJson() const;
  bool operator==(const EpochLog&) const = default;
};

struct TrainResult {
  TaggerModel best_model;
  std::size_t best_epoch = 0;
  std::vector<EpochLog> log;
};

// Shuffles the training set every epoch (one Rng seeded with config.seed),
// takes an Adam step per batch, scores the dev set after each epoch and
// keeps the model with the highest dev F1 (earliest epoch on ties).
TrainResult Train(std::span<const Sentence> train_set, std::span<const Sentence> dev_set,
                  TaggerModel model, const TrainConfig& config);

}  // namespace wikiner

#endif  // WIKINER_CORE_TRAIN_HPP_
