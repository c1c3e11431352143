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

#include "core/train.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "json.hpp"

namespace wikiner {

Adam::Adam(const AdamConfig& config, const Gradients& shape) : config_(config) {
  for (const auto& t : shape.tensors) {
    m_.push_back(Eigen::MatrixXd::Zero(t.rows(), t.cols()));
    v_.push_back(Eigen::MatrixXd::Zero(t.rows(), t.cols()));
  }
}

void Adam::Step(std::span<NamedTensor> params, const Gradients& grads) {
  ++step_;
  const double t = static_cast<double>(step_);
  const double correction1 = 1.0 - std::pow(config_.beta1, t);
  const double correction2 = 1.0 - std::pow(config_.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Eigen::MatrixXd& g = grads.tensors[i];
    m_[i] = config_.beta1 * m_[i] + (1.0 - config_.beta1) * g;
    v_[i] = config_.beta2 * v_[i] + (1.0 - config_.beta2) * g.cwiseProduct(g);
    const Eigen::ArrayXXd m_hat = m_[i].array() / correction1;
    const Eigen::ArrayXXd v_hat = v_[i].array() / correction2;
    params[i].value->array() -= config_.learning_rate * m_hat / (v_hat.sqrt() + config_.epsilon);
  }
}

void TrainConfig::Validate() const {
  if (batch_size == 0) Fail(ErrorCode::kInvalidArgument, "batch size must be positive");
  if (epochs == 0) Fail(ErrorCode::kInvalidArgument, "epochs must be positive");
  if (!(adam.learning_rate >= 0) || !std::isfinite(adam.learning_rate)) {
    Fail(ErrorCode::kInvalidArgument, "learning rate must be finite and non-negative");
  }
}

std::string EpochLog::ToJson() const {
  return nlohmann::ordered_json{{"epoch", epoch},
                                {"mean_loss", mean_loss},
                                {"dev_precision", dev_precision},
                                {"dev_recall", dev_recall},
                                {"dev_f1", dev_f1}}
      .dump();
}

TrainResult Train(std::span<const Sentence> train_set, std::span<const Sentence> dev_set,
                  TaggerModel model, const TrainConfig& config) {
  config.Validate();
  CheckCompatible(config.strategy, model.head());
  if (train_set.empty()) Fail(ErrorCode::kInvalidArgument, "empty training set");
  if (config.select_class) model.inventory().ClassIndex(*config.select_class);

  Rng rng(config.seed);
  Gradients grads = model.ZeroGradients();
  Adam adam(config.adam, grads);
  std::vector<std::size_t> order(train_set.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  std::optional<TrainResult> result;
  std::vector<EpochLog> log;
  double best_f1 = -1.0;
  std::vector<Sentence> batch;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.Shuffle(order);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      batch.clear();
      for (std::size_t i = begin; i < end; ++i) batch.push_back(train_set[order[i]]);
      grads.SetZero();
      double loss = 0.0;
      try {
        loss = BatchGradients(model, batch, config.strategy, grads);
      } catch (const Error& e) {
        Fail(e.code(), "epoch " + std::to_string(epoch) + " batch " + std::to_string(batches) +
                           ": " + e.what());
      }
      if (!std::isfinite(loss)) {
        Fail(ErrorCode::kNumeric, "non-finite loss at epoch " + std::to_string(epoch) +
                                      " batch " + std::to_string(batches));
      }
      auto params = model.tensors();
      adam.Step(params, grads);
      loss_sum += loss;
      ++batches;
    }

    const EvalReport dev = Evaluate(model, dev_set);
    const SpanCounts& score = config.select_class ? dev.ForClass(*config.select_class) : dev.micro;
    EpochLog entry{epoch, loss_sum / static_cast<double>(batches), score.precision(),
                   score.recall(), score.f1()};
    log.push_back(entry);
    if (entry.dev_f1 > best_f1) {
      best_f1 = entry.dev_f1;
      result.emplace(TrainResult{model, epoch, {}});
    }
  }
  result->log = std::move(log);
  return std::move(*result);
}

}  // namespace wikiner
