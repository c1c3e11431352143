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

#ifndef WIKINER_CORE_TAGGER_HPP_
#define WIKINER_CORE_TAGGER_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "core/corpus.hpp"

namespace wikiner {

enum class HeadKind { kSoftmax, kSigmoid };

enum class TrainingStrategy { kSoftmax, kSoftmaxWeighted, kSigmoidWeighted };

std::string_view HeadName(HeadKind head);                     // softmax | sigmoid
HeadKind ParseHead(std::string_view name);
std::string_view StrategyName(TrainingStrategy strategy);     // softmax | softmax-weighted | sigmoid-weighted
TrainingStrategy ParseStrategy(std::string_view name);
HeadKind RequiredHead(TrainingStrategy strategy);

// Token -> index. Index 0 is the unknown token.
class Vocabulary {
 public:
  static constexpr std::size_t kUnknown = 0;
  static constexpr std::string_view kUnknownToken = "<unk>";

  Vocabulary();
  // All token texts of the corpus, in sorted order after <unk>.
  static Vocabulary FromSentences(std::span<const Sentence> sentences);
  static Vocabulary FromTokens(std::vector<std::string> tokens);

  std::size_t Index(std::string_view token) const;
  std::vector<std::size_t> Indices(std::span<const std::string> tokens) const;
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

struct NamedTensor {
  std::string name;
  Eigen::MatrixXd* value;
};

struct ConstNamedTensor {
  std::string name;
  const Eigen::MatrixXd* value;
};

// Per-parameter gradients, shaped like the model's tensors() in order.
struct Gradients {
  std::vector<std::string> names;
  std::vector<Eigen::MatrixXd> tensors;

  void SetZero();
  void Add(const Gradients& other, double scale = 1.0);
  // Throws kNumeric naming the first tensor holding a non-finite value.
  void CheckFinite() const;
};

// What the head needs from a forward pass to backpropagate.
struct EncoderCache {
  std::vector<std::size_t> ids;
  Eigen::MatrixXd input;   // encoder-specific
  Eigen::MatrixXd hidden;  // N x output_dim
};

// Maps token ids to one context vector per token.
class ContextEncoder {
 public:
  virtual ~ContextEncoder() = default;

  virtual std::unique_ptr<ContextEncoder> Clone() const = 0;
  virtual std::string kind() const = 0;
  virtual std::size_t output_dim() const = 0;

  virtual Eigen::MatrixXd Encode(std::span<const std::size_t> ids, EncoderCache* cache) const = 0;
  // Adds d(loss)/d(params) given d(loss)/d(hidden). `grads` follows tensors().
  virtual void Backward(const EncoderCache& cache, const Eigen::MatrixXd& d_hidden,
                        std::span<Eigen::MatrixXd> grads) const = 0;

  virtual std::vector<NamedTensor> tensors() = 0;
  virtual std::vector<ConstNamedTensor> tensors() const = 0;

  // Shape parameters persisted in checkpoints.
  virtual std::vector<std::uint64_t> hyperparameters() const = 0;
};

std::unique_ptr<ContextEncoder> MakeEncoder(std::string_view kind, std::size_t vocab_size,
                                            std::span<const std::uint64_t> hyperparameters);

// Embeds every token, concatenates the embeddings of the window
// [n - radius, n + radius] (unknown-token padding at the edges) and applies
// one tanh layer of width dim.
class WindowEncoder : public ContextEncoder {
 public:
  WindowEncoder(std::size_t vocab_size, std::size_t dim, std::size_t radius);

  std::unique_ptr<ContextEncoder> Clone() const override;
  std::string kind() const override { return "window-tanh"; }
  std::size_t output_dim() const override { return dim_; }

  Eigen::MatrixXd Encode(std::span<const std::size_t> ids, EncoderCache* cache) const override;
  void Backward(const EncoderCache& cache, const Eigen::MatrixXd& d_hidden,
                std::span<Eigen::MatrixXd> grads) const override;
  std::vector<NamedTensor> tensors() override;
  std::vector<ConstNamedTensor> tensors() const override;
  std::vector<std::uint64_t> hyperparameters() const override { return {dim_, radius_}; }

  std::size_t dim() const { return dim_; }
  std::size_t radius() const { return radius_; }

 private:
  std::size_t dim_;
  std::size_t radius_;
  Eigen::MatrixXd embeddings_;  // V x dim
  Eigen::MatrixXd hidden_w_;    // dim x (2 radius + 1) dim
  Eigen::MatrixXd hidden_b_;    // dim x 1
};

struct TaggerOptions {
  HeadKind head = HeadKind::kSoftmax;
  std::size_t dim = 32;
  std::size_t radius = 2;
  std::uint64_t seed = 7;
};

struct ForwardPass {
  EncoderCache encoder;
  Eigen::MatrixXd logits;       // N x M
  Eigen::MatrixXd predictions;  // N x M
};

class TaggerModel {
 public:
  // Parameters drawn uniform(-0.1, 0.1) from Rng(seed) in tensor order,
  // row-major; biases zero.
  TaggerModel(ClassInventory inventory, Vocabulary vocabulary, const TaggerOptions& options);

  TaggerModel(const TaggerModel& other);
  TaggerModel& operator=(const TaggerModel& other);
  TaggerModel(TaggerModel&&) noexcept = default;
  TaggerModel& operator=(TaggerModel&&) noexcept = default;

  // N x M: softmax rows sum to 1, sigmoid entries in (0, 1).
  Eigen::MatrixXd Forward(std::span<const std::string> tokens) const;
  ForwardPass ForwardWithCache(std::span<const std::string> tokens) const;

  // Adds the gradient of loss_part = scale * sum_n (per-token loss terms)
  // given d(loss)/d(logits).
  void Backward(const ForwardPass& pass, const Eigen::MatrixXd& d_logits, Gradients& grads) const;

  std::vector<NamedTensor> tensors();
  std::vector<ConstNamedTensor> tensors() const;
  Gradients ZeroGradients() const;

  const ClassInventory& inventory() const { return inventory_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  HeadKind head() const { return head_; }
  const ContextEncoder& encoder() const { return *encoder_; }
  std::size_t label_count() const { return inventory_.label_count(); }

  void Save(std::ostream& out) const;
  static TaggerModel Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static TaggerModel LoadFile(const std::string& path);

 private:
  TaggerModel() = default;

  ClassInventory inventory_;
  Vocabulary vocabulary_;
  HeadKind head_ = HeadKind::kSoftmax;
  std::unique_ptr<ContextEncoder> encoder_;
  Eigen::MatrixXd output_w_;  // M x dim
  Eigen::MatrixXd output_b_;  // M x 1
};

// Targets y, predictions yhat and weights w, all N x M. Weights carry the
// per-label supervision mask; J2 coarsens it to one weight per token.
struct LossBatch {
  Eigen::MatrixXd targets;
  Eigen::MatrixXd predictions;
  Eigen::MatrixXd weights;

  std::size_t rows() const { return static_cast<std::size_t>(targets.rows()); }
};

inline constexpr double kProbabilityFloor = 1e-12;

// J1 = -(1/N) sum_n sum_i y ln yhat. Weights ignored.
double LossJ1(const LossBatch& batch);
// J2 = -(1/N) sum_n w_n sum_i y ln yhat, w_n = 0 iff the token's mask row
// has a zero. Divides by N, not by sum(w).
double LossJ2(const LossBatch& batch);
// J3 = -(1/N) sum_n sum_i w_ni [y ln yhat + (1 - y) ln(1 - yhat)], yhat
// clamped to [1e-12, 1 - 1e-12].
double LossJ3(const LossBatch& batch);

double Loss(TrainingStrategy strategy, const LossBatch& batch);

// One-hot gold targets plus the mask of every token.
LossBatch MakeLossBatch(const Sentence& sentence, const Eigen::MatrixXd& predictions,
                        const ClassInventory& inv);

void CheckCompatible(TrainingStrategy strategy, HeadKind head);

// Adds the gradient of (sum of this sentence's loss terms) / normalizer to
// `grads` and returns the same partial loss.
double AccumulateGradients(const TaggerModel& model, const Sentence& sentence,
                           TrainingStrategy strategy, double normalizer, Gradients& grads);

// Loss and exact gradient of a batch; N is the batch's total token count.
double BatchLoss(const TaggerModel& model, std::span<const Sentence> batch,
                 TrainingStrategy strategy);
double BatchGradients(const TaggerModel& model, std::span<const Sentence> batch,
                      TrainingStrategy strategy, Gradients& grads);

// Gradient of one sentence's loss (N = sentence length).
Gradients ComputeGradients(const TaggerModel& model, const Sentence& sentence,
                           TrainingStrategy strategy);

// Softmax: argmax per token (lowest index on ties). Sigmoid: the most
// probable label if its probability exceeds 0.5, else O. Both followed by
// BIO2 repair.
std::vector<std::size_t> DecodeLabels(const Eigen::MatrixXd& predictions, HeadKind head);
std::vector<EntitySpan> Decode(const Eigen::MatrixXd& predictions, HeadKind head);

}  // namespace wikiner

#endif  // WIKINER_CORE_TAGGER_HPP_
