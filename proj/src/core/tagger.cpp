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

#include "core/tagger.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace wikiner {

static_assert(std::endian::native == std::endian::little,
              "checkpoint IO assumes a little-endian host");

std::string_view HeadName(HeadKind head) {
  return head == HeadKind::kSoftmax ? "softmax" : "sigmoid";
}

HeadKind ParseHead(std::string_view name) {
  if (name == "softmax") return HeadKind::kSoftmax;
  if (name == "sigmoid") return HeadKind::kSigmoid;
  Fail(ErrorCode::kInvalidArgument, "unknown head '" + std::string(name) + "'");
}

std::string_view StrategyName(TrainingStrategy strategy) {
  switch (strategy) {
    case TrainingStrategy::kSoftmax:
      return "softmax";
    case TrainingStrategy::kSoftmaxWeighted:
      return "softmax-weighted";
    case TrainingStrategy::kSigmoidWeighted:
      return "sigmoid-weighted";
  }
  return "softmax";
}

TrainingStrategy ParseStrategy(std::string_view name) {
  if (name == "softmax") return TrainingStrategy::kSoftmax;
  if (name == "softmax-weighted") return TrainingStrategy::kSoftmaxWeighted;
  if (name == "sigmoid-weighted") return TrainingStrategy::kSigmoidWeighted;
  Fail(ErrorCode::kInvalidArgument, "unknown strategy '" + std::string(name) + "'");
}

HeadKind RequiredHead(TrainingStrategy strategy) {
  return strategy == TrainingStrategy::kSigmoidWeighted ? HeadKind::kSigmoid : HeadKind::kSoftmax;
}

void CheckCompatible(TrainingStrategy strategy, HeadKind head) {
  if (RequiredHead(strategy) != head) {
    Fail(ErrorCode::kInvalidArgument, "strategy " + std::string(StrategyName(strategy)) +
                                          " needs a " + std::string(HeadName(RequiredHead(strategy))) +
                                          " head, model has " + std::string(HeadName(head)));
  }
}

// Vocabulary ------------------------------------------------------------------

Vocabulary::Vocabulary() {
  tokens_.emplace_back(kUnknownToken);
  index_.emplace(kUnknownToken, kUnknown);
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens) {
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  Vocabulary v;
  for (auto& t : tokens) {
    if (t == kUnknownToken) continue;
    v.index_.emplace(t, v.tokens_.size());
    v.tokens_.push_back(std::move(t));
  }
  return v;
}

Vocabulary Vocabulary::FromSentences(std::span<const Sentence> sentences) {
  std::vector<std::string> tokens;
  for (const auto& s : sentences) {
    for (const auto& t : s.tokens) tokens.push_back(t.text);
  }
  return FromTokens(std::move(tokens));
}

std::size_t Vocabulary::Index(std::string_view token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnknown : it->second;
}

std::vector<std::size_t> Vocabulary::Indices(std::span<const std::string> tokens) const {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(Index(t));
  return out;
}

// Gradients -------------------------------------------------------------------

void Gradients::SetZero() {
  for (auto& t : tensors) t.setZero();
}

void Gradients::Add(const Gradients& other, double scale) {
  for (std::size_t i = 0; i < tensors.size(); ++i) tensors[i] += scale * other.tensors[i];
}

void Gradients::CheckFinite() const {
  for (std::size_t i = 0; i < tensors.size(); ++i) {
    if (!tensors[i].allFinite()) {
      Fail(ErrorCode::kNumeric, "non-finite gradient in " + names[i]);
    }
  }
}

// WindowEncoder ---------------------------------------------------------------

WindowEncoder::WindowEncoder(std::size_t vocab_size, std::size_t dim, std::size_t radius)
    : dim_(dim), radius_(radius) {
  if (vocab_size == 0 || dim == 0) {
    Fail(ErrorCode::kInvalidArgument, "encoder needs a nonempty vocabulary and dim > 0");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  embeddings_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab_size), d);
  hidden_w_ = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(2 * radius + 1) * d);
  hidden_b_ = Eigen::MatrixXd::Zero(d, 1);
}

std::unique_ptr<ContextEncoder> WindowEncoder::Clone() const {
  return std::make_unique<WindowEncoder>(*this);
}

Eigen::MatrixXd WindowEncoder::Encode(std::span<const std::size_t> ids,
                                      EncoderCache* cache) const {
  const auto n = static_cast<Eigen::Index>(ids.size());
  const auto d = static_cast<Eigen::Index>(dim_);
  const auto r = static_cast<std::ptrdiff_t>(radius_);
  Eigen::MatrixXd input(n, (2 * r + 1) * d);
  for (Eigen::Index t = 0; t < n; ++t) {
    for (std::ptrdiff_t k = -r; k <= r; ++k) {
      const std::ptrdiff_t pos = t + k;
      const std::size_t id = pos < 0 || pos >= n ? Vocabulary::kUnknown
                                                 : ids[static_cast<std::size_t>(pos)];
      input.block(t, (k + r) * d, 1, d) = embeddings_.row(static_cast<Eigen::Index>(id));
    }
  }
  Eigen::MatrixXd pre = input * hidden_w_.transpose();
  pre.rowwise() += hidden_b_.col(0).transpose();
  Eigen::MatrixXd hidden = pre.array().tanh().matrix();
  if (cache) {
    cache->ids.assign(ids.begin(), ids.end());
    cache->input = std::move(input);
    cache->hidden = hidden;
  }
  return hidden;
}

void WindowEncoder::Backward(const EncoderCache& cache, const Eigen::MatrixXd& d_hidden,
                             std::span<Eigen::MatrixXd> grads) const {
  const auto n = static_cast<Eigen::Index>(cache.ids.size());
  const auto d = static_cast<Eigen::Index>(dim_);
  const auto r = static_cast<std::ptrdiff_t>(radius_);
  const Eigen::MatrixXd d_pre =
      (d_hidden.array() * (1.0 - cache.hidden.array().square())).matrix();
  grads[1] += d_pre.transpose() * cache.input;
  grads[2] += d_pre.colwise().sum().transpose();
  const Eigen::MatrixXd d_input = d_pre * hidden_w_;
  for (Eigen::Index t = 0; t < n; ++t) {
    for (std::ptrdiff_t k = -r; k <= r; ++k) {
      const std::ptrdiff_t pos = t + k;
      const std::size_t id = pos < 0 || pos >= n ? Vocabulary::kUnknown
                                                 : cache.ids[static_cast<std::size_t>(pos)];
      grads[0].row(static_cast<Eigen::Index>(id)) += d_input.block(t, (k + r) * d, 1, d);
    }
  }
}

std::vector<NamedTensor> WindowEncoder::tensors() {
  return {{"embeddings", &embeddings_}, {"hidden.weight", &hidden_w_}, {"hidden.bias", &hidden_b_}};
}

std::vector<ConstNamedTensor> WindowEncoder::tensors() const {
  return {{"embeddings", &embeddings_}, {"hidden.weight", &hidden_w_}, {"hidden.bias", &hidden_b_}};
}

std::unique_ptr<ContextEncoder> MakeEncoder(std::string_view kind, std::size_t vocab_size,
                                            std::span<const std::uint64_t> hyperparameters) {
  if (kind == "window-tanh") {
    if (hyperparameters.size() != 2) {
      Fail(ErrorCode::kParse, "window-tanh encoder expects 2 hyperparameters");
    }
    return std::make_unique<WindowEncoder>(vocab_size, hyperparameters[0], hyperparameters[1]);
  }
  Fail(ErrorCode::kParse, "unknown encoder kind '" + std::string(kind) + "'");
}

// TaggerModel -----------------------------------------------------------------

TaggerModel::TaggerModel(ClassInventory inventory, Vocabulary vocabulary,
                         const TaggerOptions& options)
    : inventory_(std::move(inventory)),
      vocabulary_(std::move(vocabulary)),
      head_(options.head),
      encoder_(std::make_unique<WindowEncoder>(vocabulary_.size(), options.dim, options.radius)) {
  const auto m = static_cast<Eigen::Index>(inventory_.label_count());
  const auto d = static_cast<Eigen::Index>(options.dim);
  output_w_ = Eigen::MatrixXd::Zero(m, d);
  output_b_ = Eigen::MatrixXd::Zero(m, 1);

  Rng rng(options.seed);
  for (auto& t : tensors()) {
    if (t.name.ends_with(".bias")) continue;
    Eigen::MatrixXd& value = *t.value;
    for (Eigen::Index i = 0; i < value.rows(); ++i) {
      for (Eigen::Index j = 0; j < value.cols(); ++j) value(i, j) = rng.Uniform(-0.1, 0.1);
    }
  }
}

TaggerModel::TaggerModel(const TaggerModel& other)
    : inventory_(other.inventory_),
      vocabulary_(other.vocabulary_),
      head_(other.head_),
      encoder_(other.encoder_ ? other.encoder_->Clone() : nullptr),
      output_w_(other.output_w_),
      output_b_(other.output_b_) {}

TaggerModel& TaggerModel::operator=(const TaggerModel& other) {
  if (this != &other) {
    TaggerModel copy(other);
    *this = std::move(copy);
  }
  return *this;
}

std::vector<NamedTensor> TaggerModel::tensors() {
  auto out = encoder_->tensors();
  out.push_back({"output.weight", &output_w_});
  out.push_back({"output.bias", &output_b_});
  return out;
}

std::vector<ConstNamedTensor> TaggerModel::tensors() const {
  auto out = static_cast<const ContextEncoder&>(*encoder_).tensors();
  out.push_back({"output.weight", &output_w_});
  out.push_back({"output.bias", &output_b_});
  return out;
}

Gradients TaggerModel::ZeroGradients() const {
  Gradients g;
  for (const auto& t : tensors()) {
    g.names.push_back(t.name);
    g.tensors.push_back(Eigen::MatrixXd::Zero(t.value->rows(), t.value->cols()));
  }
  return g;
}

namespace {

Eigen::MatrixXd Activate(const Eigen::MatrixXd& logits, HeadKind head) {
  if (head == HeadKind::kSigmoid) {
    return (1.0 / (1.0 + (-logits.array()).exp())).matrix();
  }
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index n = 0; n < logits.rows(); ++n) {
    const double max = logits.row(n).maxCoeff();
    const Eigen::RowVectorXd e = (logits.row(n).array() - max).exp().matrix();
    out.row(n) = e / e.sum();
  }
  return out;
}

}  // namespace

ForwardPass TaggerModel::ForwardWithCache(std::span<const std::string> tokens) const {
  ForwardPass pass;
  const auto ids = vocabulary_.Indices(tokens);
  const Eigen::MatrixXd hidden = encoder_->Encode(ids, &pass.encoder);
  pass.logits = hidden * output_w_.transpose();
  pass.logits.rowwise() += output_b_.col(0).transpose();
  pass.predictions = Activate(pass.logits, head_);
  return pass;
}

Eigen::MatrixXd TaggerModel::Forward(std::span<const std::string> tokens) const {
  return ForwardWithCache(tokens).predictions;
}

void TaggerModel::Backward(const ForwardPass& pass, const Eigen::MatrixXd& d_logits,
                           Gradients& grads) const {
  const std::size_t enc = grads.tensors.size() - 2;
  grads.tensors[enc] += d_logits.transpose() * pass.encoder.hidden;
  grads.tensors[enc + 1] += d_logits.colwise().sum().transpose();
  const Eigen::MatrixXd d_hidden = d_logits * output_w_;
  encoder_->Backward(pass.encoder, d_hidden, std::span(grads.tensors).first(enc));
}

// Checkpoints -----------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'W', 'N', 'E', 'R', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kCheckpointVersion = 1;

void PutU64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void PutString(std::ostream& out, std::string_view s) {
  PutU64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint64_t GetU64(std::istream& in) {
  std::uint64_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    Fail(ErrorCode::kParse, "truncated checkpoint");
  }
  return v;
}

std::string GetString(std::istream& in) {
  const std::uint64_t n = GetU64(in);
  if (n > (1ULL << 32)) Fail(ErrorCode::kParse, "corrupt checkpoint string length");
  std::string s(n, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(n))) {
    Fail(ErrorCode::kParse, "truncated checkpoint");
  }
  return s;
}

}  // namespace

void TaggerModel::Save(std::ostream& out) const {
  out.write(kMagic, sizeof kMagic);
  PutU64(out, kCheckpointVersion);
  PutString(out, HeadName(head_));
  PutString(out, inventory_.Serialize());
  PutString(out, encoder_->kind());
  const auto hyper = encoder_->hyperparameters();
  PutU64(out, hyper.size());
  for (auto h : hyper) PutU64(out, h);
  PutU64(out, vocabulary_.size());
  for (const auto& t : vocabulary_.tokens()) PutString(out, t);
  const auto ts = tensors();
  PutU64(out, ts.size());
  for (const auto& t : ts) {
    PutString(out, t.name);
    PutU64(out, static_cast<std::uint64_t>(t.value->rows()));
    PutU64(out, static_cast<std::uint64_t>(t.value->cols()));
    out.write(reinterpret_cast<const char*>(t.value->data()),
              static_cast<std::streamsize>(t.value->size() * sizeof(double)));
  }
}

TaggerModel TaggerModel::Load(std::istream& in) {
  char magic[sizeof kMagic];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    Fail(ErrorCode::kParse, "not a tagger checkpoint");
  }
  if (GetU64(in) != kCheckpointVersion) Fail(ErrorCode::kParse, "unsupported checkpoint version");
  TaggerModel m;
  m.head_ = ParseHead(GetString(in));
  m.inventory_ = ClassInventory::Parse(GetString(in));
  const std::string kind = GetString(in);
  std::vector<std::uint64_t> hyper(GetU64(in));
  for (auto& h : hyper) h = GetU64(in);
  const std::uint64_t vocab_size = GetU64(in);
  std::vector<std::string> tokens;
  for (std::uint64_t i = 0; i < vocab_size; ++i) tokens.push_back(GetString(in));
  if (tokens.empty() || tokens[0] != Vocabulary::kUnknownToken) {
    Fail(ErrorCode::kParse, "checkpoint vocabulary must start with <unk>");
  }
  m.vocabulary_ = Vocabulary::FromTokens(tokens);
  if (m.vocabulary_.tokens() != tokens) Fail(ErrorCode::kParse, "checkpoint vocabulary not sorted");
  m.encoder_ = MakeEncoder(kind, m.vocabulary_.size(), hyper);
  const auto d = static_cast<Eigen::Index>(m.encoder_->output_dim());
  const auto labels = static_cast<Eigen::Index>(m.inventory_.label_count());
  m.output_w_ = Eigen::MatrixXd::Zero(labels, d);
  m.output_b_ = Eigen::MatrixXd::Zero(labels, 1);

  auto ts = m.tensors();
  if (GetU64(in) != ts.size()) Fail(ErrorCode::kParse, "checkpoint tensor count mismatch");
  for (auto& t : ts) {
    if (GetString(in) != t.name) Fail(ErrorCode::kParse, "checkpoint tensor order mismatch");
    const auto rows = static_cast<Eigen::Index>(GetU64(in));
    const auto cols = static_cast<Eigen::Index>(GetU64(in));
    if (rows != t.value->rows() || cols != t.value->cols()) {
      Fail(ErrorCode::kParse, "checkpoint shape mismatch for " + t.name);
    }
    if (!in.read(reinterpret_cast<char*>(t.value->data()),
                 static_cast<std::streamsize>(t.value->size() * sizeof(double)))) {
      Fail(ErrorCode::kParse, "truncated checkpoint");
    }
    if (!t.value->allFinite()) Fail(ErrorCode::kParse, "non-finite parameters in " + t.name);
  }
  return m;
}

void TaggerModel::SaveFile(const std::string& path) const {
  std::ostringstream buffer;
  Save(buffer);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << buffer.str();
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

TaggerModel TaggerModel::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return Load(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

// Losses ----------------------------------------------------------------------

namespace {

void CheckShapes(const LossBatch& b) {
  if (b.predictions.rows() != b.targets.rows() || b.predictions.cols() != b.targets.cols() ||
      b.weights.rows() != b.targets.rows() || b.weights.cols() != b.targets.cols()) {
    Fail(ErrorCode::kInvalidArgument, "loss batch shapes disagree");
  }
}

// -(1/N) sum_n w_n sum_i y ln yhat; `token_weights` null means all ones.
double CategoricalCrossEntropy(const LossBatch& b, const std::vector<double>* token_weights) {
  CheckShapes(b);
  const Eigen::Index n = b.targets.rows();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    const double w = token_weights ? (*token_weights)[static_cast<std::size_t>(r)] : 1.0;
    if (w == 0.0) continue;
    double row = 0.0;
    for (Eigen::Index i = 0; i < b.targets.cols(); ++i) {
      const double y = b.targets(r, i);
      if (y == 0.0) continue;
      const double p = b.predictions(r, i);
      if (!(p > 0.0)) {
        Fail(ErrorCode::kNumeric, "prediction " + std::to_string(p) + " at token " +
                                      std::to_string(r) + " label " + std::to_string(i) +
                                      " is outside the log domain");
      }
      row += y * std::log(p);
    }
    total += w * row;
  }
  return -total / static_cast<double>(n);
}

std::vector<double> CoarsenWeights(const Eigen::MatrixXd& weights) {
  std::vector<double> out(static_cast<std::size_t>(weights.rows()));
  for (Eigen::Index r = 0; r < weights.rows(); ++r) {
    out[static_cast<std::size_t>(r)] = (weights.row(r).array() != 0.0).all() ? 1.0 : 0.0;
  }
  return out;
}

}  // namespace

double LossJ1(const LossBatch& batch) { return CategoricalCrossEntropy(batch, nullptr); }

double LossJ2(const LossBatch& batch) {
  CheckShapes(batch);
  const auto w = CoarsenWeights(batch.weights);
  return CategoricalCrossEntropy(batch, &w);
}

double LossJ3(const LossBatch& batch) {
  CheckShapes(batch);
  const Eigen::Index n = batch.targets.rows();
  if (n == 0) return 0.0;
  double total = 0.0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index i = 0; i < batch.targets.cols(); ++i) {
      const double w = batch.weights(r, i);
      if (w == 0.0) continue;
      const double y = batch.targets(r, i);
      const double p = std::clamp(batch.predictions(r, i), kProbabilityFloor, 1.0 - kProbabilityFloor);
      total += w * (y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }
  }
  return -total / static_cast<double>(n);
}

double Loss(TrainingStrategy strategy, const LossBatch& batch) {
  switch (strategy) {
    case TrainingStrategy::kSoftmax:
      return LossJ1(batch);
    case TrainingStrategy::kSoftmaxWeighted:
      return LossJ2(batch);
    case TrainingStrategy::kSigmoidWeighted:
      return LossJ3(batch);
  }
  return 0.0;
}

LossBatch MakeLossBatch(const Sentence& sentence, const Eigen::MatrixXd& predictions,
                        const ClassInventory& inv) {
  const auto n = static_cast<Eigen::Index>(sentence.tokens.size());
  const auto m = static_cast<Eigen::Index>(inv.label_count());
  LossBatch b;
  b.targets = Eigen::MatrixXd::Zero(n, m);
  b.weights = Eigen::MatrixXd::Zero(n, m);
  b.predictions = predictions;
  for (Eigen::Index t = 0; t < n; ++t) {
    const Token& tok = sentence.tokens[static_cast<std::size_t>(t)];
    b.targets(t, static_cast<Eigen::Index>(tok.gold_label)) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) b.weights(t, i) = tok.supervision[static_cast<std::size_t>(i)];
  }
  return b;
}

// Gradients -------------------------------------------------------------------

double AccumulateGradients(const TaggerModel& model, const Sentence& sentence,
                           TrainingStrategy strategy, double normalizer, Gradients& grads) {
  CheckCompatible(strategy, model.head());
  if (sentence.tokens.empty()) return 0.0;
  const auto texts = sentence.Texts();
  const ForwardPass pass = model.ForwardWithCache(texts);
  const LossBatch batch = MakeLossBatch(sentence, pass.predictions, model.inventory());
  const double n = static_cast<double>(sentence.tokens.size());

  // Softmax + cross-entropy: dJ/dz = w_n (yhat - y). Sigmoid + binary
  // cross-entropy: dJ/dz_i = w_i (yhat_i - y_i). Both scaled by 1/N.
  Eigen::MatrixXd d_logits = pass.predictions - batch.targets;
  if (strategy == TrainingStrategy::kSoftmaxWeighted) {
    const auto w = CoarsenWeights(batch.weights);
    for (Eigen::Index r = 0; r < d_logits.rows(); ++r) d_logits.row(r) *= w[static_cast<std::size_t>(r)];
  } else if (strategy == TrainingStrategy::kSigmoidWeighted) {
    d_logits = (d_logits.array() * batch.weights.array()).matrix();
  }
  d_logits /= normalizer;
  model.Backward(pass, d_logits, grads);
  return Loss(strategy, batch) * n / normalizer;
}

double BatchLoss(const TaggerModel& model, std::span<const Sentence> batch,
                 TrainingStrategy strategy) {
  CheckCompatible(strategy, model.head());
  double tokens = 0;
  for (const auto& s : batch) tokens += static_cast<double>(s.tokens.size());
  if (tokens == 0) return 0.0;
  double loss = 0.0;
  for (const auto& s : batch) {
    if (s.tokens.empty()) continue;
    const LossBatch b = MakeLossBatch(s, model.Forward(s.Texts()), model.inventory());
    loss += Loss(strategy, b) * static_cast<double>(s.tokens.size()) / tokens;
  }
  return loss;
}

double BatchGradients(const TaggerModel& model, std::span<const Sentence> batch,
                      TrainingStrategy strategy, Gradients& grads) {
  double tokens = 0;
  for (const auto& s : batch) tokens += static_cast<double>(s.tokens.size());
  if (tokens == 0) return 0.0;
  double loss = 0.0;
  for (const auto& s : batch) loss += AccumulateGradients(model, s, strategy, tokens, grads);
  grads.CheckFinite();
  return loss;
}

Gradients ComputeGradients(const TaggerModel& model, const Sentence& sentence,
                           TrainingStrategy strategy) {
  Gradients g = model.ZeroGradients();
  AccumulateGradients(model, sentence, strategy, static_cast<double>(sentence.tokens.size()), g);
  g.CheckFinite();
  return g;
}

// Decoding --------------------------------------------------------------------

std::vector<std::size_t> DecodeLabels(const Eigen::MatrixXd& predictions, HeadKind head) {
  std::vector<std::size_t> labels(static_cast<std::size_t>(predictions.rows()),
                                  ClassInventory::kOutside);
  for (Eigen::Index r = 0; r < predictions.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < predictions.cols(); ++i) {
      if (predictions(r, i) > predictions(r, best)) best = i;
    }
    if (head == HeadKind::kSigmoid && !(predictions(r, best) > 0.5)) best = 0;
    labels[static_cast<std::size_t>(r)] = static_cast<std::size_t>(best);
  }
  return RepairBio(labels);
}

std::vector<EntitySpan> Decode(const Eigen::MatrixXd& predictions, HeadKind head) {
  return ExtractSpans(DecodeLabels(predictions, head));
}

}  // namespace wikiner
