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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "core/error.hpp"
#include "core/tagger.hpp"
#include "fd_check.hpp"
#include "test_util.hpp"

using namespace wikiner;
using wikiner::testing::FoodInventory;

namespace {

LossBatch TwoRowBatch() {
  LossBatch b;
  b.targets.resize(2, 3);
  b.targets << 1, 0, 0, 0, 1, 0;
  b.predictions.resize(2, 3);
  b.predictions << 0.7, 0.2, 0.1, 0.1, 0.8, 0.1;
  b.weights = Eigen::MatrixXd::Ones(2, 3);
  return b;
}

// Random one-hot targets, row-normalized positive predictions, 0/1 weights.
LossBatch RandomBatch(Rng& rng, Eigen::Index n, Eigen::Index m, bool sigmoid) {
  LossBatch b;
  b.targets = Eigen::MatrixXd::Zero(n, m);
  b.predictions.resize(n, m);
  b.weights.resize(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    b.targets(r, static_cast<Eigen::Index>(rng.Below(static_cast<std::uint64_t>(m)))) = 1;
    for (Eigen::Index i = 0; i < m; ++i) {
      b.predictions(r, i) = rng.Uniform(0.01, 1.0);
      b.weights(r, i) = rng.Below(3) == 0 ? 0.0 : 1.0;
    }
    if (!sigmoid) b.predictions.row(r) /= b.predictions.row(r).sum();
  }
  return b;
}

Eigen::MatrixXd& Tensor(TaggerModel& model, const std::string& name) {
  for (auto& t : model.tensors()) {
    if (t.name == name) return *t.value;
  }
  FAIL("no tensor " << name);
  throw 0;
}

TaggerModel SmallModel(HeadKind head, const std::vector<Sentence>& corpus) {
  TaggerOptions options;
  options.head = head;
  options.dim = 8;
  return TaggerModel(FoodInventory(), Vocabulary::FromSentences(corpus), options);
}

Sentence Tokens(const std::vector<std::string>& texts) {
  return MakeSentence(texts, {}, FoodInventory());
}

}  // namespace

TEST_CASE("loss scalar examples") {
  const auto b = TwoRowBatch();
  const long double j1 = -(std::log(0.7L) + std::log(0.8L)) / 2;
  CHECK(std::abs(LossJ1(b) - static_cast<double>(j1)) < 1e-12);
  CHECK(std::abs(LossJ1(b) - 0.289910) < 1e-6);

  auto w = b;
  w.weights.row(1).setZero();
  const long double j2 = -std::log(0.7L) / 2;
  CHECK(std::abs(LossJ2(w) - static_cast<double>(j2)) < 1e-12);
  CHECK(std::abs(LossJ2(w) - 0.178337) < 1e-6);
  w.weights.setZero();
  CHECK(LossJ2(w) == 0.0);

  LossBatch s;
  s.targets.resize(1, 2);
  s.targets << 1, 0;
  s.predictions.resize(1, 2);
  s.predictions << 0.9, 0.2;
  s.weights = Eigen::MatrixXd::Ones(1, 2);
  const long double j3 = -(std::log(0.9L) + std::log(0.8L));
  CHECK(std::abs(LossJ3(s) - static_cast<double>(j3)) < 1e-12);
  CHECK(std::abs(LossJ3(s) - 0.328504) < 1e-6);
  s.weights.setZero();
  CHECK(LossJ3(s) == 0.0);

  LossBatch perfect;
  perfect.targets = Eigen::MatrixXd::Zero(1, 3);
  perfect.targets(0, 0) = 1;
  perfect.predictions.resize(1, 3);
  perfect.predictions << 1 - 2e-12, 1e-12, 1e-12;
  perfect.weights = Eigen::MatrixXd::Ones(1, 3);
  CHECK(LossJ1(perfect) < 1e-11);
}

TEST_CASE("loss laws") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Below(12));
    const auto m = static_cast<Eigen::Index>(2 + rng.Below(9));
    auto b = RandomBatch(rng, n, m, false);
    // All-ones weights: J2 reduces to J1 bit for bit.
    b.weights.setOnes();
    CHECK(LossJ2(b) == LossJ1(b));

    b.predictions.setConstant(1.0 / static_cast<double>(m));
    CHECK(std::abs(LossJ1(b) - std::log(static_cast<double>(m))) < 1e-9);
  }
}

TEST_CASE("masked entries do not matter") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.Below(10));
    const auto m = static_cast<Eigen::Index>(3 + rng.Below(6));

    auto b = RandomBatch(rng, n, m, true);
    auto changed = b;
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index i = 0; i < m; ++i) {
        if (b.weights(r, i) != 0.0) continue;
        changed.predictions(r, i) = rng.Uniform(0.0, 1.0);
        changed.targets(r, i) = 1.0 - b.targets(r, i);
      }
    }
    CHECK(std::abs(LossJ3(changed) - LossJ3(b)) < 1e-12);

    auto soft = RandomBatch(rng, n, m, false);
    auto moved = soft;
    for (Eigen::Index r = 0; r < n; ++r) {
      if ((soft.weights.row(r).array() != 0.0).all()) continue;
      moved.predictions.row(r).setConstant(1.0 / static_cast<double>(m));
      moved.targets.row(r).setZero();
      moved.targets(r, 0) = 1;
    }
    CHECK(std::abs(LossJ2(moved) - LossJ2(soft)) < 1e-12);
  }
}

TEST_CASE("negative units push predictions down") {
  LossBatch b;
  b.targets = Eigen::MatrixXd::Zero(1, 5);
  b.targets(0, 0) = 1;
  b.weights = Eigen::MatrixXd::Zero(1, 5);
  b.weights(0, 3) = b.weights(0, 4) = 1;
  b.predictions = Eigen::MatrixXd::Constant(1, 5, 0.5);
  double last = LossJ3(b);
  for (double p : {0.4, 0.3, 0.1, 0.01}) {
    b.predictions(0, 3) = b.predictions(0, 4) = p;
    const double now = LossJ3(b);
    CHECK(now < last);
    last = now;
  }
}

TEST_CASE("loss domain errors") {
  auto b = TwoRowBatch();
  b.predictions(0, 0) = 0.0;
  CHECK_THROWS_AS(LossJ1(b), Error);
  auto clamped = TwoRowBatch();
  clamped.predictions(0, 0) = 0.0;
  CHECK(std::isfinite(LossJ3(clamped)));
  auto bad = TwoRowBatch();
  bad.weights.resize(1, 3);
  CHECK_THROWS_AS(LossJ2(bad), Error);
}

TEST_CASE("forward") {
  const std::vector<Sentence> corpus = {Tokens({"salt", "and", "pepper"})};
  auto model = SmallModel(HeadKind::kSoftmax, corpus);
  const std::vector<std::string> tokens = {"salt", "never", "seen", "pepper"};
  const auto p = model.Forward(tokens);
  REQUIRE(p.rows() == 4);
  REQUIRE(p.cols() == 7);
  for (Eigen::Index r = 0; r < p.rows(); ++r) CHECK(std::abs(p.row(r).sum() - 1.0) < 1e-6);

  const std::vector<std::string> one = {"salt"};
  const std::vector<std::string> two = {"salt", "salt"};
  CHECK((model.Forward(one).row(0) - model.Forward(two).row(0)).norm() > 0);

  Tensor(model, "output.weight").setZero();
  Tensor(model, "output.bias").setZero();
  const auto uniform = model.Forward(tokens);
  CHECK((uniform.array() - 1.0 / 7).abs().maxCoeff() < 1e-15);

  auto sigmoid = SmallModel(HeadKind::kSigmoid, corpus);
  const auto q = sigmoid.Forward(tokens);
  CHECK((q.array() > 0).all());
  CHECK((q.array() < 1).all());
}

TEST_CASE("finite-difference gradients") {
  for (auto strategy : {TrainingStrategy::kSoftmax, TrainingStrategy::kSoftmaxWeighted,
                        TrainingStrategy::kSigmoidWeighted}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CAPTURE(seed);
      auto c = wikiner::testing::MakeFdCase(seed, strategy);
      CHECK(wikiner::testing::MaxRelativeGradientError(c, strategy) < 1e-3);
      auto plain = wikiner::testing::MakeFdCase(seed, strategy, false);
      CHECK(wikiner::testing::MaxRelativeGradientError(plain, strategy) < 1e-3);
    }
  }
}

TEST_CASE("fully masked sentence has zero gradient") {
  const auto inv = FoodInventory();
  Sentence s = Tokens({"salt", "x", "y"});
  for (auto& t : s.tokens) t.supervision = UnknownMask(inv);
  const std::vector<Sentence> corpus = {s};
  const auto model = SmallModel(HeadKind::kSoftmax, corpus);
  const auto g = ComputeGradients(model, s, TrainingStrategy::kSoftmaxWeighted);
  for (const auto& t : g.tensors) CHECK(t.isZero(0));
  const auto sig = SmallModel(HeadKind::kSigmoid, corpus);
  for (const auto& t : ComputeGradients(sig, s, TrainingStrategy::kSigmoidWeighted).tensors) {
    CHECK(t.isZero(0));
  }
}

TEST_CASE("sigmoid gradient follows the active units") {
  const auto inv = FoodInventory();
  Sentence s = Tokens({"salt", "x", "y"});
  for (auto& t : s.tokens) t.supervision = UnknownMask(inv);
  const std::size_t food[] = {2};
  s.tokens[1].supervision = NegativeMask(inv, food);
  const std::vector<Sentence> corpus = {s};
  const auto model = SmallModel(HeadKind::kSigmoid, corpus);
  const auto g = ComputeGradients(model, s, TrainingStrategy::kSigmoidWeighted);
  for (std::size_t k = 0; k < g.names.size(); ++k) {
    const auto& t = g.tensors[k];
    if (g.names[k] == "output.weight" || g.names[k] == "output.bias") {
      for (Eigen::Index r = 0; r < t.rows(); ++r) {
        const bool active = r == 5 || r == 6;
        CHECK(t.row(r).isZero(0) == !active);
      }
    } else {
      CHECK_FALSE(t.isZero(0));
    }
  }
}

TEST_CASE("strategy and head must agree") {
  const Sentence s = Tokens({"a"});
  const std::vector<Sentence> corpus = {s};
  const auto softmax = SmallModel(HeadKind::kSoftmax, corpus);
  CHECK_THROWS_AS(ComputeGradients(softmax, s, TrainingStrategy::kSigmoidWeighted), Error);
  const auto sigmoid = SmallModel(HeadKind::kSigmoid, corpus);
  CHECK_THROWS_AS(ComputeGradients(sigmoid, s, TrainingStrategy::kSoftmax), Error);
  CHECK(ParseStrategy("softmax-weighted") == TrainingStrategy::kSoftmaxWeighted);
  CHECK(StrategyName(TrainingStrategy::kSigmoidWeighted) == "sigmoid-weighted");
  CHECK_THROWS_AS(ParseStrategy("hinge"), Error);
}

TEST_CASE("gradient step lowers the loss") {
  const auto inv = FoodInventory();
  const Sentence s =
      MakeSentence({"eat", "salt", "now"}, std::vector<SpanAnnotation>{SpanAnnotation::Positive(1, 2, 2)}, inv);
  const std::vector<Sentence> batch = {s};
  for (auto strategy : {TrainingStrategy::kSoftmax, TrainingStrategy::kSoftmaxWeighted,
                        TrainingStrategy::kSigmoidWeighted}) {
    auto model = SmallModel(RequiredHead(strategy), batch);
    const double before = BatchLoss(model, batch, strategy);
    auto g = model.ZeroGradients();
    CHECK(std::abs(BatchGradients(model, batch, strategy, g) - before) < 1e-12);
    auto tensors = model.tensors();
    for (std::size_t k = 0; k < tensors.size(); ++k) *tensors[k].value -= 0.1 * g.tensors[k];
    CHECK(BatchLoss(model, batch, strategy) < before);
  }
}

TEST_CASE("decoding") {
  Eigen::MatrixXd p(3, 7);
  p.setConstant(0.01);
  p(0, 5) = p(1, 6) = p(2, 0) = 0.9;
  CHECK(Decode(p, HeadKind::kSoftmax) == std::vector<EntitySpan>{{0, 2, 2}});

  Eigen::MatrixXd orphan(2, 7);
  orphan.setConstant(0.01);
  orphan(0, 0) = orphan(1, 6) = 0.9;
  CHECK(DecodeLabels(orphan, HeadKind::kSoftmax) == std::vector<std::size_t>{0, 5});
  CHECK(Decode(orphan, HeadKind::kSoftmax) == std::vector<EntitySpan>{{1, 2, 2}});

  Eigen::MatrixXd low = Eigen::MatrixXd::Constant(2, 7, 0.3);
  low(0, 1) = 0.49;
  CHECK(DecodeLabels(low, HeadKind::kSigmoid) == std::vector<std::size_t>{0, 0});
  low(1, 3) = 0.51;
  CHECK(DecodeLabels(low, HeadKind::kSigmoid) == std::vector<std::size_t>{0, 3});

  Eigen::MatrixXd tie = Eigen::MatrixXd::Constant(1, 7, 0.1);
  tie(0, 3) = tie(0, 1) = 0.4;
  CHECK(DecodeLabels(tie, HeadKind::kSoftmax) == std::vector<std::size_t>{1});
}

TEST_CASE("checkpoints reload bit for bit") {
  const std::vector<Sentence> corpus = {Tokens({"salt", "and", "pepper"}), Tokens({"Bob"})};
  for (auto head : {HeadKind::kSoftmax, HeadKind::kSigmoid}) {
    const auto model = SmallModel(head, corpus);
    std::stringstream buffer;
    model.Save(buffer);
    const std::string bytes = buffer.str();
    const auto back = TaggerModel::Load(buffer);
    CHECK(back.head() == head);
    CHECK(back.vocabulary() == model.vocabulary());
    CHECK(back.inventory() == model.inventory());
    const std::vector<std::string> tokens = {"pepper", "and", "unseen"};
    const auto a = model.Forward(tokens);
    const auto b = back.Forward(tokens);
    CHECK(std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0);
    std::ostringstream again;
    back.Save(again);
    CHECK(again.str() == bytes);

    std::istringstream truncated(bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(TaggerModel::Load(truncated), Error);
  }
}
