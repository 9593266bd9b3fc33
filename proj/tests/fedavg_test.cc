// Copyright 2026 The HEFL Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hefl/ckks/audit.h"
#include "hefl/ckks/scheme.h"
#include "hefl/common/error.h"
#include "hefl/data/dataset.h"
#include "hefl/fedavg/aggregate.h"
#include "hefl/fedavg/mlp.h"
#include "hefl/fedavg/sgd.h"
#include "hefl/pack/packed_model.h"

namespace hefl::fedavg {
namespace {

using pack::Model;
using pack::RowMatrix;

Model scalar_model(double v) { return {{"w", RowMatrix<double>::Constant(1, 1, v)}}; }

Model random_flat_model(std::size_t n, double bound, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-bound, bound);
  Model m = {{"w", RowMatrix<double>(static_cast<Eigen::Index>(n), 1)}};
  for (Eigen::Index i = 0; i < m[0].values.size(); ++i) m[0].values(i, 0) = dist(gen);
  return m;
}

double max_abs_diff(const Model& a, const Model& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, (a[i].values - b[i].values).cwiseAbs().maxCoeff());
  }
  return worst;
}

// Weighted average computed slot by slot in long double.
Model reference_average(const std::vector<Model>& models, const std::vector<double>& p) {
  long double total = 0;
  for (double v : p) total += v;
  Model out = pack::zeros_like(models[0]);
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (Eigen::Index i = 0; i < out[a].values.size(); ++i) {
      long double acc = 0;
      for (std::size_t k = 0; k < models.size(); ++k) {
        acc += static_cast<long double>(p[k]) / total * models[k][a].values.data()[i];
      }
      out[a].values.data()[i] = static_cast<double>(acc);
    }
  }
  return out;
}

TEST(WeightsTest, NormalizedSumToOne) {
  const AggregationWeights w({1045, 1045, 1044, 17, 3000, 2, 1, 99});
  double sum = 0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w.normalized(k);
  EXPECT_NEAR(sum, 1.0, 0x1p-50);
  EXPECT_THROW(AggregationWeights({1.0, 0.0}), ValueError);
  EXPECT_THROW(AggregationWeights({1.0, -2.0}), ValueError);
  EXPECT_THROW(AggregationWeights({1.0, std::nan("")}), ValueError);
}

TEST(AggregatePlainTest, IdenticalModelsAreFixedPoint) {
  const Model m = random_flat_model(50, 3.0, 1);
  const std::vector<Model> models(5, m);
  const Model out = aggregate_plain(models, AggregationWeights({1, 2, 3, 4, 5}));
  EXPECT_LT(max_abs_diff(out, m), 1e-15);
}

TEST(AggregatePlainTest, SymmetricMean) {
  const std::vector<Model> models = {scalar_model(1.0), scalar_model(3.0)};
  EXPECT_EQ(aggregate_plain(models, AggregationWeights({100, 100}))[0].values(0, 0), 2.0);
}

TEST(AggregatePlainTest, SkewedMean) {
  const std::vector<Model> models = {scalar_model(1.0), scalar_model(3.0)};
  const AggregationWeights w({100, 300});
  EXPECT_EQ(w.normalized(0), 0.25);
  EXPECT_EQ(w.normalized(1), 0.75);
  EXPECT_EQ(aggregate_plain(models, w)[0].values(0, 0), 2.5);
}

TEST(AggregatePlainTest, Errors) {
  const std::vector<Model> models = {scalar_model(1.0), random_flat_model(2, 1.0, 1)};
  EXPECT_THROW(aggregate_plain(models, AggregationWeights({1, 1})), ShapeMismatch);
  const std::vector<Model> two = {scalar_model(1.0), scalar_model(2.0)};
  EXPECT_THROW(aggregate_plain(two, AggregationWeights({1, 1, 1})), ShapeMismatch);
}

TEST(MlpTest, AnalyticGradientMatchesFiniteDifferences) {
  const MlpShape shape{{6, 5, 4, 1}};
  const Model model = init_mlp(shape, 21);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  RowMatrix<double> x(7, 6);
  Eigen::VectorXd y(7);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(gen);
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = 3.0 * normal(gen);

  Model grad;
  mlp_loss_and_gradient(model, x, y, &grad);

  // Central differences evaluated in long double.
  const auto wide = pack::cast_model<long double>(model);
  const long double h = 1e-6L;
  std::size_t checked = 0;
  for (std::size_t a = 0; a < wide.size(); ++a) {
    for (Eigen::Index i = 0; i < wide[a].values.size(); ++i) {
      auto plus = wide;
      auto minus = wide;
      plus[a].values.data()[i] += h;
      minus[a].values.data()[i] -= h;
      const long double lp = mlp_loss_and_gradient<long double>(plus, x, y, nullptr);
      const long double lm = mlp_loss_and_gradient<long double>(minus, x, y, nullptr);
      const double numeric = static_cast<double>((lp - lm) / (2 * h));
      const double analytic = grad[a].values.data()[i];
      const double scale = std::max({std::abs(numeric), std::abs(analytic), 1e-3});
      EXPECT_LT(std::abs(numeric - analytic) / scale, 1e-5)
          << wide[a].name << "[" << i << "] analytic " << analytic << " numeric " << numeric;
      ++checked;
    }
  }
  EXPECT_EQ(checked, pack::parameter_count(model));
}

TEST(MlpTest, InitShapesAndNames) {
  const Model m = init_mlp(MlpShape{}, 1);
  ASSERT_EQ(m.size(), 6u);
  EXPECT_EQ(m[0].name, "dense1/weight");
  EXPECT_EQ(m[0].values.rows(), 64);
  EXPECT_EQ(m[0].values.cols(), 32);
  EXPECT_EQ(m[5].name, "dense3/bias");
  EXPECT_EQ(pack::parameter_count(m), 32u * 64 + 64 + 64 * 32 + 32 + 32 + 1);
  EXPECT_EQ(init_mlp(MlpShape{}, 1), m);
}

data::LabeledDataset single_sample(double x, double y) {
  data::LabeledDataset d;
  d.features = RowMatrix<double>::Constant(1, 1, x);
  d.targets = Eigen::VectorXd::Constant(1, y);
  return d;
}

TEST(SgdTest, SingleStepOnOneParameter) {
  Model m = init_mlp(MlpShape{{1, 1}}, 0);
  m[0].values(0, 0) = 0.0;
  const Model out = local_sgd(m, single_sample(1.0, 2.0), {1, 0.1, 1}, 9);
  // Loss 1/2 (w x + b - y)^2: one step moves w and b by 0.1 * 2.
  EXPECT_DOUBLE_EQ(out[0].values(0, 0), 0.2);
  EXPECT_DOUBLE_EQ(out[1].values(0, 0), 0.2);
}

TEST(SgdTest, ZeroLearningRateLeavesModelUnchanged) {
  const auto split = data::generate_train_eval(200, 10, 32, 0.1, 3);
  const Model m = init_mlp(MlpShape{}, 4);
  EXPECT_EQ(local_sgd(m, split.train, {2, 0.0, 1}, 5), m);
}

TEST(SgdTest, BitReproducible) {
  const auto split = data::generate_train_eval(300, 10, 32, 0.1, 3);
  const Model m = init_mlp(MlpShape{}, 4);
  const TrainerSpec spec{2, 5e-5, 4};
  EXPECT_EQ(local_sgd(m, split.train, spec, 5), local_sgd(m, split.train, spec, 5));
  EXPECT_NE(local_sgd(m, split.train, spec, 5), local_sgd(m, split.train, spec, 6));
}

TEST(SgdTest, TrainingReducesError) {
  const auto split = data::generate_train_eval(1000, 300, 32, 0.1, 3);
  const Model m = init_mlp(MlpShape{}, 4);
  const Model trained = local_sgd(m, split.train, {4, 5e-5, 1}, 1);
  EXPECT_LT(evaluate(trained, split.eval).mae, evaluate(m, split.eval).mae);
}

TEST(SgdTest, Errors) {
  const Model m = init_mlp(MlpShape{{1, 1}}, 0);
  data::LabeledDataset empty;
  empty.features.resize(0, 1);
  EXPECT_THROW(local_sgd(m, empty, {}, 1), EmptyDataset);
  EXPECT_THROW(evaluate(m, empty), EmptyDataset);
  EXPECT_THROW(local_sgd(m, single_sample(1e200, 1.0), {1, 1.0, 1}, 1), DivergenceError);
  EXPECT_THROW((TrainerSpec{1, 0.1, 0}.validate()), ValueError);
}

TEST(EvaluateTest, MatchesDirectComputation) {
  const auto split = data::generate_train_eval(10, 50, 32, 0.1, 8);
  const Model m = init_mlp(MlpShape{}, 2);
  const Eigen::VectorXd pred = mlp_predict(m, split.eval.features);
  double se = 0;
  double ae = 0;
  for (Eigen::Index i = 0; i < pred.size(); ++i) {
    const double r = pred[i] - split.eval.targets[i];
    se += r * r;
    ae += std::abs(r);
  }
  const EvalResult got = evaluate(m, split.eval);
  EXPECT_NEAR(got.loss, se / 50, 1e-9);
  EXPECT_NEAR(got.mae, ae / 50, 1e-12);
}

class EncryptedAggregationTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    params_ = new ckks::CkksParams(ckks::CkksParams::create());
    lattice::Prng rng(2024);
    keys_ = new ckks::KeyPair(ckks::keygen(*params_, rng));
  }
  static void TearDownTestSuite() {
    delete keys_;
    delete params_;
  }

  static std::vector<pack::PackedModel> encrypt_all(const std::vector<Model>& models,
                                                    std::uint64_t seed) {
    std::vector<pack::PackedModel> out;
    lattice::Prng rng(seed);
    for (const auto& m : models) out.push_back(pack::encrypt_model(m, keys_->public_key, rng, 4));
    return out;
  }

  static ckks::CkksParams* params_;
  static ckks::KeyPair* keys_;
};

ckks::CkksParams* EncryptedAggregationTest::params_ = nullptr;
ckks::KeyPair* EncryptedAggregationTest::keys_ = nullptr;

TEST_F(EncryptedAggregationTest, MatchesPlainOracle) {
  for (const bool skewed : {false, true}) {
    std::vector<Model> models;
    std::vector<double> p;
    for (std::uint64_t k = 0; k < 8; ++k) {
      models.push_back(random_flat_model(10'000, 1.0, 100 + k));
      p.push_back(skewed ? std::pow(0.7, static_cast<double>(k)) * 5000 : 1045);
    }
    const AggregationWeights w(p);
    const auto packed = encrypt_all(models, 7);
    const auto agg = aggregate_encrypted(packed, w, *params_, 4);
    EXPECT_EQ(agg.level(), packed[0].level() - 1);
    const Model got = pack::decrypt_model(agg, keys_->secret_key);
    EXPECT_LT(max_abs_diff(got, reference_average(models, p)), 1e-6);
    EXPECT_LT(max_abs_diff(got, aggregate_plain(models, w)), 1e-6);
  }
}

TEST_F(EncryptedAggregationTest, LearnerCountsTwoToEight) {
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<Model> models;
    std::vector<double> p;
    for (std::size_t k = 0; k < n; ++k) {
      models.push_back(random_flat_model(3000, 2.0, 40 + k));
      p.push_back(static_cast<double>(10 + 37 * k));
    }
    const auto agg = aggregate_encrypted(encrypt_all(models, n), AggregationWeights(p), *params_);
    const Model got = pack::decrypt_model(agg, keys_->secret_key);
    EXPECT_LT(max_abs_diff(got, reference_average(models, p)), 1e-6) << n << " learners";
  }
}

TEST_F(EncryptedAggregationTest, SingleLearnerIsIdentity) {
  const std::vector<Model> models = {random_flat_model(5000, 10.0, 3)};
  const auto agg = aggregate_encrypted(encrypt_all(models, 1), AggregationWeights({1.0}), *params_);
  EXPECT_LT(max_abs_diff(pack::decrypt_model(agg, keys_->secret_key), models[0]), 0x1p-25);
}

TEST_F(EncryptedAggregationTest, SymmetricTwoLearners) {
  const std::vector<Model> models = {scalar_model(1.0), scalar_model(3.0)};
  const auto agg =
      aggregate_encrypted(encrypt_all(models, 2), AggregationWeights({100, 100}), *params_);
  EXPECT_NEAR(pack::decrypt_model(agg, keys_->secret_key)[0].values(0, 0), 2.0, 1e-6);
}

TEST_F(EncryptedAggregationTest, InvariantToCommonWeightScaling) {
  std::vector<Model> models;
  for (std::uint64_t k = 0; k < 4; ++k) models.push_back(random_flat_model(2000, 1.0, k));
  const auto packed = encrypt_all(models, 3);
  const Model a = pack::decrypt_model(
      aggregate_encrypted(packed, AggregationWeights({1, 2, 3, 4}), *params_), keys_->secret_key);
  const Model b = pack::decrypt_model(
      aggregate_encrypted(packed, AggregationWeights({1e3, 2e3, 3e3, 4e3}), *params_),
      keys_->secret_key);
  EXPECT_LT(max_abs_diff(a, b), 1e-6);
}

TEST_F(EncryptedAggregationTest, ConsumesOneLevelAndNoDecryption) {
  std::vector<Model> models;
  for (std::uint64_t k = 0; k < 8; ++k) models.push_back(random_flat_model(100, 1.0, k));
  const auto packed = encrypt_all(models, 3);
  ckks::reset_decrypt_audit();
  pack::PackedModel agg;
  {
    const ckks::PartyScope scope(ckks::Party::kController);
    agg = aggregate_encrypted(packed, AggregationWeights(std::vector<double>(8, 1.0)), *params_);
  }
  EXPECT_EQ(ckks::decrypt_calls(ckks::Party::kController), 0u);
  EXPECT_EQ(agg.level(), params_->top_level() - 1);
  EXPECT_NEAR(agg.scale(), params_->default_scale(), params_->default_scale() * 1e-9);

  const std::vector<pack::PackedModel> lower = {agg, agg};
  const auto again = aggregate_encrypted(lower, AggregationWeights({1, 1}), *params_);
  EXPECT_EQ(again.level(), params_->top_level() - 2);
  const std::vector<pack::PackedModel> bottom = {again};
  EXPECT_THROW(aggregate_encrypted(bottom, AggregationWeights({1}), *params_), LevelExhausted);
}

TEST_F(EncryptedAggregationTest, RejectsMismatchedInputs) {
  const auto a = encrypt_all({random_flat_model(100, 1.0, 1)}, 1);
  const auto b = encrypt_all({random_flat_model(200, 1.0, 1)}, 1);
  const std::vector<pack::PackedModel> mixed = {a[0], b[0]};
  EXPECT_THROW(aggregate_encrypted(mixed, AggregationWeights({1, 1}), *params_), ShapeMismatch);
  const std::vector<pack::PackedModel> one = {a[0]};
  EXPECT_THROW(aggregate_encrypted(one, AggregationWeights({1, 1}), *params_), ShapeMismatch);
}

}  // namespace
}  // namespace hefl::fedavg
