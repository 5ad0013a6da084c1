#include <gtest/gtest.h>

#include <cmath>

#include "descentlab/objectives.hpp"
#include "descentlab/stop_rule.hpp"
#include "descentlab/supervised.hpp"
#include "descentlab/synthetic.hpp"
#include "descentlab/train.hpp"

namespace dl = descentlab;

namespace {

dl::OptimizerConfig make(dl::OptimizerKind kind, double eta) {
  dl::OptimizerConfig c;
  c.kind = kind;
  c.eta = eta;
  return c;
}

}  // namespace

TEST(StopRule, Examples) {
  dl::StopHistory h;
  h.losses = {0.3, 0.3};
  h.updates = 2;
  EXPECT_TRUE(dl::check_stop(dl::StopRule::loss_delta(1e-6, 100), h));
  h.losses = {1.0, 0.5};
  EXPECT_FALSE(dl::check_stop(dl::StopRule::loss_delta(1e-6, 100), h));
  h.updates = 10;
  EXPECT_TRUE(dl::check_stop(dl::StopRule::iterations(10), h));
  h.updates = 9;
  EXPECT_FALSE(dl::check_stop(dl::StopRule::iterations(10), h));
  h.updates = 100;
  EXPECT_TRUE(dl::check_stop(dl::StopRule::loss_delta(1e-6, 100), h));
}

TEST(StopRule, ParamDeltaAndHistoryRequirements) {
  dl::StopHistory h;
  h.updates = 1;
  h.losses = {1.0};
  EXPECT_FALSE(dl::check_stop(dl::StopRule::loss_delta(1e-3, 10), h));
  h.param_delta = 1e-9;
  EXPECT_TRUE(dl::check_stop(dl::StopRule::param_delta(1e-8, 10), h));
  h.param_delta = 1e-2;
  EXPECT_FALSE(dl::check_stop(dl::StopRule::param_delta(1e-8, 10), h));
}

TEST(StopRule, Validation) {
  EXPECT_THROW(dl::StopRule::iterations(0).validate(), dl::InvalidArgument);
  EXPECT_THROW(dl::StopRule::loss_delta(0.0, 10).validate(), dl::InvalidArgument);
  EXPECT_THROW(dl::StopRule::param_delta(-1.0, 10).validate(), dl::InvalidArgument);
  EXPECT_EQ(dl::parse_stop_mode("param_delta"), dl::StopRule::Mode::ParamDelta);
  EXPECT_THROW(dl::parse_stop_mode("forever"), dl::InvalidArgument);
}

TEST(Train, VanillaContractionOnBowl) {
  const auto bowl = dl::QuadraticBowl::diagonal({1, 10}, {0, 0});
  dl::Prng rng(1);
  const auto r = dl::train(bowl, nullptr, make(dl::OptimizerKind::VanillaGD, 0.05),
                           dl::StopRule::iterations(500), {1, 1}, rng);
  // Each coordinate contracts by |1 − η λ_i| per step: 0.95 and 0.5.
  const double bound = std::pow(0.95, 500) * std::sqrt(2.0);
  const double dist = dl::norm(dl::sub(r.theta, *bowl.known_optimum()));
  EXPECT_LE(dist, 1e-4);
  EXPECT_LE(dist, bound * (1 + 1e-9));
  EXPECT_EQ(r.updates, 500u);
  ASSERT_EQ(r.trace.size(), 500u);
  EXPECT_EQ(r.trace.front().iteration, 1u);
  EXPECT_EQ(r.trace.back().iteration, 500u);
  EXPECT_EQ(r.trace.back().epoch, 500u);
  EXPECT_FALSE(r.converged);
}

TEST(Train, LossDeltaStopsBeforeCap) {
  const auto bowl = dl::QuadraticBowl::diagonal({1, 10}, {0, 0});
  dl::Prng rng(1);
  const auto r = dl::train(bowl, nullptr, make(dl::OptimizerKind::VanillaGD, 0.05),
                           dl::StopRule::loss_delta(1e-12, 100000), {1, 1}, rng);
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.updates, 100000u);
  const double last = r.trace[r.trace.size() - 1].loss;
  const double before = r.trace[r.trace.size() - 2].loss;
  EXPECT_LE(std::abs(last - before), 1e-12);
}

TEST(Train, MiniBatchEpochStructure) {
  const auto data = dl::gaussian_blobs({.n = 100, .d_x = 2, .classes = 3, .seed = 1});
  const auto model = dl::softmax_regression(2, 3);
  dl::Prng rng(2);
  dl::TrainOptions options;
  options.batch_size = 32;
  const auto r = dl::train(*model, &data, make(dl::OptimizerKind::MiniBatchGD, 0.1),
                           dl::StopRule::iterations(10), dl::ParamVector(model->dim()), rng,
                           options);
  ASSERT_EQ(r.trace.size(), 10u);
  // Four batches per epoch (32, 32, 32, 4); the cap lands mid-epoch three.
  EXPECT_EQ(r.trace[3].batch_index, 3u);
  EXPECT_EQ(r.trace[3].epoch, 1u);
  EXPECT_EQ(r.trace[4].epoch, 2u);
  EXPECT_EQ(r.trace[4].batch_index, 0u);
  EXPECT_EQ(r.trace[9].epoch, 3u);
}

TEST(Train, SgdOnOneRowMatchesVanilla) {
  const dl::Dataset data({0.5, -1.0}, {0, 1}, 1, 2, 2, dl::Task::Classification);
  const auto model = dl::softmax_regression(2, 2);
  dl::Prng r1(3), r2(4);
  const dl::ParamVector theta0{0.1, -0.2, 0.3, 0.4, 0.0, 0.1};
  const auto a = dl::train(*model, &data, make(dl::OptimizerKind::SGD, 0.5),
                           dl::StopRule::iterations(50), theta0, r1);
  const auto b = dl::train(*model, &data, make(dl::OptimizerKind::VanillaGD, 0.5),
                           dl::StopRule::iterations(50), theta0, r2);
  EXPECT_EQ(a.theta, b.theta);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].loss, b.trace[i].loss);
    EXPECT_EQ(a.trace[i].grad_norm, b.trace[i].grad_norm);
  }
}

TEST(Train, DeterministicGivenSeed) {
  const auto data = dl::gaussian_blobs({.n = 90, .d_x = 2, .classes = 3, .seed = 5});
  const auto model = dl::mlp({2, 5, 3});
  const auto run = [&] {
    dl::Prng init(7);
    dl::Prng rng(8);
    return dl::train(*model, &data, make(dl::OptimizerKind::Adam, 0.01),
                     dl::StopRule::iterations(60), dl::init_normal(model->dim(), 0.3, init), rng);
  };
  const auto a = run(), b = run();
  EXPECT_EQ(a.theta, b.theta);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].loss, b.trace[i].loss);
    EXPECT_EQ(a.trace[i].batch_index, b.trace[i].batch_index);
  }
}

TEST(Train, FailureCarriesPartialTrace) {
  const auto bowl = dl::QuadraticBowl::diagonal({1, 10}, {0, 0});
  dl::Prng rng(1);
  try {
    dl::train(bowl, nullptr, make(dl::OptimizerKind::VanillaGD, 1e150),
              dl::StopRule::iterations(100), {1, 1}, rng);
    FAIL() << "expected TrainingFailure";
  } catch (const dl::TrainingFailure& failure) {
    ASSERT_TRUE(failure.step().has_value());
    EXPECT_EQ(failure.partial_trace().size(), *failure.step() - 1);
  }
}

TEST(Train, KeepBestIterateNeverWorseThanStart) {
  const auto bowl = dl::QuadraticBowl::diagonal({1, 10}, {0, 0});
  dl::Prng rng(1);
  dl::TrainOptions options;
  options.keep_best_iterate = true;
  // η = 0.25 makes the stiff coordinate diverge (|1 − 2.5| > 1).
  const auto r = dl::train(bowl, nullptr, make(dl::OptimizerKind::VanillaGD, 0.25),
                           dl::StopRule::iterations(30), {1, 1}, rng, options);
  EXPECT_EQ(r.theta, (dl::ParamVector{1, 1}));
  EXPECT_EQ(r.best_loss, 5.5);
}

TEST(Train, MonotoneAfterTenIterationsOnBowl) {
  // Holds for the rules without momentum or a decaying denominator; see the
  // acceptance suite for the envelope check on the others.
  const auto bowl = dl::QuadraticBowl::diagonal({1, 10}, {0, 0});
  const std::pair<dl::OptimizerKind, double> cases[] = {
      {dl::OptimizerKind::VanillaGD, 0.01}, {dl::OptimizerKind::MiniBatchGD, 0.01},
      {dl::OptimizerKind::SGD, 0.01}, {dl::OptimizerKind::Adagrad, 0.1}};
  for (const auto& [kind, eta] : cases) {
    dl::Prng rng(1);
    const auto r = dl::train(bowl, nullptr, make(kind, eta), dl::StopRule::iterations(2000),
                             {1, 1}, rng);
    for (std::size_t i = 11; i < r.trace.size(); ++i) {
      ASSERT_LE(r.trace[i].loss, r.trace[i - 1].loss) << dl::to_string(kind) << " at " << i;
    }
  }
}

TEST(Train, AdagradRatesNonincreasingOnSupervisedRun) {
  const auto data = dl::gaussian_blobs({.n = 120, .d_x = 2, .classes = 3, .seed = 9});
  const auto model = dl::mlp({2, 6, 3});
  dl::Prng init(1), rng(2);
  dl::ParamVector prev;
  std::size_t checks = 0;
  dl::TrainOptions options;
  options.batch_size = 16;
  options.on_update = [&](const dl::Optimizer& opt, const dl::TraceRecord&) {
    const auto rates = opt.effective_rates();
    if (!prev.empty()) {
      for (std::size_t i = 0; i < rates.size(); ++i) ASSERT_LE(rates[i], prev[i]);
    }
    prev = rates;
    ++checks;
  };
  dl::train(*model, &data, make(dl::OptimizerKind::Adagrad, 0.05), dl::StopRule::iterations(300),
            dl::init_normal(model->dim(), 0.5, init), rng, options);
  EXPECT_EQ(checks, 300u);
}

TEST(Train, RequiresDataForSupervisedObjectives) {
  const auto model = dl::softmax_regression(2, 3);
  dl::Prng rng(1);
  EXPECT_THROW(dl::train(*model, nullptr, make(dl::OptimizerKind::SGD, 0.1),
                         dl::StopRule::iterations(1), dl::ParamVector(model->dim()), rng),
               dl::InvalidArgument);
}
