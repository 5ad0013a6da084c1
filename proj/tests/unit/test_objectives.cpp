#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "descentlab/error.hpp"
#include "descentlab/grad_check.hpp"
#include "descentlab/objectives.hpp"
#include "descentlab/supervised.hpp"
#include "descentlab/synthetic.hpp"

namespace dl = descentlab;

TEST(QuadraticBowl, ClosedForms) {
  const auto id = dl::quadratic_bowl({1, 0, 0, 1}, {0, 0});
  auto e = id->evaluate({1, 1});
  EXPECT_DOUBLE_EQ(e.loss, 1.0);
  EXPECT_EQ(e.grad, (dl::ParamVector{1, 1}));
  e = id->evaluate({0, 0});
  EXPECT_EQ(e.loss, 0.0);
  EXPECT_EQ(e.grad, (dl::ParamVector{0, 0}));
  const auto bowl = dl::QuadraticBowl::diagonal({1, 10}, {0, 0});
  EXPECT_EQ(bowl.evaluate({1, 1}).grad, (dl::ParamVector{1, 10}));
}

TEST(QuadraticBowl, OptimumSolvesLinearSystem) {
  const auto bowl = dl::quadratic_bowl({4, 1, 1, 3}, {1, 2});
  const auto opt = bowl->known_optimum().value();
  // A θ* = b by hand: θ* = [1/11, 7/11].
  EXPECT_NEAR(opt[0], 1.0 / 11.0, 1e-14);
  EXPECT_NEAR(opt[1], 7.0 / 11.0, 1e-14);
  EXPECT_LE(dl::norm(bowl->evaluate(opt).grad), 1e-10);
}

TEST(QuadraticBowl, RejectsNonSpd) {
  EXPECT_THROW(dl::quadratic_bowl({1, 2, 2, 1}, {0, 0}), dl::InvalidArgument);
  EXPECT_THROW(dl::quadratic_bowl({1, 0, 1, 1}, {0, 0}), dl::InvalidArgument);
  EXPECT_THROW(dl::quadratic_bowl({1, 0, 0}, {0, 0}), dl::InvalidArgument);
}

TEST(Rosenbrock, HandValues) {
  const auto f = dl::rosenbrock(2);
  const auto e = f->evaluate({0, 0});
  EXPECT_DOUBLE_EQ(e.loss, 1.0);
  EXPECT_EQ(e.grad, (dl::ParamVector{-2, 0}));
  const auto at_opt = f->evaluate({1, 1});
  EXPECT_EQ(at_opt.loss, 0.0);
  EXPECT_EQ(dl::norm(at_opt.grad), 0.0);
  EXPECT_THROW(dl::rosenbrock(1), dl::InvalidArgument);
}

TEST(Rastrigin, HandValues) {
  const auto f = dl::rastrigin(3);
  EXPECT_EQ(f->evaluate({0, 0, 0}).loss, 0.0);
  // At θ = [0.5]: 10 + 0.25 − 10 cos(π) = 20.25; gradient 2θ + 20π sin(2πθ) = 1.
  const auto g = dl::rastrigin(1)->evaluate({0.5});
  EXPECT_NEAR(g.loss, 20.25, 1e-12);
  EXPECT_NEAR(g.grad[0], 1.0, 1e-12);
  EXPECT_THROW(dl::rastrigin(0), dl::InvalidArgument);
}

TEST(Objective, InputValidation) {
  const auto f = dl::rosenbrock(3);
  EXPECT_THROW(f->evaluate({1, 1}), dl::InvalidArgument);
  EXPECT_THROW(f->evaluate({1, std::nan(""), 1}), dl::NumericError);
  const auto data = dl::gaussian_blobs({.n = 10, .d_x = 2, .classes = 3, .seed = 1});
  const auto sm = dl::softmax_regression(2, 3);
  EXPECT_THROW(sm->evaluate(dl::ParamVector(sm->dim())), dl::InvalidArgument);
  const auto wrong = dl::softmax_regression(3, 3);
  EXPECT_THROW(wrong->evaluate(dl::ParamVector(wrong->dim()), dl::Batch::all(data)),
               dl::InvalidArgument);
}

TEST(SoftmaxRegression, ZeroWeightsGiveLogClasses) {
  const auto data = dl::gaussian_blobs({.n = 30, .d_x = 2, .classes = 3, .seed = 2});
  const auto sm = dl::softmax_regression(2, 3);
  EXPECT_NEAR(sm->evaluate(dl::ParamVector(sm->dim()), dl::Batch::all(data)).loss,
              std::log(3.0), 1e-12);
  const auto net = dl::mlp({2, 4, 3});
  EXPECT_NEAR(net->evaluate(dl::ParamVector(net->dim()), dl::Batch::all(data)).loss,
              std::log(3.0), 1e-12);
}

TEST(SoftmaxRegression, MatchesDirectComputation) {
  // One row, hand-packed W (row-major, classes x inputs) then bias.
  const dl::Dataset data({1.0, 2.0}, {0, 1, 0}, 1, 2, 3, dl::Task::Classification);
  const dl::ParamVector theta{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.01, 0.02, 0.03};
  const double z[3] = {0.1 + 0.4 + 0.01, 0.3 + 0.8 + 0.02, 0.5 + 1.2 + 0.03};
  const double lse = std::log(std::exp(z[0]) + std::exp(z[1]) + std::exp(z[2]));
  EXPECT_NEAR(dl::softmax_regression(2, 3)->evaluate(theta, dl::Batch::all(data)).loss,
              lse - z[1], 1e-14);
}

TEST(Mlp, ParameterCountAndPacking) {
  const dl::MlpSpec spec{3, 5, 2};
  EXPECT_EQ(spec.parameter_count(), 5u * 4u + 2u * 6u);
  EXPECT_EQ(dl::mlp(spec)->dim(), spec.parameter_count());
  EXPECT_THROW(dl::mlp({0, 5, 2}), dl::InvalidArgument);
}

TEST(Supervised, SingleRowBatchEqualsInstanceAndDuplicationInvariance) {
  const auto data = dl::gaussian_blobs({.n = 12, .d_x = 2, .classes = 3, .seed = 3});
  const auto net = dl::mlp({2, 4, 3});
  dl::Prng rng(4);
  const auto theta = dl::init_normal(net->dim(), 0.5, rng);

  const std::vector<std::size_t> rows{0, 3, 7};
  const std::vector<std::size_t> doubled{0, 3, 7, 0, 3, 7};
  const auto g1 = net->evaluate(theta, dl::Batch(data, rows));
  const auto g2 = net->evaluate(theta, dl::Batch(data, doubled));
  EXPECT_NEAR(g1.loss, g2.loss, 1e-14);
  for (std::size_t i = 0; i < g1.grad.size(); ++i) EXPECT_NEAR(g1.grad[i], g2.grad[i], 1e-14);

  const std::vector<std::size_t> one{5};
  const dl::Dataset single = data.subset(one);
  const auto a = net->evaluate(theta, dl::Batch(data, one));
  const auto b = net->evaluate(theta, dl::Batch::all(single));
  EXPECT_EQ(a.loss, b.loss);
  EXPECT_EQ(a.grad, b.grad);
}

TEST(LinearRegression, MeanSquaredError) {
  const dl::Dataset data({1.0, 2.0}, {3.0, 5.0}, 2, 1, 1, dl::Task::Regression);
  const auto lr = dl::linear_regression(1, 1);
  // θ = [w, c] = [2, 1] fits both rows exactly.
  EXPECT_EQ(lr->evaluate({2, 1}, dl::Batch::all(data)).loss, 0.0);
  // θ = 0: residuals 3 and 5, mean of squares 17.
  EXPECT_DOUBLE_EQ(lr->evaluate({0, 0}, dl::Batch::all(data)).loss, 17.0);
}

TEST(GradCheck, QuadraticIsTight) {
  const auto bowl = dl::quadratic_bowl({4, 1, 1, 3}, {1, 2});
  dl::Prng rng(9);
  for (int i = 0; i < 20; ++i) {
    EXPECT_LE(dl::grad_check(*bowl, dl::init_normal(2, 3.0, rng)), 1e-7);
  }
}

TEST(GradCheck, MlpAtSmallWeights) {
  const auto data = dl::gaussian_blobs({.n = 40, .d_x = 3, .classes = 4, .seed = 5});
  const auto net = dl::mlp({3, 6, 4});
  dl::Prng rng(10);
  for (int i = 0; i < 5; ++i) {
    EXPECT_LE(dl::grad_check(*net, dl::init_normal(net->dim(), 0.1, rng), dl::Batch::all(data)),
              1e-5);
  }
}

TEST(GradCheck, DetectsAWrongGradient) {
  class Broken final : public dl::Objective {
   public:
    std::size_t dim() const noexcept override { return 2; }
    std::string name() const override { return "broken"; }

   protected:
    dl::Evaluation do_evaluate(const dl::ParamVector& t, const dl::Batch&) const override {
      return {t[0] * t[0] + t[1] * t[1], dl::ParamVector{2 * t[0], 3 * t[1]}};
    }
  };
  const auto report = dl::grad_check_report(Broken{}, {1, 1});
  EXPECT_GT(report.max_rel_error, 0.1);
  EXPECT_EQ(report.worst_index, 1u);
}

TEST(Objectives, ZeroGradientAtKnownOptima) {
  for (const auto& f :
       {dl::rosenbrock(5), dl::rastrigin(4), dl::quadratic_bowl({2, 1, 1, 2}, {1, -1})}) {
    EXPECT_LE(dl::norm(f->evaluate(f->known_optimum().value()).grad), 1e-10) << f->name();
  }
}
