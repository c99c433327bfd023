#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "erm/generate.hpp"
#include "erm/solvers.hpp"
#include "test_support.hpp"

namespace erm {
namespace {

using testing::random_vector;
using testing::relative_error;

Dataset line_data() { return Dataset({{{1.0}, 1.0}, {{2.0}, 2.0}}, LabelSpace::Real); }

// ---------------------------------------------------------------- closed form

TEST(ClosedForm, HandValues) {
  EXPECT_NEAR(least_squares_closed_form(line_data()).weights()[0], 1.0, 1e-15);
  EXPECT_NEAR(least_squares_closed_form(Dataset({{{1.0}, 0.0}, {{1.0}, 2.0}}, LabelSpace::Real)).weights()[0], 1.0,
              1e-15);
}

TEST(ClosedForm, SingularGram) {
  const Dataset dup({{{1.0, 1.0}, 1.0}, {{2.0, 2.0}, 3.0}, {{-1.0, -1.0}, 0.5}}, LabelSpace::Real);
  try {
    least_squares_closed_form(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularGram);
  }
  EXPECT_THROW(least_squares_closed_form(Dataset({{{0.0}, 1.0}, {{0.0}, 2.0}}, LabelSpace::Real)), Error);
  EXPECT_THROW(least_squares_closed_form(Dataset({{{1.0}, 1.0}}, LabelSpace::Binary)), Error);
}

TEST(ClosedForm, NormalEquationResidualIsSmall) {
  std::mt19937_64 rng(20);
  for (int t = 0; t < 50; ++t) {
    const auto data = testing::random_real_dataset(rng, 60, 4);
    const auto w = least_squares_closed_form(data).weights();
    std::vector<double> residual_grad(4, 0.0), xty(4, 0.0);
    for (const auto& p : data) {
      double pred = 0.0;
      for (int r = 0; r < 4; ++r) pred += w[r] * p.features[r];
      for (int r = 0; r < 4; ++r) {
        residual_grad[r] += p.features[r] * (pred - p.label);
        xty[r] += p.features[r] * p.label;
      }
    }
    double scale = 0.0, norm = 0.0;
    for (int r = 0; r < 4; ++r) {
      scale = std::max(scale, std::abs(xty[r]));
      norm = std::max(norm, std::abs(residual_grad[r]));
    }
    EXPECT_LE(norm, 1e-8 * (1.0 + scale));
  }
}

TEST(ClosedForm, MatchesGridSearchIn1D) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = generate_awgn_dataset({-2.3}, 30, {}, 0.7, seed);
    const auto grid = grid_search_1d(
        [&](double w) { return empirical_risk(SquaredLoss{}, LinearHypothesis({w}), data); }, -5.0, 5.0, 1001);
    EXPECT_LE(std::abs(grid.argmin - least_squares_closed_form(data).weights()[0]), 0.01);
  }
}

// ---------------------------------------------------------------- gradient descent

TEST(GradientDescent, LinearSquaredMatchesClosedForm) {
  const auto fit = gradient_descent_fit(LinearFamily{}, SquaredLoss{}, line_data(), {0.1, 500, 1e-12, 0});
  EXPECT_LT(std::abs(hypothesis_weights(fit.hypothesis)[0] - 1.0), 1e-6);
  EXPECT_TRUE(fit.converged);
  EXPECT_EQ(fit.risk_trace.size(), fit.iterations_used + 1);
}

TEST(GradientDescent, ZeroStepKeepsInitialization) {
  const auto data = generate_awgn_dataset({1.0, -1.0}, 10, {}, 0.1, 2);
  const GdConfig config{1e-300, 1, 0.0, 77};
  auto expect_near_all = [](const std::vector<double>& a, const std::vector<double>& b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-290);
  };
  const auto lin = gradient_descent_fit(LinearFamily{}, SquaredLoss{}, data, config);
  expect_near_all(hypothesis_weights(lin.hypothesis), initial_weights(LinearFamily{}, 2, 77));
  const AnnFamily ann{{3}, Activation::Sigmoid};
  const auto net = gradient_descent_fit(ann, HuberLoss(1.0), data, config);
  // Non-zero initial weights absorb a 1e-300 update entirely.
  EXPECT_EQ(hypothesis_weights(net.hypothesis), initial_weights(ann, 2, 77));
  EXPECT_EQ(net.iterations_used, 1u);
  EXPECT_EQ(net.risk_trace.size(), 2u);
}

TEST(GradientDescent, InitializationRules) {
  EXPECT_EQ(initial_weights(LinearFamily{}, 3, 5), (std::vector<double>{0, 0, 0}));
  const auto w = initial_weights(AnnFamily{{3}, Activation::Relu}, 2, 5);
  ASSERT_EQ(w.size(), 9u);
  for (double v : w) {
    EXPECT_GE(v, -0.5);
    EXPECT_LT(v, 0.5);
  }
  EXPECT_EQ(w, initial_weights(AnnFamily{{3}, Activation::Relu}, 2, 5));
  EXPECT_NE(w, initial_weights(AnnFamily{{3}, Activation::Relu}, 2, 6));
}

TEST(GradientDescent, HuberWithHugeThresholdIsHalfSquared) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto data = testing::random_real_dataset(rng, 20, 2);
    const double step = 0.5 / linear_risk_smoothness(SquaredLoss{}, data);
    // Huber at step s walks the same path as squared at step s/2.
    for (std::size_t iters = 1; iters <= 200; iters *= 3) {
      const auto huber = gradient_descent_fit(LinearFamily{}, HuberLoss(1e9), data, {step, iters, 0.0, 0});
      const auto sq = gradient_descent_fit(LinearFamily{}, SquaredLoss{}, data, {step / 2, iters, 0.0, 0});
      const auto& wh = hypothesis_weights(huber.hypothesis);
      const auto& ws = hypothesis_weights(sq.hypothesis);
      for (std::size_t j = 0; j < wh.size(); ++j) EXPECT_NEAR(wh[j], ws[j], 1e-12);
    }
  }
}

TEST(GradientDescent, DivergenceDetected) {
  const auto data = generate_awgn_dataset({3.0}, 20, {}, 0.1, 3);
  try {
    gradient_descent_fit(LinearFamily{}, SquaredLoss{}, data, {100.0, 1000, 1e-8, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergenceDetected);
  }
}

TEST(GradientDescent, RejectsBadConfigAndData) {
  const auto data = line_data();
  EXPECT_THROW(gradient_descent_fit(LinearFamily{}, SquaredLoss{}, data, {0.0, 10, 1e-8, 0}), Error);
  EXPECT_THROW(gradient_descent_fit(LinearFamily{}, SquaredLoss{}, data, {0.1, 0, 1e-8, 0}), Error);
  try {
    gradient_descent_fit(LinearFamily{}, LogisticLoss{}, data, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LabelSpaceMismatch);
  }
}

TEST(GradientDescent, MonotoneBelowInverseSmoothness) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 20; ++t) {
    const auto real = testing::random_real_dataset(rng, 40, 3);
    const auto binary = testing::random_binary_dataset(rng, 40, 3);
    for (const LossKind& kind : {LossKind(SquaredLoss{}), LossKind(HuberLoss(0.7)), LossKind(LogisticLoss{})}) {
      const auto& data = std::holds_alternative<LogisticLoss>(kind) ? binary : real;
      const double step = 0.99 / linear_risk_smoothness(kind, data);
      const auto fit = gradient_descent_fit(LinearFamily{}, kind, data, {step, 300, 0.0, 0});
      for (std::size_t k = 1; k < fit.risk_trace.size(); ++k) {
        EXPECT_LE(fit.risk_trace[k], fit.risk_trace[k - 1] * (1 + 1e-15)) << loss_name(kind) << " k=" << k;
      }
    }
  }
}

TEST(GradientDescent, Deterministic) {
  const auto data = generate_awgn_dataset({0.5, 1.0}, 30, {}, 0.3, 4);
  const AnnFamily ann{{4}, Activation::Sigmoid};
  const auto a = gradient_descent_fit(ann, SquaredLoss{}, data, {0.05, 200, 1e-8, 9});
  const auto b = gradient_descent_fit(ann, SquaredLoss{}, data, {0.05, 200, 1e-8, 9});
  EXPECT_EQ(a.hypothesis, b.hypothesis);
  EXPECT_EQ(a.risk_trace, b.risk_trace);
  EXPECT_LT(a.risk_trace.back(), a.risk_trace.front());
}

TEST(GradientDescent, LogisticLearnsSeparableDirection) {
  const auto data = generate_logistic_dataset({4.0, -4.0}, 400, {}, 5);
  const auto fit = gradient_descent_fit(LinearFamily{}, LogisticLoss{}, data, {1.0, 2000, 1e-6, 0});
  const auto& w = hypothesis_weights(fit.hypothesis);
  EXPECT_GT(w[0], 1.0);
  EXPECT_LT(w[1], -1.0);
  EXPECT_LT(fit.risk_trace.back(), std::log(2.0));
}

// ---------------------------------------------------------------- risk gradient vs oracle

TEST(RiskGradient, MatchesFiniteDifferencesLinearAndAnn) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    const auto data = testing::random_real_dataset(rng, 15, 2);
    const auto w = random_vector(rng, 2, -2, 2);
    const auto analytic = risk_gradient(SquaredLoss{}, LinearHypothesis(w), data);
    const auto fd = finite_difference_gradient(
        [&](std::span<const double> v) {
          return empirical_risk(SquaredLoss{}, LinearHypothesis({v.begin(), v.end()}), data);
        },
        w, 1e-6);
    for (std::size_t j = 0; j < w.size(); ++j) EXPECT_LT(relative_error(analytic[j], fd[j], 1e-3), 1e-6);

    const AnnFamily ann{{3}, Activation::Sigmoid};
    const auto wa = random_vector(rng, 9, -1, 1);
    const auto ga = risk_gradient(HuberLoss(2.0), make_hypothesis(ann, 2, wa), data);
    const auto fa = finite_difference_gradient(
        [&](std::span<const double> v) {
          return empirical_risk(HuberLoss(2.0), make_hypothesis(ann, 2, {v.begin(), v.end()}), data);
        },
        wa, 1e-6);
    for (std::size_t j = 0; j < wa.size(); ++j) EXPECT_LT(std::abs(ga[j] - fa[j]), 1e-5 * std::max(1.0, std::abs(fa[j])));
  }
}

// ---------------------------------------------------------------- oracles themselves

TEST(FiniteDifference, AnalyticCases) {
  const std::vector<double> w{1.0, 2.0};
  const auto g = finite_difference_gradient(
      [](std::span<const double> v) { return v[0] * v[0] + v[1] * v[1]; }, w, 1e-6);
  EXPECT_NEAR(g[0], 2.0, 1e-8);
  EXPECT_NEAR(g[1], 4.0, 1e-8);
  const auto z = finite_difference_gradient([](std::span<const double>) { return 3.0; }, w, 1e-6);
  EXPECT_EQ(z, (std::vector<double>{0.0, 0.0}));
  try {
    finite_difference_gradient([](std::span<const double> v) { return std::log(v[0]); }, std::vector<double>{0.0},
                               1e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteObjective);
  }
}

TEST(GridSearch, Contract) {
  const auto m = grid_search_1d([](double w) { return (w - 1) * (w - 1); }, -5.0, 5.0, 1001);
  EXPECT_EQ(m.argmin, 1.0);
  EXPECT_EQ(m.min_value, 0.0);
  EXPECT_EQ(grid_search_1d([](double) { return 2.0; }, -3.0, 4.0, 11).argmin, -3.0);
  EXPECT_EQ(grid_search_1d([](double w) { return -w; }, -3.0, 4.0, 11).argmin, 4.0);
  EXPECT_THROW(grid_search_1d([](double w) { return w; }, 1.0, 1.0, 10), Error);
  EXPECT_THROW(grid_search_1d([](double w) { return w; }, 0.0, 1.0, 1), Error);
  EXPECT_THROW(grid_search_1d([](double w) { return 1.0 / w; }, -1.0, 1.0, 3), Error);
}

}  // namespace
}  // namespace erm
