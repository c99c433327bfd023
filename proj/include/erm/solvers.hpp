#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "erm/dataset.hpp"
#include "erm/error.hpp"
#include "erm/hypothesis.hpp"
#include "erm/loss.hpp"
#include "erm/random.hpp"

namespace erm {

// ---------------------------------------------------------------------------
// Closed-form least squares

/// Minimizer of the mean squared error over linear hypotheses. Solves the
/// least-squares problem with a column-pivoting Householder QR of the feature
/// matrix; rank-deficient features raise SingularGram.
inline LinearHypothesis least_squares_closed_form(const Dataset& data) {
  if (data.label_space() != LabelSpace::Real) {
    throw Error(ErrorCode::LabelSpaceMismatch, "least squares needs a real-valued label space");
  }
  const auto m = static_cast<Eigen::Index>(data.size());
  const auto n = static_cast<Eigen::Index>(data.feature_dim());
  Eigen::MatrixXd X(m, n);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& p = data[static_cast<std::size_t>(i)];
    for (Eigen::Index r = 0; r < n; ++r) X(i, r) = p.features[static_cast<std::size_t>(r)];
    y(i) = p.label;
  }
  if (m < n) throw Error(ErrorCode::SingularGram, "fewer points than features");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < n) {
    throw Error(ErrorCode::SingularGram, "feature matrix has rank " + std::to_string(qr.rank()) + " < " +
                                             std::to_string(n));
  }
  const Eigen::VectorXd w = qr.solve(y);

  const Eigen::VectorXd normal_residual = X.transpose() * (X * w - y);
  const double scale = 1.0 + (X.transpose() * y).cwiseAbs().maxCoeff();
  if (!w.allFinite() || normal_residual.cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw Error(ErrorCode::SingularGram, "normal equations are too ill-conditioned to solve accurately");
  }
  return LinearHypothesis(FeatureVector(w.data(), w.data() + w.size()));
}

// ---------------------------------------------------------------------------
// Gradient descent

struct LinearFamily {};

/// Network topology is {n, hidden..., 1} with n taken from the data.
struct AnnFamily {
  std::vector<std::size_t> hidden{3};
  Activation activation = Activation::Sigmoid;
};

using HypothesisFamily = std::variant<LinearFamily, AnnFamily>;

struct GdConfig {
  double step_size = 0.1;
  std::size_t max_iterations = 1000;
  double grad_tolerance = 1e-8;  // on the ∞-norm of the weight gradient
  std::uint64_t seed = 0;
};

struct FitResult {
  Hypothesis hypothesis;
  std::vector<double> risk_trace;  // initial risk, then one entry per update
  bool converged = false;
  std::size_t iterations_used = 0;
};

inline std::vector<std::size_t> ann_topology(const AnnFamily& family, std::size_t input_dim) {
  std::vector<std::size_t> topo{input_dim};
  topo.insert(topo.end(), family.hidden.begin(), family.hidden.end());
  topo.push_back(1);
  return topo;
}

/// Zeros for linear models; Uniform(−0.5, 0.5) per weight for networks.
inline std::vector<double> initial_weights(const HypothesisFamily& family, std::size_t input_dim, std::uint64_t seed) {
  if (std::holds_alternative<LinearFamily>(family)) return std::vector<double>(input_dim, 0.0);
  const auto topo = ann_topology(std::get<AnnFamily>(family), input_dim);
  CounterRng rng(seed);
  std::vector<double> w(AnnHypothesis::weight_count(topo));
  for (double& v : w) v = rng.uniform(-0.5, 0.5);
  return w;
}

inline Hypothesis make_hypothesis(const HypothesisFamily& family, std::size_t input_dim, std::vector<double> weights) {
  if (std::holds_alternative<LinearFamily>(family)) return LinearHypothesis(std::move(weights));
  const auto& ann = std::get<AnnFamily>(family);
  return AnnHypothesis(ann_topology(ann, input_dim), ann.activation, std::move(weights));
}

inline const std::vector<double>& hypothesis_weights(const Hypothesis& h) {
  if (const auto* lin = std::get_if<LinearHypothesis>(&h)) return lin->weights();
  if (const auto* ann = std::get_if<AnnHypothesis>(&h)) return ann->weights();
  throw Error(ErrorCode::InvalidArgument, "decision trees have no trainable weights");
}

inline std::vector<double> weight_gradient(const Hypothesis& h, std::span<const double> x) {
  if (const auto* lin = std::get_if<LinearHypothesis>(&h)) return linear_weight_gradient(*lin, x);
  if (const auto* ann = std::get_if<AnnHypothesis>(&h)) return ann_weight_gradient(*ann, x);
  throw Error(ErrorCode::InvalidArgument, "decision trees are not differentiable in their parameters");
}

/// ∇_w R(w) = (1/m) Σᵢ ℒ'(y⁽ⁱ⁾, h(x⁽ⁱ⁾)) · ∂h(x⁽ⁱ⁾)/∂w, reduced in dataset order.
inline std::vector<double> risk_gradient(const LossKind& kind, const Hypothesis& h, const Dataset& data) {
  detail::check_compatible(kind, h, data);
  std::vector<double> grad(hypothesis_weights(h).size(), 0.0);
  for (const auto& p : data) {
    const double dloss = loss_derivative(kind, p.label, predict(h, p.features));
    const auto dh = weight_gradient(h, p.features);
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += dloss * dh[j];
  }
  const double m = static_cast<double>(data.size());
  for (double& g : grad) g /= m;
  return grad;
}

/// Largest second derivative of the loss in ŷ (its smoothness constant).
inline double loss_curvature_bound(const LossKind& kind) {
  if (std::holds_alternative<SquaredLoss>(kind)) return 2.0;
  if (std::holds_alternative<LogisticLoss>(kind)) return 0.25;
  return 1.0;
}

/// Lipschitz constant of the linear-model risk gradient:
/// curvature bound × λ_max(XᵀX / m). Step sizes below 1/L give monotone descent.
inline double linear_risk_smoothness(const LossKind& kind, const Dataset& data) {
  const auto n = static_cast<Eigen::Index>(data.feature_dim());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : data) {
    const Eigen::Map<const Eigen::VectorXd> x(p.features.data(), n);
    gram.noalias() += x * x.transpose();
  }
  gram /= static_cast<double>(data.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  return loss_curvature_bound(kind) * eig.eigenvalues().maxCoeff();
}

namespace detail {

inline double inf_norm(std::span<const double> v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::abs(x));
  return out;
}

}  // namespace detail

/// Full-batch gradient descent w ← w − step·∇R(w) from the family's seeded
/// initialization. Stops when ‖∇R‖∞ ≤ grad_tolerance or after max_iterations
/// updates. Throws DivergenceDetected when the risk exceeds 1e6× its initial
/// value or stops being finite.
inline FitResult gradient_descent_fit(const HypothesisFamily& family, const LossKind& kind, const Dataset& data,
                                      const GdConfig& config) {
  if (!(config.step_size > 0.0) || !std::isfinite(config.step_size)) {
    throw Error(ErrorCode::InvalidArgument, "step size must be > 0");
  }
  if (config.max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
  if (!(config.grad_tolerance >= 0.0)) throw Error(ErrorCode::InvalidArgument, "gradient tolerance must be >= 0");
  if (const auto* ann = std::get_if<AnnFamily>(&family)) {
    for (std::size_t s : ann->hidden) {
      if (s == 0) throw Error(ErrorCode::InvalidArgument, "hidden layer sizes must be >= 1");
    }
  }

  std::vector<double> w = initial_weights(family, data.feature_dim(), config.seed);
  FitResult result{make_hypothesis(family, data.feature_dim(), w), {}, false, 0};
  const double initial_risk = empirical_risk(kind, result.hypothesis, data);
  result.risk_trace.push_back(initial_risk);

  for (std::size_t it = 0;; ++it) {
    const auto grad = risk_gradient(kind, result.hypothesis, data);
    if (detail::inf_norm(grad) <= config.grad_tolerance) {
      result.converged = true;
      break;
    }
    if (it == config.max_iterations) break;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= config.step_size * grad[j];
    if (!all_finite(w)) {
      throw Error(ErrorCode::DivergenceDetected, "weights became non-finite; reduce the step size");
    }
    result.hypothesis = make_hypothesis(family, data.feature_dim(), w);
    const double risk = empirical_risk(kind, result.hypothesis, data);
    result.risk_trace.push_back(risk);
    result.iterations_used = it + 1;
    if (!std::isfinite(risk) || risk > 1e6 * initial_risk) {
      throw Error(ErrorCode::DivergenceDetected,
                  "risk grew from " + std::to_string(initial_risk) + " to " + std::to_string(risk) +
                      " after " + std::to_string(it + 1) + " iterations; reduce the step size");
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Brute-force oracles

using Objective = std::function<double(std::span<const double>)>;

/// Central differences (f(w + h·e_j) − f(w − h·e_j)) / 2h per coordinate.
inline std::vector<double> finite_difference_gradient(const Objective& objective, std::span<const double> w,
                                                      double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be > 0");
  std::vector<double> probe(w.begin(), w.end());
  std::vector<double> grad(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    probe[j] = w[j] + step;
    const double up = objective(probe);
    probe[j] = w[j] - step;
    const double down = objective(probe);
    probe[j] = w[j];
    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw Error(ErrorCode::NonFiniteObjective, "objective is not finite near coordinate " + std::to_string(j));
    }
    grad[j] = (up - down) / (2.0 * step);
  }
  return grad;
}

struct GridMinimum {
  double argmin = 0.0;
  double min_value = 0.0;
};

/// Evaluates `steps` equally spaced points on [lo, hi] (endpoints included)
/// and returns the first one attaining the minimum.
inline GridMinimum grid_search_1d(const std::function<double(double)>& objective, double lo, double hi,
                                  std::size_t steps) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::InvalidArgument, "grid search needs finite lo < hi");
  }
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "grid search needs >= 2 steps");
  GridMinimum best;
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double w = k + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(k) / denom;
    const double v = objective(w);
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteObjective, "objective is not finite at " + std::to_string(w));
    if (k == 0 || v < best.min_value) best = {w, v};
  }
  return best;
}

}  // namespace erm
