#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>

#include "erm/dataset.hpp"
#include "erm/error.hpp"
#include "erm/hypothesis.hpp"

namespace erm {

/// (y − ŷ)²
struct SquaredLoss {
  friend bool operator==(const SquaredLoss&, const SquaredLoss&) = default;
};

/// log(1 + exp(−y·ŷ)) for y ∈ {−1, +1}
struct LogisticLoss {
  friend bool operator==(const LogisticLoss&, const LogisticLoss&) = default;
};

/// ½r² for |r| ≤ c, c(|r| − c/2) otherwise, with r = y − ŷ.
class HuberLoss {
 public:
  static constexpr double kDefaultThreshold = 1.0;

  explicit HuberLoss(double c = kDefaultThreshold) : c_(c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorCode::InvalidArgument, "huber threshold must be > 0");
  }
  double threshold() const noexcept { return c_; }

  friend bool operator==(const HuberLoss&, const HuberLoss&) = default;

 private:
  double c_;
};

using LossKind = std::variant<SquaredLoss, LogisticLoss, HuberLoss>;

inline LabelSpace required_label_space(const LossKind& kind) {
  return std::holds_alternative<LogisticLoss>(kind) ? LabelSpace::Binary : LabelSpace::Real;
}

inline std::string_view loss_name(const LossKind& kind) {
  if (std::holds_alternative<SquaredLoss>(kind)) return "squared";
  if (std::holds_alternative<LogisticLoss>(kind)) return "logistic";
  return "huber";
}

inline LossKind parse_loss(std::string_view name, double huber_c = HuberLoss::kDefaultThreshold) {
  if (name == "squared") return SquaredLoss{};
  if (name == "logistic") return LogisticLoss{};
  if (name == "huber") return HuberLoss(huber_c);
  throw Error(ErrorCode::InvalidArgument, "unknown loss `" + std::string(name) + "`");
}

namespace detail {

inline double huber_quadratic(double r) { return 0.5 * r * r; }
inline double huber_linear(double r, double c) { return c * (std::abs(r) - c / 2.0); }
inline double huber_quadratic_derivative(double r) { return -r; }
inline double huber_linear_derivative(double r, double c) { return r > 0.0 ? -c : (r < 0.0 ? c : 0.0); }

/// log(1 + exp(−t)) without overflow.
inline double softplus_neg(double t) {
  if (-t > 30.0) return -t + std::log1p(std::exp(t));
  return std::log1p(std::exp(-t));
}

inline double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

inline void check_loss_inputs(const LossKind& kind, double y, double yhat) {
  if (!std::isfinite(y) || !std::isfinite(yhat)) throw Error(ErrorCode::NonFiniteInput, "loss inputs must be finite");
  if (std::holds_alternative<LogisticLoss>(kind) && y != 1.0 && y != -1.0) {
    throw Error(ErrorCode::InvalidLabel, "logistic loss needs y in {-1,+1}");
  }
}

}  // namespace detail

inline double loss_value(const LossKind& kind, double y, double yhat) {
  detail::check_loss_inputs(kind, y, yhat);
  if (std::holds_alternative<SquaredLoss>(kind)) {
    const double r = y - yhat;
    return r * r;
  }
  if (std::holds_alternative<LogisticLoss>(kind)) return detail::softplus_neg(y * yhat);
  const double c = std::get<HuberLoss>(kind).threshold();
  const double r = y - yhat;
  return std::abs(r) <= c ? detail::huber_quadratic(r) : detail::huber_linear(r, c);
}

/// ∂ℒ/∂ŷ. At Huber's |r| = c the quadratic-branch value is returned; both
/// branches agree there.
inline double loss_derivative(const LossKind& kind, double y, double yhat) {
  detail::check_loss_inputs(kind, y, yhat);
  if (std::holds_alternative<SquaredLoss>(kind)) return -2.0 * (y - yhat);
  if (std::holds_alternative<LogisticLoss>(kind)) return -y * detail::sigmoid(-y * yhat);
  const double c = std::get<HuberLoss>(kind).threshold();
  const double r = y - yhat;
  return std::abs(r) <= c ? detail::huber_quadratic_derivative(r) : detail::huber_linear_derivative(r, c);
}

namespace detail {

inline void check_compatible(const LossKind& kind, const Hypothesis& h, const Dataset& data) {
  check_dim(data.feature_dim(), input_dim(h), "hypothesis input vs dataset features");
  if (required_label_space(kind) != data.label_space()) {
    throw Error(ErrorCode::LabelSpaceMismatch,
                std::string(loss_name(kind)) + " loss is incompatible with the dataset's label space");
  }
}

}  // namespace detail

/// (1/m) Σᵢ ℒ(y⁽ⁱ⁾, h(x⁽ⁱ⁾)), summed in dataset order.
inline double empirical_risk(const LossKind& kind, const Hypothesis& h, const Dataset& data) {
  detail::check_compatible(kind, h, data);
  double sum = 0.0;
  for (const auto& p : data) sum += loss_value(kind, p.label, predict(h, p.features));
  return sum / static_cast<double>(data.size());
}

/// Negative log-likelihood of the labels under y = h(x) + ε, ε ~ N(0, σ²):
/// (m/2)·log(2πσ²) + Σᵢ (y⁽ⁱ⁾ − h(x⁽ⁱ⁾))² / (2σ²).
inline double gaussian_nll(const Hypothesis& h, const Dataset& data, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::InvalidArgument, "sigma must be > 0");
  detail::check_compatible(SquaredLoss{}, h, data);
  double sum = 0.0;
  for (const auto& p : data) {
    const double r = p.label - predict(h, p.features);
    sum += r * r;
  }
  const double m = static_cast<double>(data.size());
  const double var = sigma * sigma;
  return 0.5 * m * std::log(2.0 * std::numbers::pi * var) + sum / (2.0 * var);
}

/// Negative log-likelihood under Prob{y = +1} = 1/(1 + exp(−h(x))):
/// Σᵢ log(1 + exp(−y⁽ⁱ⁾·h(x⁽ⁱ⁾))).
inline double logistic_nll(const Hypothesis& h, const Dataset& data) {
  detail::check_compatible(LogisticLoss{}, h, data);
  double sum = 0.0;
  for (const auto& p : data) sum += detail::softplus_neg(p.label * predict(h, p.features));
  return sum;
}

}  // namespace erm
