#pragma once

// Hypothesis families: linear predictors h(x) = wᵀx, decision trees whose
// internal nodes test ‖x − center‖ ≤ radius, and bias-free feedforward
// networks with a linear output neuron.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "erm/dataset.hpp"
#include "erm/error.hpp"

namespace erm {

namespace detail {

inline void check_dim(std::size_t got, std::size_t expected, const char* what) {
  if (got != expected) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": got dimension " + std::to_string(got) + ", expected " + std::to_string(expected));
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear

class LinearHypothesis {
 public:
  explicit LinearHypothesis(FeatureVector weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw Error(ErrorCode::DimensionMismatch, "linear hypothesis needs >= 1 weight");
    if (!all_finite(weights_)) throw Error(ErrorCode::NonFiniteInput, "linear weights must be finite");
  }

  const FeatureVector& weights() const noexcept { return weights_; }
  std::size_t input_dim() const noexcept { return weights_.size(); }

  friend bool operator==(const LinearHypothesis&, const LinearHypothesis&) = default;

 private:
  FeatureVector weights_;
};

/// Σ_r w_r x_r, summed left to right.
inline double linear_predict(const LinearHypothesis& h, std::span<const double> x) {
  detail::check_dim(x.size(), h.input_dim(), "linear_predict");
  double acc = 0.0;
  const auto& w = h.weights();
  for (std::size_t r = 0; r < w.size(); ++r) acc += w[r] * x[r];
  return acc;
}

/// ∂(wᵀx)/∂w = x.
inline std::vector<double> linear_weight_gradient(const LinearHypothesis& h, std::span<const double> x) {
  detail::check_dim(x.size(), h.input_dim(), "linear_weight_gradient");
  return {x.begin(), x.end()};
}

// ---------------------------------------------------------------------------
// Decision tree

struct TreeNode {
  bool is_leaf = true;
  double value = 0.0;  // leaf only
  FeatureVector center;  // internal only
  double radius = 0.0;
  std::size_t no_child = 0;
  std::size_t yes_child = 0;

  static TreeNode leaf(double value) { return TreeNode{true, value, {}, 0.0, 0, 0}; }
  static TreeNode split(FeatureVector center, double radius, std::size_t no_child, std::size_t yes_child) {
    return TreeNode{false, 0.0, std::move(center), radius, no_child, yes_child};
  }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Nodes are stored flat with the root at index 0; internal nodes refer to
/// their children by index.
class DecisionTreeHypothesis {
 public:
  DecisionTreeHypothesis(std::size_t input_dim, std::vector<TreeNode> nodes)
      : input_dim_(input_dim), nodes_(std::move(nodes)) {
    validate();
  }

  std::size_t input_dim() const noexcept { return input_dim_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }

  friend bool operator==(const DecisionTreeHypothesis&, const DecisionTreeHypothesis&) = default;

 private:
  void validate() const {
    auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, "decision tree: " + msg); };
    if (input_dim_ == 0) bad("input dimension must be >= 1");
    if (nodes_.empty() || nodes_.front().is_leaf) bad("root must be an internal node");
    std::vector<int> parents(nodes_.size(), 0);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& node = nodes_[i];
      if (node.is_leaf) {
        if (!std::isfinite(node.value)) bad("leaf value must be finite");
        continue;
      }
      if (!(node.radius > 0.0) || !std::isfinite(node.radius)) bad("radius must be positive and finite");
      if (node.center.size() != input_dim_) {
        throw Error(ErrorCode::DimensionMismatch, "decision tree: center dimension differs from input dimension");
      }
      if (!all_finite(node.center)) bad("center must be finite");
      for (std::size_t child : {node.no_child, node.yes_child}) {
        if (child == 0 || child >= nodes_.size()) bad("child index out of range");
        ++parents[child];
      }
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (parents[i] != 1) bad("node " + std::to_string(i) + " must have exactly one parent");
    }
    // One parent per non-root node leaves cycles detached from the root as the
    // only failure mode; a reachability walk rules them out.
    std::vector<std::size_t> stack{0};
    std::size_t visited = 0;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      ++visited;
      if (!nodes_[i].is_leaf) {
        stack.push_back(nodes_[i].no_child);
        stack.push_back(nodes_[i].yes_child);
      }
    }
    if (visited != nodes_.size()) bad("nodes unreachable from the root");
  }

  std::size_t input_dim_;
  std::vector<TreeNode> nodes_;
};

/// Walks from the root, taking the yes-branch iff ‖x − center‖ ≤ radius.
inline double tree_predict(const DecisionTreeHypothesis& h, std::span<const double> x) {
  detail::check_dim(x.size(), h.input_dim(), "tree_predict");
  const auto& nodes = h.nodes();
  std::size_t i = 0;
  while (!nodes[i].is_leaf) {
    const auto& node = nodes[i];
    double d2 = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
      const double d = x[r] - node.center[r];
      d2 += d * d;
    }
    i = std::sqrt(d2) <= node.radius ? node.yes_child : node.no_child;
  }
  return nodes[i].value;
}

// ---------------------------------------------------------------------------
// Feedforward network

enum class Activation { Identity, Relu, Sigmoid };

inline double activate(Activation g, double z) {
  switch (g) {
    case Activation::Identity: return z;
    case Activation::Relu: return z > 0.0 ? z : 0.0;
    case Activation::Sigmoid:
      if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
      {
        const double e = std::exp(z);
        return e / (1.0 + e);
      }
  }
  return z;
}

/// g'(z); Relu uses 0 at its kink.
inline double activation_derivative(Activation g, double z) {
  switch (g) {
    case Activation::Identity: return 1.0;
    case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::Sigmoid: {
      const double s = activate(Activation::Sigmoid, z);
      return s * (1.0 - s);
    }
  }
  return 1.0;
}

/// Bias-free network. Layer k is a (size[k+1] × size[k]) matrix stored
/// row-major, layers concatenated in order. For topology {2,3,1} this puts
/// w1..w9 in the order of the classic two-input figure: hidden neuron j reads
/// (w_{2j+1}, w_{2j+2}) and the output reads (w7, w8, w9). The activation
/// applies to hidden layers only; the output neuron is linear.
class AnnHypothesis {
 public:
  AnnHypothesis(std::vector<std::size_t> topology, Activation activation, std::vector<double> weights)
      : topology_(std::move(topology)), activation_(activation), weights_(std::move(weights)) {
    if (topology_.size() < 2) throw Error(ErrorCode::InvalidArgument, "ann topology needs >= 2 layers");
    for (std::size_t s : topology_) {
      if (s == 0) throw Error(ErrorCode::InvalidArgument, "ann layer sizes must be >= 1");
    }
    if (topology_.back() != 1) throw Error(ErrorCode::InvalidArgument, "ann output layer must have size 1");
    detail::check_dim(weights_.size(), weight_count(topology_), "ann weights");
    if (!all_finite(weights_)) throw Error(ErrorCode::NonFiniteInput, "ann weights must be finite");
  }

  static std::size_t weight_count(std::span<const std::size_t> topology) {
    std::size_t count = 0;
    for (std::size_t k = 0; k + 1 < topology.size(); ++k) count += topology[k] * topology[k + 1];
    return count;
  }

  const std::vector<std::size_t>& topology() const noexcept { return topology_; }
  Activation activation() const noexcept { return activation_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  std::size_t input_dim() const noexcept { return topology_.front(); }
  std::size_t layer_count() const noexcept { return topology_.size() - 1; }

  /// Offset of layer k's matrix inside weights().
  std::size_t layer_offset(std::size_t k) const noexcept {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) off += topology_[j] * topology_[j + 1];
    return off;
  }

  double weight(std::size_t layer, std::size_t row, std::size_t col) const {
    return weights_[layer_offset(layer) + row * topology_[layer] + col];
  }

  friend bool operator==(const AnnHypothesis&, const AnnHypothesis&) = default;

 private:
  std::vector<std::size_t> topology_;
  Activation activation_;
  std::vector<double> weights_;
};

namespace detail {

struct AnnTrace {
  std::vector<std::vector<double>> inputs;          // inputs[k]: input to layer k (a_0 = x)
  std::vector<std::vector<double>> preactivations;  // preactivations[k] = W_k · inputs[k]
};

inline AnnTrace ann_trace(const AnnHypothesis& h, std::span<const double> x) {
  AnnTrace t;
  const auto& topo = h.topology();
  t.inputs.emplace_back(x.begin(), x.end());
  for (std::size_t k = 0; k < h.layer_count(); ++k) {
    const auto& in = t.inputs.back();
    const double* w = h.weights().data() + h.layer_offset(k);
    std::vector<double> z(topo[k + 1], 0.0);
    for (std::size_t r = 0; r < z.size(); ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < in.size(); ++c) acc += w[r * in.size() + c] * in[c];
      z[r] = acc;
    }
    if (k + 1 < h.layer_count()) {
      std::vector<double> a(z.size());
      for (std::size_t r = 0; r < z.size(); ++r) a[r] = activate(h.activation(), z[r]);
      t.inputs.push_back(std::move(a));
    }
    t.preactivations.push_back(std::move(z));
  }
  return t;
}

}  // namespace detail

inline double ann_forward(const AnnHypothesis& h, std::span<const double> x) {
  detail::check_dim(x.size(), h.input_dim(), "ann_forward");
  return detail::ann_trace(h, x).preactivations.back()[0];
}

/// ∂output/∂w for every weight, in the same flat order as weights().
inline std::vector<double> ann_weight_gradient(const AnnHypothesis& h, std::span<const double> x) {
  detail::check_dim(x.size(), h.input_dim(), "ann_weight_gradient");
  const auto t = detail::ann_trace(h, x);
  std::vector<double> grad(h.weights().size(), 0.0);
  std::vector<double> delta{1.0};  // ∂output/∂z for the current layer
  for (std::size_t k = h.layer_count(); k-- > 0;) {
    const auto& in = t.inputs[k];
    const std::size_t off = h.layer_offset(k);
    for (std::size_t r = 0; r < delta.size(); ++r) {
      for (std::size_t c = 0; c < in.size(); ++c) grad[off + r * in.size() + c] = delta[r] * in[c];
    }
    if (k == 0) break;
    std::vector<double> prev(in.size(), 0.0);
    const double* w = h.weights().data() + off;
    for (std::size_t c = 0; c < in.size(); ++c) {
      double acc = 0.0;
      for (std::size_t r = 0; r < delta.size(); ++r) acc += w[r * in.size() + c] * delta[r];
      prev[c] = acc * activation_derivative(h.activation(), t.preactivations[k - 1][c]);
    }
    delta = std::move(prev);
  }
  return grad;
}

// ---------------------------------------------------------------------------
// Any hypothesis

using Hypothesis = std::variant<LinearHypothesis, DecisionTreeHypothesis, AnnHypothesis>;

inline double predict(const LinearHypothesis& h, std::span<const double> x) { return linear_predict(h, x); }
inline double predict(const DecisionTreeHypothesis& h, std::span<const double> x) { return tree_predict(h, x); }
inline double predict(const AnnHypothesis& h, std::span<const double> x) { return ann_forward(h, x); }

inline double predict(const Hypothesis& h, std::span<const double> x) {
  return std::visit([&](const auto& alt) { return predict(alt, x); }, h);
}

inline std::size_t input_dim(const Hypothesis& h) {
  return std::visit([](const auto& alt) { return alt.input_dim(); }, h);
}

inline std::vector<double> predict_all(const Hypothesis& h, const Dataset& data) {
  std::vector<double> out;
  out.reserve(data.size());
  for (const auto& p : data) out.push_back(predict(h, p.features));
  return out;
}

}  // namespace erm
