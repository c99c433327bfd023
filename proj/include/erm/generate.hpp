#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "erm/dataset.hpp"
#include "erm/random.hpp"

namespace erm {

/// Independent Uniform(lo, hi) per feature coordinate.
struct UniformSampler {
  double lo = -1.0;
  double hi = 1.0;
};

namespace detail {

inline void check_generator_args(const FeatureVector& true_weights, std::size_t m, const UniformSampler& s) {
  if (m == 0) throw Error(ErrorCode::ZeroPoints, "m must be >= 1");
  if (true_weights.empty()) throw Error(ErrorCode::DimensionMismatch, "true weights must be non-empty");
  if (!all_finite(true_weights)) throw Error(ErrorCode::NonFiniteInput, "true weights must be finite");
  if (!(std::isfinite(s.lo) && std::isfinite(s.hi) && s.lo < s.hi)) {
    throw Error(ErrorCode::InvalidSamplerRange, "sampler needs finite lo < hi");
  }
}

inline double dot(const FeatureVector& w, const FeatureVector& x) {
  double acc = 0.0;
  for (std::size_t r = 0; r < w.size(); ++r) acc += w[r] * x[r];
  return acc;
}

}  // namespace detail

/// Labels y = w̄ᵀx + ε with ε ~ N(0, noise_sigma²) i.i.d. For each point the
/// features are drawn first, then the noise.
inline Dataset generate_awgn_dataset(const FeatureVector& true_weights, std::size_t m, const UniformSampler& sampler,
                                     double noise_sigma, std::uint64_t seed) {
  detail::check_generator_args(true_weights, m, sampler);
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::InvalidArgument, "noise sigma must be finite and >= 0");
  }
  CounterRng rng(seed);
  std::vector<LabeledPoint> points;
  points.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    FeatureVector x(true_weights.size());
    for (double& v : x) v = rng.uniform(sampler.lo, sampler.hi);
    const double noise = rng.standard_normal();
    double y = detail::dot(true_weights, x);
    if (noise_sigma > 0.0) y += noise_sigma * noise;
    points.push_back({std::move(x), y});
  }
  return Dataset(std::move(points), LabelSpace::Real);
}

/// Binary labels with Prob{y = +1} = 1 / (1 + exp(-w̄ᵀx)).
inline Dataset generate_logistic_dataset(const FeatureVector& true_weights, std::size_t m,
                                         const UniformSampler& sampler, std::uint64_t seed) {
  detail::check_generator_args(true_weights, m, sampler);
  CounterRng rng(seed);
  std::vector<LabeledPoint> points;
  points.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    FeatureVector x(true_weights.size());
    for (double& v : x) v = rng.uniform(sampler.lo, sampler.hi);
    const double score = detail::dot(true_weights, x);
    const double p_plus = 1.0 / (1.0 + std::exp(-score));
    const double y = rng.next_unit() < p_plus ? 1.0 : -1.0;
    points.push_back({std::move(x), y});
  }
  return Dataset(std::move(points), LabelSpace::Binary);
}

}  // namespace erm
