#pragma once

// Single-outlier robustness experiment: fit squared-error and Huber linear
// predictors on a clean 1-D dataset and on a copy whose left-most point has a
// corrupted label, then compare how far each fitted weight moves.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "erm/csv.hpp"
#include "erm/dataset.hpp"
#include "erm/generate.hpp"
#include "erm/loss.hpp"
#include "erm/solvers.hpp"

namespace erm {

struct RobustnessConfig {
  std::size_t m = 20;
  double true_w = 15.0;
  double sigma = 1.0;
  std::uint64_t seed = 7;
  double outlier_label = -20.0;
  double huber_c = HuberLoss::kDefaultThreshold;
  UniformSampler sampler{};
  std::size_t huber_max_iterations = 100000;
  double huber_grad_tolerance = 1e-12;
};

struct RobustnessReport {
  double w_clean_sq = 0.0;
  double w_corrupt_sq = 0.0;
  double w_clean_huber = 0.0;
  double w_corrupt_huber = 0.0;
  double deviation_sq = 0.0;
  double deviation_huber = 0.0;
  double robustness_ratio = 0.0;
  std::size_t outlier_index = 0;
  std::size_t iters_clean_huber = 0;
  std::size_t iters_corrupt_huber = 0;
  bool converged_clean_huber = false;
  bool converged_corrupt_huber = false;
};

struct RobustnessOutcome {
  RobustnessReport report;
  Dataset clean;
  Dataset corrupt;
};

inline constexpr const char* kCleanSqCsv = "clean_sq.csv";
inline constexpr const char* kCorruptSqCsv = "corrupt_sq.csv";
inline constexpr const char* kCleanHuberCsv = "clean_huber.csv";
inline constexpr const char* kCorruptHuberCsv = "corrupt_huber.csv";
inline constexpr const char* kReportFile = "report.txt";

/// Gradient descent on the linear Huber risk with step 1/L, L the risk's
/// gradient Lipschitz constant.
inline FitResult fit_linear_huber(const Dataset& data, double c, std::size_t max_iterations, double grad_tolerance) {
  const HuberLoss loss(c);
  GdConfig config;
  config.step_size = 1.0 / linear_risk_smoothness(loss, data);
  config.max_iterations = max_iterations;
  config.grad_tolerance = grad_tolerance;
  return gradient_descent_fit(LinearFamily{}, loss, data, config);
}

inline double robustness_ratio(double deviation_sq, double deviation_huber) {
  if (deviation_huber > 0.0) return deviation_sq / deviation_huber;
  return deviation_sq > 0.0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
}

inline RobustnessOutcome run_robustness(const RobustnessConfig& config) {
  Dataset clean = generate_awgn_dataset({config.true_w}, config.m, config.sampler, config.sigma, config.seed);
  const std::size_t outlier = leftmost_index(clean);
  Dataset corrupt = corrupt_point(clean, outlier, config.outlier_label);

  RobustnessReport r;
  r.outlier_index = outlier;
  r.w_clean_sq = least_squares_closed_form(clean).weights()[0];
  r.w_corrupt_sq = least_squares_closed_form(corrupt).weights()[0];

  const auto clean_huber = fit_linear_huber(clean, config.huber_c, config.huber_max_iterations,
                                            config.huber_grad_tolerance);
  const auto corrupt_huber = fit_linear_huber(corrupt, config.huber_c, config.huber_max_iterations,
                                              config.huber_grad_tolerance);
  r.w_clean_huber = hypothesis_weights(clean_huber.hypothesis)[0];
  r.w_corrupt_huber = hypothesis_weights(corrupt_huber.hypothesis)[0];
  r.iters_clean_huber = clean_huber.iterations_used;
  r.iters_corrupt_huber = corrupt_huber.iterations_used;
  r.converged_clean_huber = clean_huber.converged;
  r.converged_corrupt_huber = corrupt_huber.converged;

  r.deviation_sq = std::abs(r.w_corrupt_sq - r.w_clean_sq);
  r.deviation_huber = std::abs(r.w_corrupt_huber - r.w_clean_huber);
  r.robustness_ratio = robustness_ratio(r.deviation_sq, r.deviation_huber);
  return {r, std::move(clean), std::move(corrupt)};
}

/// key=value lines in a fixed order; file names are relative to the output
/// directory.
inline std::string format_report(const RobustnessReport& r) {
  std::ostringstream out;
  out << "w_clean_sq=" << format_double(r.w_clean_sq) << '\n'
      << "w_corrupt_sq=" << format_double(r.w_corrupt_sq) << '\n'
      << "w_clean_huber=" << format_double(r.w_clean_huber) << '\n'
      << "w_corrupt_huber=" << format_double(r.w_corrupt_huber) << '\n'
      << "deviation_sq=" << format_double(r.deviation_sq) << '\n'
      << "deviation_huber=" << format_double(r.deviation_huber) << '\n'
      << "robustness_ratio=" << format_double(r.robustness_ratio) << '\n'
      << "outlier_index=" << r.outlier_index << '\n'
      << "iters_clean_huber=" << r.iters_clean_huber << '\n'
      << "iters_corrupt_huber=" << r.iters_corrupt_huber << '\n'
      << "converged_clean_huber=" << (r.converged_clean_huber ? "true" : "false") << '\n'
      << "converged_corrupt_huber=" << (r.converged_corrupt_huber ? "true" : "false") << '\n'
      << "clean_sq_csv=" << kCleanSqCsv << '\n'
      << "corrupt_sq_csv=" << kCorruptSqCsv << '\n'
      << "clean_huber_csv=" << kCleanHuberCsv << '\n'
      << "corrupt_huber_csv=" << kCorruptHuberCsv << '\n';
  return out.str();
}

/// Writes the four plot files and report.txt into `outdir`, creating it if needed.
inline void write_robustness_outputs(const RobustnessOutcome& outcome, const std::filesystem::path& outdir) {
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + outdir.string() + ": " + ec.message());
  const auto& r = outcome.report;
  auto predictions = [](const Dataset& data, double w) {
    std::vector<double> out;
    for (const auto& p : data) out.push_back(w * p.features[0]);
    return out;
  };
  save_plot_csv(outdir / kCleanSqCsv, outcome.clean, predictions(outcome.clean, r.w_clean_sq));
  save_plot_csv(outdir / kCorruptSqCsv, outcome.corrupt, predictions(outcome.corrupt, r.w_corrupt_sq));
  save_plot_csv(outdir / kCleanHuberCsv, outcome.clean, predictions(outcome.clean, r.w_clean_huber));
  save_plot_csv(outdir / kCorruptHuberCsv, outcome.corrupt, predictions(outcome.corrupt, r.w_corrupt_huber));
  detail::write_file(outdir / kReportFile, format_report(r));
}

}  // namespace erm
