// erm: generate data, fit (hypothesis, loss) pairs, and run the single-outlier
// robustness experiment from the command line.
//
// Exit status: 0 success, 1 runtime or numeric failure, 2 usage error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "erm/erm.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GenDataArgs {
  std::string model;
  std::vector<double> true_w;
  std::size_t m = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  double x_lo = -1.0;
  double x_hi = 1.0;
  std::string out;
};

struct FitArgs {
  std::string data;
  std::string family;
  std::string loss;
  double huber_c = erm::HuberLoss::kDefaultThreshold;
  std::string solver = "auto";
  double step = 0.1;
  std::size_t iters = 1000;
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  std::vector<std::size_t> hidden{3};
  std::string activation = "sigmoid";
  std::string out;
};

struct RobustnessArgs {
  erm::RobustnessConfig config;
  std::string outdir;
};

struct PlotArgs {
  std::string in;
  std::string out;
};

int run_gen_data(const GenDataArgs& a) {
  const erm::UniformSampler sampler{a.x_lo, a.x_hi};
  const auto data = a.model == "awgn" ? erm::generate_awgn_dataset(a.true_w, a.m, sampler, a.sigma, a.seed)
                                      : erm::generate_logistic_dataset(a.true_w, a.m, sampler, a.seed);
  erm::save_csv(a.out, data);
  std::cout << "model=" << a.model << " true_w=" << erm::format_list(a.true_w) << " m=" << a.m;
  if (a.model == "awgn") std::cout << " sigma=" << erm::format_double(a.sigma);
  std::cout << " seed=" << a.seed << " x_lo=" << erm::format_double(a.x_lo)
            << " x_hi=" << erm::format_double(a.x_hi) << " out=" << a.out << '\n';
  return 0;
}

int run_fit(const FitArgs& a) {
  const auto loss = erm::parse_loss(a.loss, a.huber_c);
  const bool closed_ok = a.family == "linear" && a.loss == "squared";
  std::string solver = a.solver;
  if (solver == "auto") solver = closed_ok ? "closed" : "gd";
  if (solver == "closed" && !closed_ok) {
    std::cerr << "error: --solver closed is only available for --family linear --loss squared\n";
    return kExitUsage;
  }

  const auto data = erm::load_csv(a.data, erm::required_label_space(loss));
  erm::FitResult fit{erm::LinearHypothesis({0.0}), {}, true, 0};
  if (solver == "closed") {
    fit.hypothesis = erm::least_squares_closed_form(data);
    fit.risk_trace.push_back(erm::empirical_risk(loss, fit.hypothesis, data));
  } else {
    erm::HypothesisFamily family = erm::LinearFamily{};
    if (a.family == "ann") family = erm::AnnFamily{a.hidden, erm::parse_activation(a.activation)};
    const erm::GdConfig config{a.step, a.iters, a.tolerance, a.seed};
    fit = erm::gradient_descent_fit(family, loss, data, config);
  }

  erm::save_hypothesis(a.out, fit.hypothesis);
  if (data.feature_dim() == 1) {
    erm::save_plot_csv(a.out + ".plot.csv", data, erm::predict_all(fit.hypothesis, data));
  }
  std::cout << "risk=" << erm::format_double(fit.risk_trace.back())
            << " w=" << erm::format_list(erm::hypothesis_weights(fit.hypothesis)) << " iters=" << fit.iterations_used
            << " converged=" << (fit.converged ? "true" : "false") << '\n';
  return 0;
}

int run_robustness(const RobustnessArgs& a) {
  const auto outcome = erm::run_robustness(a.config);
  erm::write_robustness_outputs(outcome, a.outdir);
  std::cout << erm::format_report(outcome.report);
  return outcome.report.robustness_ratio > 1.0 ? 0 : kExitFailure;
}

int run_plot(const PlotArgs& a) {
  erm::emit_svg(a.in, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical risk minimization with pluggable data, hypotheses, and losses"};
  app.require_subcommand(1);

  GenDataArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset CSV");
  gen_cmd->add_option("--model", gen.model, "Label model")->required()->check(CLI::IsMember({"awgn", "logistic"}));
  gen_cmd->add_option("--true-w", gen.true_w, "True weight vector (comma separated)")->required()->delimiter(',');
  gen_cmd->add_option("--m", gen.m, "Number of points")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--sigma", gen.sigma, "Noise standard deviation (awgn)")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--x-lo", gen.x_lo, "Lower bound of the uniform feature sampler");
  gen_cmd->add_option("--x-hi", gen.x_hi, "Upper bound of the uniform feature sampler");
  gen_cmd->add_option("--out", gen.out, "Output CSV")->required();

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a hypothesis by minimizing empirical risk");
  fit_cmd->add_option("--data", fit.data, "Dataset CSV")->required();
  fit_cmd->add_option("--family", fit.family, "Hypothesis family")->required()->check(CLI::IsMember({"linear", "ann"}));
  fit_cmd->add_option("--loss", fit.loss, "Loss function")
      ->required()
      ->check(CLI::IsMember({"squared", "logistic", "huber"}));
  fit_cmd->add_option("--huber-c", fit.huber_c, "Huber threshold")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--solver", fit.solver, "closed, gd, or auto (closed form when available)")
      ->check(CLI::IsMember({"auto", "closed", "gd"}));
  fit_cmd->add_option("--step", fit.step, "Gradient descent step size")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--iters", fit.iters, "Maximum gradient descent iterations")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--tol", fit.tolerance, "Gradient infinity-norm stopping tolerance")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--seed", fit.seed, "Seed for network weight initialization");
  fit_cmd->add_option("--hidden", fit.hidden, "Hidden layer sizes for --family ann")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--activation", fit.activation, "Hidden activation for --family ann")
      ->check(CLI::IsMember({"identity", "relu", "sigmoid"}));
  fit_cmd->add_option("--out", fit.out, "Output model file")->required();

  RobustnessArgs rob;
  auto* rob_cmd = app.add_subcommand("robustness", "Squared vs Huber loss under a single corrupted point");
  rob_cmd->add_option("--m", rob.config.m, "Number of points")->check(CLI::PositiveNumber);
  rob_cmd->add_option("--true-w", rob.config.true_w, "True weight");
  rob_cmd->add_option("--sigma", rob.config.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
  rob_cmd->add_option("--seed", rob.config.seed, "RNG seed");
  rob_cmd->add_option("--outlier-label", rob.config.outlier_label, "Label assigned to the left-most point");
  rob_cmd->add_option("--huber-c", rob.config.huber_c, "Huber threshold")->check(CLI::PositiveNumber);
  rob_cmd->add_option("--outdir", rob.outdir, "Output directory")->required();

  PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot-svg", "Render an x,y,yhat CSV as SVG");
  plot_cmd->add_option("--in", plot.in, "Plot CSV with columns x,y,yhat")->required();
  plot_cmd->add_option("--out", plot.out, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen_data(gen);
    if (*fit_cmd) return run_fit(fit);
    if (*rob_cmd) return run_robustness(rob);
    if (*plot_cmd) return run_plot(plot);
  } catch (const erm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
