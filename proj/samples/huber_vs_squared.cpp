// Fits squared-error and Huber linear predictors to a dataset with one
// corrupted label and prints both weights.

#include <cstdio>

#include "erm/erm.hpp"

int main() {
  const auto clean = erm::generate_awgn_dataset({15.0}, 20, {}, 1.0, 7);
  const auto corrupt = erm::corrupt_point(clean, erm::leftmost_index(clean), -20.0);

  for (const auto* data : {&clean, &corrupt}) {
    const auto sq = erm::least_squares_closed_form(*data);
    const auto huber = erm::fit_linear_huber(*data, 1.0, 10000, 1e-12);
    std::printf("%-8s squared w=%.6f  huber w=%.6f (%zu iterations)\n", data == &clean ? "clean" : "corrupt",
                sq.weights()[0], erm::hypothesis_weights(huber.hypothesis)[0], huber.iterations_used);
  }
}
