#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pinlab/learn.hpp"

namespace pinlab {

// Pearson VII universal kernel:
//   k(x,y) = 1 / (1 + (2 * ||x-y|| * sqrt(2^(1/omega) - 1) / sigma)^2)^omega
double puk_kernel(std::span<const double> x, std::span<const double> y, double omega,
                  double sigma);

struct RegressorModel {
  double omega = 1.0;
  double sigma = 1.0;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  Standardizer standardizer;
  Matrix support;
  std::vector<double> alpha;
  double target_mean = 0.0;
};

// Kernel ridge regression with the PUK kernel on z-scored features and
// centered targets: solves (K + lambda*I) alpha = t by Cholesky.
// sigma <= 0 resolves to sqrt(dim), which keeps the kernel responsive at
// this feature count (unit sigma collapses it toward zero).
RegressorModel train_regressor(const Matrix& x, const std::vector<double>& targets,
                               double lambda = 1.0, double omega = 1.0, double sigma = 0.0,
                               std::uint64_t seed = 0);

double predict_regression(const RegressorModel& model, const std::vector<double>& x);

// (K + lambda*I) solve helper: plain Cholesky, throws SingularSystem when
// the matrix is not positive definite.
std::vector<double> cholesky_solve(Matrix a, std::vector<double> b);

}  // namespace pinlab
