#include "pinlab/kernel_ridge.hpp"

#include <cmath>

#include "pinlab/errors.hpp"
#include "pinlab/kern.hpp"

namespace pinlab {

double puk_kernel(std::span<const double> x, std::span<const double> y, double omega,
                  double sigma) {
  if (x.size() != y.size())
    throw Error("DimensionMismatch", "puk_kernel inputs differ in length");
  if (!(omega > 0.0) || !(sigma > 0.0))
    throw Error("InvalidConfig", "puk_kernel needs omega > 0 and sigma > 0");
  const double dist = std::sqrt(kern_squared_distance(x, y));
  const double scale = 2.0 * dist * std::sqrt(std::pow(2.0, 1.0 / omega) - 1.0) / sigma;
  return 1.0 / std::pow(1.0 + scale * scale, omega);
}

std::vector<double> cholesky_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = a.size();
  if (n == 0 || b.size() != n)
    throw Error("DimensionMismatch", "cholesky_solve shape mismatch");
  // In-place lower Cholesky: a = L L^T.
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a[j][j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j][k] * a[j][k];
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw Error("SingularSystem", "matrix is not positive definite");
    a[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i][j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i][k] * a[j][k];
      a[i][j] = v / a[j][j];
    }
  }
  // Forward then back substitution.
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i][k] * b[k];
    b[i] = v / a[i][i];
  }
  for (std::size_t ii = n; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k][i] * b[k];
    b[i] = v / a[i][i];
  }
  return b;
}

RegressorModel train_regressor(const Matrix& x, const std::vector<double>& targets,
                               double lambda, double omega, double sigma,
                               std::uint64_t seed) {
  if (x.size() < 5 || x.size() != targets.size())
    throw Error("TooFewExamples", "regressor needs at least 5 examples with targets");
  if (!(lambda > 0.0)) throw Error("InvalidConfig", "lambda must be positive");
  for (const double t : targets)
    if (!std::isfinite(t)) throw Error("SingularSystem", "non-finite target");

  RegressorModel model;
  model.omega = omega;
  model.sigma = sigma > 0.0 ? sigma : std::sqrt(static_cast<double>(x[0].size()));
  model.lambda = lambda;
  model.seed = seed;
  model.standardizer.fit(x);
  model.support = model.standardizer.apply_all(x);

  const std::size_t n = x.size();
  double tm = 0.0;
  for (const double t : targets) tm += t;
  model.target_mean = tm / static_cast<double>(n);

  Matrix k(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    k[i][i] = 1.0 + lambda;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = puk_kernel(model.support[i], model.support[j], model.omega, model.sigma);
      k[i][j] = v;
      k[j][i] = v;
    }
  }
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = targets[i] - model.target_mean;
  model.alpha = cholesky_solve(std::move(k), std::move(centered));
  return model;
}

double predict_regression(const RegressorModel& model, const std::vector<double>& x) {
  const std::vector<double> z = model.standardizer.apply(x);
  double acc = model.target_mean;
  for (std::size_t i = 0; i < model.support.size(); ++i)
    acc += model.alpha[i] * puk_kernel(model.support[i], z, model.omega, model.sigma);
  return acc;
}

}  // namespace pinlab
