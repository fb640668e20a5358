#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinlab/forest.hpp"

namespace pinlab {

using Matrix = std::vector<std::vector<double>>;

enum class ClassifierKind { LOGISTIC, LINEAR_SVM, RANDOM_FOREST };

ClassifierKind classifier_kind_from_string(const std::string& s);
const char* classifier_kind_to_string(ClassifierKind kind);

// Per-feature z-score fitted on training data; constant features pass
// through centered (divisor 1).
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> stddev;

  void fit(const Matrix& x);
  std::vector<double> apply(const std::vector<double>& x) const;
  Matrix apply_all(const Matrix& x) const;
};

struct TrainConfig {
  double logistic_step = 0.5;
  double logistic_lambda = 1e-4;
  double logistic_tol = 1e-6;
  int logistic_max_epochs = 5000;
  double svm_lambda = 1e-4;
  int svm_epochs = 50;
  ForestConfig forest;
};

struct ClassifierModel {
  ClassifierKind kind = ClassifierKind::LOGISTIC;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  Standardizer standardizer;
  // linear models
  std::vector<double> weights;
  double bias = 0.0;
  // trees
  Forest forest;
};

// y holds 0/1. Labels must contain both classes.
ClassifierModel train_classifier(ClassifierKind kind, const Matrix& x,
                                 const std::vector<int>& y, const TrainConfig& config,
                                 std::uint64_t seed);

// Probability-like score in [0,1]; hard label = score >= 0.5.
double predict_score(const ClassifierModel& model, const std::vector<double>& x);
int predict_label(const ClassifierModel& model, const std::vector<double>& x);

// Mean L2-regularized logistic loss and its gradient (bias unpenalized);
// exposed so the gradient can be checked against finite differences.
double logistic_loss(const Matrix& x, const std::vector<int>& y,
                     const std::vector<double>& weights, double bias, double lambda);
void logistic_gradient(const Matrix& x, const std::vector<int>& y,
                       const std::vector<double>& weights, double bias, double lambda,
                       std::vector<double>& grad_w, double& grad_b);

// Indices of a class-balanced subset: the majority class is downsampled
// (seeded, without replacement) to the minority count. Order is sorted.
std::vector<std::size_t> balance_classes(const std::vector<int>& y, std::uint64_t seed);

}  // namespace pinlab
