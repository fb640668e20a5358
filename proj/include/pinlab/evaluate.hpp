#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pinlab/learn.hpp"

namespace pinlab {

struct FoldMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double roc_auc = 0.0;
};

struct EvalReport {
  // Means over folds.
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double roc_auc = 0.0;
  std::vector<FoldMetrics> folds;
};

FoldMetrics classification_metrics(std::span<const int> truth, std::span<const int> predicted,
                                   std::span<const double> scores);

// Rank-based AUC (ties at half credit); equals the fraction of
// positive/negative pairs ranked correctly.
double roc_auc(std::span<const int> truth, std::span<const double> scores);

// Stratified k-fold CV: per-class index lists are shuffled by seed and
// dealt round-robin, fold f trains on the rest with seed mixed by fold.
EvalReport cross_validate(ClassifierKind kind, const Matrix& x, const std::vector<int>& y,
                          std::size_t k, const TrainConfig& config, std::uint64_t seed);

struct RegressionEval {
  double pearson_rho = 0.0;
  double normalized_rmse = 0.0;
};

// rho = pearson(predictions, targets); nrmse = RMSE / target range.
RegressionEval evaluate_regression(std::span<const double> predictions,
                                   std::span<const double> targets);

// Deterministic stratified split for `--split A:B` style holdouts:
// returns (train indices, test indices), test share = b / (a + b).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const std::vector<int>& y, std::size_t a, std::size_t b, std::uint64_t seed);

}  // namespace pinlab
