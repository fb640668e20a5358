#include "pinlab/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pinlab/errors.hpp"
#include "pinlab/rng.hpp"
#include "pinlab/stats.hpp"

namespace pinlab {

double roc_auc(std::span<const int> truth, std::span<const double> scores) {
  if (truth.size() != scores.size())
    throw Error("DimensionMismatch", "roc_auc inputs differ in length");
  double n_pos = 0.0, n_neg = 0.0;
  for (const int t : truth) (t == 1 ? n_pos : n_neg) += 1.0;
  if (n_pos == 0.0 || n_neg == 0.0)
    throw Error("DegenerateLabels", "roc_auc needs both classes");
  const std::vector<double> ranks = mid_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i] == 1) rank_sum += ranks[i];
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

FoldMetrics classification_metrics(std::span<const int> truth, std::span<const int> predicted,
                                   std::span<const double> scores) {
  if (truth.size() != predicted.size() || truth.size() != scores.size())
    throw Error("DimensionMismatch", "metric inputs differ in length");
  if (truth.empty()) throw Error("EmptySample", "no test examples");
  double tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == 1)
      (truth[i] == 1 ? tp : fp) += 1.0;
    else
      (truth[i] == 0 ? tn : fn) += 1.0;
  }
  FoldMetrics m;
  m.accuracy = (tp + tn) / static_cast<double>(truth.size());
  m.precision = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  m.roc_auc = roc_auc(truth, scores);
  return m;
}

namespace {

// Seeded per-class round-robin deal; every fold sees both classes.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& y, std::size_t k,
                                                       std::uint64_t seed) {
  std::vector<std::size_t> zeros, ones;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 1 ? ones : zeros).push_back(i);
  Rng rng(mix_seed(seed, 0xf01d));
  rng.shuffle(zeros);
  rng.shuffle(ones);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t next = 0;
  for (const std::size_t i : zeros) folds[next++ % k].push_back(i);
  for (const std::size_t i : ones) folds[next++ % k].push_back(i);
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

}  // namespace

EvalReport cross_validate(ClassifierKind kind, const Matrix& x, const std::vector<int>& y,
                          std::size_t k, const TrainConfig& config, std::uint64_t seed) {
  if (k < 2) throw Error("InvalidConfig", "cross-validation needs k >= 2");
  if (x.size() < k || x.size() != y.size())
    throw Error("TooFewExamples", "need at least k labeled examples");
  std::size_t counts[2] = {0, 0};
  for (const int v : y) {
    if (v != 0 && v != 1) throw Error("DegenerateLabels", "labels must be 0 or 1");
    ++counts[v];
  }
  if (counts[0] < k || counts[1] < k)
    throw Error("TooFewExamples", "each class needs at least k members for stratified folds");

  const auto folds = stratified_folds(y, k, seed);
  EvalReport report;
  for (std::size_t f = 0; f < k; ++f) {
    std::vector<bool> in_test(x.size(), false);
    for (const std::size_t i : folds[f]) in_test[i] = true;
    Matrix train_x;
    std::vector<int> train_y;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!in_test[i]) {
        train_x.push_back(x[i]);
        train_y.push_back(y[i]);
      }
    }
    const ClassifierModel model =
        train_classifier(kind, train_x, train_y, config, mix_seed(seed, f));

    std::vector<int> truth, predicted;
    std::vector<double> scores;
    for (const std::size_t i : folds[f]) {
      truth.push_back(y[i]);
      const double score = predict_score(model, x[i]);
      scores.push_back(score);
      predicted.push_back(score >= 0.5 ? 1 : 0);
    }
    report.folds.push_back(classification_metrics(truth, predicted, scores));
  }

  for (const FoldMetrics& m : report.folds) {
    report.accuracy += m.accuracy;
    report.precision += m.precision;
    report.recall += m.recall;
    report.f1 += m.f1;
    report.roc_auc += m.roc_auc;
  }
  const double nk = static_cast<double>(k);
  report.accuracy /= nk;
  report.precision /= nk;
  report.recall /= nk;
  report.f1 /= nk;
  report.roc_auc /= nk;
  return report;
}

RegressionEval evaluate_regression(std::span<const double> predictions,
                                   std::span<const double> targets) {
  if (predictions.size() != targets.size() || targets.size() < 2)
    throw Error("DegenerateVariance", "need at least 2 prediction/target pairs");
  const auto [lo, hi] = std::minmax_element(targets.begin(), targets.end());
  if (*hi == *lo) throw Error("DegenerateVariance", "targets have zero range");
  double sq = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i)
    sq += (predictions[i] - targets[i]) * (predictions[i] - targets[i]);
  RegressionEval eval;
  eval.pearson_rho = pearson(predictions, targets);
  eval.normalized_rmse = std::sqrt(sq / static_cast<double>(targets.size())) / (*hi - *lo);
  return eval;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const std::vector<int>& y, std::size_t a, std::size_t b, std::uint64_t seed) {
  if (a == 0 || b == 0) throw Error("InvalidConfig", "split ratio parts must be positive");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  Rng rng(mix_seed(seed, 0x5317));
  std::vector<std::size_t> train, test;
  for (auto& [cls, idx] : by_class) {
    rng.shuffle(idx);
    const std::size_t n_test = (idx.size() * b) / (a + b);
    for (std::size_t i = 0; i < idx.size(); ++i)
      (i < n_test ? test : train).push_back(idx[i]);
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {train, test};
}

}  // namespace pinlab
