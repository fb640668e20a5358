#include "pinlab/learn.hpp"

#include <algorithm>
#include <cmath>

#include "pinlab/errors.hpp"
#include "pinlab/kern.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

ClassifierKind classifier_kind_from_string(const std::string& s) {
  if (s == "lr" || s == "LOGISTIC") return ClassifierKind::LOGISTIC;
  if (s == "svm" || s == "LINEAR_SVM") return ClassifierKind::LINEAR_SVM;
  if (s == "rf" || s == "RANDOM_FOREST") return ClassifierKind::RANDOM_FOREST;
  throw Error("InvalidConfig", "unknown classifier kind " + s);
}

const char* classifier_kind_to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::LOGISTIC: return "LOGISTIC";
    case ClassifierKind::LINEAR_SVM: return "LINEAR_SVM";
    case ClassifierKind::RANDOM_FOREST: return "RANDOM_FOREST";
  }
  return "LOGISTIC";
}

void Standardizer::fit(const Matrix& x) {
  if (x.empty()) throw Error("TooFewExamples", "cannot standardize an empty matrix");
  const std::size_t d = x[0].size();
  mean.assign(d, 0.0);
  stddev.assign(d, 1.0);
  const double n = static_cast<double>(x.size());
  for (const auto& row : x)
    for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
  for (std::size_t j = 0; j < d; ++j) mean[j] /= n;
  std::vector<double> acc(d, 0.0);
  for (const auto& row : x)
    for (std::size_t j = 0; j < d; ++j) acc[j] += (row[j] - mean[j]) * (row[j] - mean[j]);
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(acc[j] / n);
    stddev[j] = sd > 0.0 ? sd : 1.0;
  }
}

std::vector<double> Standardizer::apply(const std::vector<double>& x) const {
  if (x.size() != mean.size())
    throw Error("SchemaMismatch", "standardizer dimension mismatch");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean[j]) / stddev[j];
  return out;
}

Matrix Standardizer::apply_all(const Matrix& x) const {
  Matrix out;
  out.reserve(x.size());
  for (const auto& row : x) out.push_back(apply(row));
  return out;
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_labels(const std::vector<int>& y) {
  bool has0 = false, has1 = false;
  for (const int v : y) {
    if (v == 0) has0 = true;
    else if (v == 1) has1 = true;
    else throw Error("DegenerateLabels", "labels must be 0 or 1");
  }
  if (!has0 || !has1) throw Error("DegenerateLabels", "need both classes present");
}

void train_logistic(const Matrix& x, const std::vector<int>& y, const TrainConfig& cfg,
                    ClassifierModel& model) {
  const std::size_t n = x.size();
  const std::size_t d = x[0].size();
  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  std::vector<double> grad_w(d, 0.0);
  double grad_b = 0.0;
  for (int epoch = 0; epoch < cfg.logistic_max_epochs; ++epoch) {
    logistic_gradient(x, y, model.weights, model.bias, cfg.logistic_lambda, grad_w, grad_b);
    double max_grad = std::fabs(grad_b);
    for (const double g : grad_w) max_grad = std::max(max_grad, std::fabs(g));
    if (max_grad <= cfg.logistic_tol) break;
    for (std::size_t j = 0; j < d; ++j) model.weights[j] -= cfg.logistic_step * grad_w[j];
    model.bias -= cfg.logistic_step * grad_b;
  }
  (void)n;
}

// Pegasos-style stochastic subgradient descent on the hinge loss.
void train_linear_svm(const Matrix& x, const std::vector<int>& y, const TrainConfig& cfg,
                      std::uint64_t seed, ClassifierModel& model) {
  const std::size_t n = x.size();
  const std::size_t d = x[0].size();
  model.weights.assign(d, 0.0);
  model.bias = 0.0;
  Rng rng(mix_seed(seed, 0x51a5));
  const std::int64_t steps = static_cast<std::int64_t>(cfg.svm_epochs) * static_cast<std::int64_t>(n);
  for (std::int64_t t = 1; t <= steps; ++t) {
    const std::size_t i =
        static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const double target = y[i] == 1 ? 1.0 : -1.0;
    const double eta = 1.0 / (cfg.svm_lambda * static_cast<double>(t));
    const double margin = target * (kern_dot(x[i], model.weights) + model.bias);
    const double shrink = 1.0 - eta * cfg.svm_lambda;
    for (double& w : model.weights) w *= shrink;
    if (margin < 1.0) {
      for (std::size_t j = 0; j < d; ++j) model.weights[j] += eta * target * x[i][j];
      model.bias += eta * target;
    }
  }
}

}  // namespace

double logistic_loss(const Matrix& x, const std::vector<int>& y,
                     const std::vector<double>& weights, double bias, double lambda) {
  const double n = static_cast<double>(x.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double z = kern_dot(x[i], weights) + bias;
    // log(1 + exp(-t)) with t = z for y=1, -z for y=0, stably.
    const double t = y[i] == 1 ? z : -z;
    loss += t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
  }
  loss /= n;
  double reg = 0.0;
  for (const double w : weights) reg += w * w;
  return loss + 0.5 * lambda * reg;
}

void logistic_gradient(const Matrix& x, const std::vector<int>& y,
                       const std::vector<double>& weights, double bias, double lambda,
                       std::vector<double>& grad_w, double& grad_b) {
  const std::size_t d = weights.size();
  const double n = static_cast<double>(x.size());
  grad_w.assign(d, 0.0);
  grad_b = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double err = sigmoid(kern_dot(x[i], weights) + bias) - static_cast<double>(y[i]);
    for (std::size_t j = 0; j < d; ++j) grad_w[j] += err * x[i][j];
    grad_b += err;
  }
  for (std::size_t j = 0; j < d; ++j) grad_w[j] = grad_w[j] / n + lambda * weights[j];
  grad_b /= n;
}

ClassifierModel train_classifier(ClassifierKind kind, const Matrix& x,
                                 const std::vector<int>& y, const TrainConfig& config,
                                 std::uint64_t seed) {
  if (x.empty() || x.size() != y.size())
    throw Error("TooFewExamples", "need one label per example and at least one example");
  check_labels(y);

  ClassifierModel model;
  model.kind = kind;
  model.seed = seed;
  model.dim = x[0].size();

  if (kind == ClassifierKind::RANDOM_FOREST) {
    model.forest = train_forest(x, y, config.forest, seed);
    return model;
  }

  model.standardizer.fit(x);
  const Matrix z = model.standardizer.apply_all(x);
  if (kind == ClassifierKind::LOGISTIC)
    train_logistic(z, y, config, model);
  else
    train_linear_svm(z, y, config, seed, model);
  return model;
}

double predict_score(const ClassifierModel& model, const std::vector<double>& x) {
  if (x.size() != model.dim) throw Error("SchemaMismatch", "feature vector dimension mismatch");
  if (model.kind == ClassifierKind::RANDOM_FOREST) return forest_score(model.forest, x);
  const std::vector<double> z = model.standardizer.apply(x);
  return sigmoid(kern_dot(z, model.weights) + model.bias);
}

int predict_label(const ClassifierModel& model, const std::vector<double>& x) {
  return predict_score(model, x) >= 0.5 ? 1 : 0;
}

std::vector<std::size_t> balance_classes(const std::vector<int>& y, std::uint64_t seed) {
  check_labels(y);
  std::vector<std::size_t> zeros, ones;
  for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 1 ? ones : zeros).push_back(i);
  const std::size_t target = std::min(zeros.size(), ones.size());
  Rng rng(mix_seed(seed, 0xba1a));
  const auto downsample = [&rng, target](std::vector<std::size_t>& v) {
    if (v.size() > target) {
      rng.shuffle(v);
      v.resize(target);
    }
  };
  downsample(zeros);
  downsample(ones);
  std::vector<std::size_t> out;
  out.reserve(2 * target);
  out.insert(out.end(), zeros.begin(), zeros.end());
  out.insert(out.end(), ones.begin(), ones.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pinlab
