// Acceptance gate for the pin-corpus analysis toolkit. Each criterion
// re-derives its expectations independently of the library (hand traces,
// O(n^2) recounts, long-double brute-force formulas, a local Jacobi
// eigensolver) and prints exactly one PASS/FAIL line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pinlab/content.hpp"
#include "pinlab/corpus.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/evaluate.hpp"
#include "pinlab/features.hpp"
#include "pinlab/kernel_ridge.hpp"
#include "pinlab/learn.hpp"
#include "pinlab/lineage.hpp"
#include "pinlab/pipeline.hpp"
#include "pinlab/relieff.hpp"
#include "pinlab/rng.hpp"
#include "pinlab/share_metrics.hpp"
#include "pinlab/stats.hpp"
#include "pinlab/synth.hpp"
#include "pinlab/temporal.hpp"
#include "pinlab/textio.hpp"

namespace fs = std::filesystem;
using namespace pinlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void expect(Outcome& out, bool cond, const std::string& what) {
  if (!cond) {
    out.ok = false;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += what;
  }
}

void expect_near(Outcome& out, double got, double want, double tol, const std::string& what) {
  if (!(std::fabs(got - want) <= tol)) {
    std::ostringstream msg;
    msg << what << " got " << got << " want " << want;
    expect(out, false, msg.str());
  }
}

// ---------------------------------------------------------------- fixtures

void add_board(Corpus& c, const std::string& id, std::int64_t followers) {
  BoardRecord b;
  b.board_id = id;
  b.follower_count = followers;
  c.boards.emplace(id, b);
  c.by_board.emplace(id, std::vector<std::string>{});
}

void add_pin(Corpus& c, const std::string& id, const std::string& board_id,
             const std::string& image_id, std::int64_t created, std::int64_t likes,
             std::int64_t repins) {
  PinRecord p;
  p.pin_id = id;
  p.board_id = board_id;
  p.image_id = image_id;
  p.created_at = created;
  p.likes = likes;
  p.repins = repins;
  c.pins.emplace(id, p);
  c.by_board[board_id].push_back(id);
  c.by_image[image_id].push_back(id);
}

void sort_indexes(Corpus& c) {
  for (auto& [id, v] : c.by_board) std::sort(v.begin(), v.end());
  for (auto& [id, v] : c.by_image) std::sort(v.begin(), v.end());
}

// ------------------------------------------------------------ brute oracles

double brute_ks_d(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> points = a;
  points.insert(points.end(), b.begin(), b.end());
  const auto cdf = [](const std::vector<double>& v, double t) {
    std::size_t c = 0;
    for (const double x : v)
      if (x <= t) ++c;
    return static_cast<double>(c) / static_cast<double>(v.size());
  };
  double d = 0.0;
  for (const double t : points) d = std::max(d, std::fabs(cdf(a, t) - cdf(b, t)));
  return d;
}

double brute_ks_p(const std::vector<double>& a, const std::vector<double>& b, double d) {
  const long double n1 = static_cast<long double>(a.size());
  const long double n2 = static_cast<long double>(b.size());
  const long double t = std::sqrt(static_cast<double>(n1 * n2 / (n1 + n2))) *
                        static_cast<long double>(d);
  if (t <= 0.0L) return 1.0;
  long double sum = 0.0L;
  for (long k = 1; k <= 4000000; ++k) {
    const long double term = std::exp(static_cast<double>(-2.0L * k * k * t * t));
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-19L) break;
  }
  const long double q = 2.0L * sum;
  return static_cast<double>(std::min(1.0L, std::max(0.0L, q)));
}

double brute_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  long double mx = 0.0L, my = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<long double>(n);
  my /= static_cast<long double>(n);
  long double sxy = 0.0L, sxx = 0.0L, syy = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx;
    const long double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return static_cast<double>(sxy / std::sqrt(static_cast<double>(sxx * syy)));
}

std::vector<double> brute_midranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double brute_auc(const std::vector<int>& truth, const std::vector<double>& scores) {
  double won = 0.0, pairs = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] != 1) continue;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (truth[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j])
        won += 1.0;
      else if (scores[i] == scores[j])
        won += 0.5;
    }
  }
  return won / pairs;
}

// Cyclic Jacobi eigenvalues of a symmetric matrix.
std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 200; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-24) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  return eig;
}

// ----------------------------------------------------------- shared corpus

struct SharedData {
  Corpus corpus;
  LineageMap lineages;
  FeatureSchema schema;
  std::vector<FeatureVector> vectors;
};

const SharedData& shared_default_corpus() {
  static const SharedData data = [] {
    const SynthOutput out = generate(default_synth_config());
    IngestResult ingest =
        ingest_corpus_text(out.boards_jsonl, "boards.jsonl", out.pins_jsonl, "pins.jsonl");
    SharedData d;
    d.corpus = std::move(ingest.corpus);
    d.lineages = resolve_lineages(d.corpus);
    d.schema = fit_schema(d.corpus, d.lineages, default_vocabulary(), TorsoParams{},
                          MetricFlags{});
    d.vectors = vectorize_all(d.corpus, d.lineages, d.schema, default_vocabulary());
    return d;
  }();
  return data;
}

// -------------------------------------------------------------- criteria

// Every share, lineage and tempo metric on a three-board fixture whose
// values are small enough to verify with pencil and paper.
Outcome criterion_hand_trace() {
  Outcome out;
  Corpus c;
  add_board(c, "A", 900);
  add_board(c, "B", 40);
  add_board(c, "C", 5);
  add_pin(c, "A1", "A", "imgX", 100, 10, 4);
  add_pin(c, "B1", "B", "imgX", 200, 3, 1);
  add_pin(c, "C1", "C", "imgX", 400, 5, 3);
  add_pin(c, "A2", "A", "imgY", 150, 7, 2);
  add_pin(c, "B2", "B", "imgZ", 50, 2, 0);
  add_pin(c, "A3", "A", "imgZ", 300, 6, 5);
  sort_indexes(c);
  const LineageMap lin = resolve_lineages(c);

  expect(out, lin.at("imgX").original == "A1", "imgX original");
  expect(out, lin.at("imgZ").original == "B2", "imgZ original");
  expect(out, lin.at("imgX").duplicates == std::vector<std::string>{"B1", "C1"},
         "imgX duplicates");

  const double tol = 1e-12;
  expect_near(out, originality_score(c, lin, "A").score, 2.0 / 3.0, tol, "originality A");
  expect_near(out, originality_score(c, lin, "B").score, 0.5, tol, "originality B");
  expect_near(out, originality_score(c, lin, "C").score, 0.0, tol, "originality C");

  expect_near(out, likes_retention(c, lin, "A"), 5.1, tol, "lrc A");
  expect_near(out, repins_retention(c, lin, "A"), 7.0 / 3.0, tol, "rrc A");
  expect_near(out, likes_production(c, lin, "A"), 3.0 / 7.0, tol, "lpc A");
  expect_near(out, repins_production(c, lin, "A"), 1.0 / 6.0, tol, "rpc A");
  expect_near(out, likes_retention(c, lin, "B"), 3.0 / 7.0, tol, "lrc B");
  expect_near(out, likes_production(c, lin, "B"), 11.0 / 4.0, tol, "lpc B");

  const std::vector<std::int64_t> copies_of_a1{200, 400};
  expect_near(out, pin_ict(copies_of_a1, false), 100.0, tol, "ict span/n");
  expect_near(out, pin_ict(copies_of_a1, true), 200.0, tol, "ict gaps-only");
  expect_near(out, pin_dos(copies_of_a1), 200.0, tol, "dos");

  const TemporalMetrics a = board_temporal_metrics(c, lin, "A", false);
  expect_near(out, *a.likes_speed, 0.04, tol, "likes speed A");
  expect_near(out, *a.repins_speed, 0.02, tol, "repins speed A");
  const TemporalMetrics b = board_temporal_metrics(c, lin, "B", false);
  expect(out, b.n_excluded_zero_dos == 1, "zero-span copy excluded on B");
  expect(out, !b.likes_speed.has_value(), "no speed average on B");
  return out;
}

// Originality on a small generated corpus against an O(n^2) recount that
// never touches the lineage index.
Outcome criterion_originality_recount() {
  Outcome out;
  SynthConfig config = default_synth_config();
  config.hfb.n_boards = 3;
  config.erb.n_boards = 3;
  config.lfb.n_boards = 3;
  const SynthOutput generated = generate(config);
  const IngestResult ingest = ingest_corpus_text(generated.boards_jsonl, "boards.jsonl",
                                                 generated.pins_jsonl, "pins.jsonl");
  const Corpus& corpus = ingest.corpus;
  expect(out, corpus.pins.size() <= 500,
         "corpus too large: " + std::to_string(corpus.pins.size()) + " pins");
  const LineageMap lineages = resolve_lineages(corpus);

  const auto earlier = [](const PinRecord& a, const PinRecord& b) {
    if (a.created_at != b.created_at) return a.created_at < b.created_at;
    if (a.board_id != b.board_id) return a.board_id < b.board_id;
    return a.pin_id < b.pin_id;
  };

  std::int64_t originality_sum = 0;
  for (const auto& [board_id, board] : corpus.boards) {
    std::int64_t brute_originals = 0;
    std::int64_t brute_total = 0;
    for (const auto& [pin_id, pin] : corpus.pins) {
      if (pin.board_id != board_id) continue;
      ++brute_total;
      bool original = true;
      for (const auto& [other_id, other] : corpus.pins) {
        if (other_id == pin_id || other.image_id != pin.image_id) continue;
        if (earlier(other, pin)) {
          original = false;
          break;
        }
      }
      if (original) ++brute_originals;
    }
    const OriginalityReport report = originality_score(corpus, lineages, board_id);
    expect(out, report.o_b == brute_originals, board_id + " o_b recount");
    expect(out, report.t_b == brute_total, board_id + " t_b recount");
    expect(out,
           report.score == static_cast<double>(brute_originals) /
                               static_cast<double>(brute_total),
           board_id + " score recount");
    originality_sum += report.o_b;
  }

  std::set<std::string> distinct_images;
  for (const auto& [pin_id, pin] : corpus.pins) distinct_images.insert(pin.image_id);
  expect(out,
         originality_sum == static_cast<std::int64_t>(distinct_images.size()),
         "sum of originals != distinct images");
  expect(out, lineages.size() == distinct_images.size(), "lineage count");
  out.detail = std::to_string(corpus.pins.size()) + " pins, " +
               std::to_string(distinct_images.size()) + " lineages";
  return out;
}

// Two-sample KS, Pearson and Spearman against long-double brute forces on
// one hundred seeded tie-heavy pairs.
Outcome criterion_stat_oracles() {
  Outcome out;
  const double tol = 1e-12;
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Rng rng(mix_seed(0xacce97, trial));
    const auto draw = [&rng](std::size_t n, double mu) {
      std::vector<double> v(n);
      for (double& x : v) x = std::round(rng.normal(mu, 1.0) * 10.0) / 10.0;
      return v;
    };

    const std::size_t n1 = 2 + static_cast<std::size_t>(rng.uniform_int(0, 198));
    const std::size_t n2 = 2 + static_cast<std::size_t>(rng.uniform_int(0, 198));
    const std::vector<double> a = draw(n1, 0.0);
    const std::vector<double> b = draw(n2, rng.uniform(0.0, 0.8));

    const KSResult ks = ks_two_sample(a, b);
    const double d_ref = brute_ks_d(a, b);
    const double p_ref = brute_ks_p(a, b, d_ref);
    worst = std::max(worst, std::fabs(ks.d_statistic - d_ref));
    worst = std::max(worst, std::fabs(ks.p_value - p_ref));
    expect_near(out, ks.d_statistic, d_ref, tol, "ks d trial " + std::to_string(trial));
    expect_near(out, ks.p_value, p_ref, tol, "ks p trial " + std::to_string(trial));

    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform_int(0, 197));
    std::vector<double> x, y;
    do {
      x = draw(n, 0.0);
      y.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = std::round((0.6 * x[i] + rng.normal(0.0, 0.8)) * 10.0) / 10.0;
    } while (sample_stddev(x) == 0.0 || sample_stddev(y) == 0.0 ||
             sample_stddev(brute_midranks(x)) == 0.0 ||
             sample_stddev(brute_midranks(y)) == 0.0);

    const double r_ref = brute_pearson(x, y);
    worst = std::max(worst, std::fabs(pearson(x, y) - r_ref));
    expect_near(out, pearson(x, y), r_ref, tol, "pearson trial " + std::to_string(trial));

    const double s_ref = brute_pearson(brute_midranks(x), brute_midranks(y));
    worst = std::max(worst, std::fabs(spearman(x, y) - s_ref));
    expect_near(out, spearman(x, y), s_ref, tol, "spearman trial " + std::to_string(trial));
  }
  std::ostringstream detail;
  detail << "100 trials, worst |diff| " << worst;
  out.detail = detail.str();
  return out;
}

// Learner machinery: analytic gradient vs finite differences, kernel
// matrix PSD via local Jacobi, rank AUC vs pair counting, and bit-exact
// retraining under a fixed seed.
Outcome criterion_learner_integrity() {
  Outcome out;

  for (std::uint64_t round = 0; round < 3; ++round) {
    Rng rng(mix_seed(0x9d, round));
    Matrix x;
    std::vector<int> y;
    std::vector<double> w(6);
    for (std::size_t i = 0; i < 30; ++i) {
      std::vector<double> row(6);
      for (double& v : row) v = rng.normal(0.0, 1.0);
      x.push_back(std::move(row));
      y.push_back(rng.uniform01() < 0.5 ? 0 : 1);
    }
    for (double& v : w) v = rng.normal(0.0, 0.7);
    const double bias = rng.normal(0.0, 0.5);
    const double lambda = 1e-3;

    std::vector<double> grad_w;
    double grad_b = 0.0;
    logistic_gradient(x, y, w, bias, lambda, grad_w, grad_b);
    const double h = 1e-6;
    double max_rel = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      std::vector<double> wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      const double fd =
          (logistic_loss(x, y, wp, bias, lambda) - logistic_loss(x, y, wm, bias, lambda)) /
          (2.0 * h);
      max_rel = std::max(max_rel, std::fabs(fd - grad_w[j]) /
                                      std::max(1e-8, std::fabs(fd) + std::fabs(grad_w[j])));
    }
    const double fd_b =
        (logistic_loss(x, y, w, bias + h, lambda) - logistic_loss(x, y, w, bias - h, lambda)) /
        (2.0 * h);
    max_rel = std::max(max_rel, std::fabs(fd_b - grad_b) /
                                    std::max(1e-8, std::fabs(fd_b) + std::fabs(grad_b)));
    expect(out, max_rel <= 1e-5,
           "gradient mismatch " + std::to_string(max_rel) + " round " + std::to_string(round));
  }

  for (const double omega : {1.0, 2.0}) {
    Rng rng(77);
    const std::size_t n = 40;
    Matrix points;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row(5);
      for (double& v : row) v = rng.normal(0.0, 1.0);
      points.push_back(std::move(row));
    }
    Matrix k(n, std::vector<double>(n, 0.0));
    const double sigma = std::sqrt(5.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        k[i][j] = puk_kernel(points[i], points[j], omega, sigma);
    const std::vector<double> eig = jacobi_eigenvalues(k);
    const double min_eig = *std::min_element(eig.begin(), eig.end());
    expect(out, min_eig >= -1e-8,
           "kernel matrix eigenvalue " + std::to_string(min_eig) + " at omega " +
               std::to_string(omega));
  }

  {
    Rng rng(31);
    std::vector<int> truth;
    std::vector<double> scores;
    for (std::size_t i = 0; i < 200; ++i) {
      truth.push_back(rng.uniform01() < 0.45 ? 1 : 0);
      scores.push_back(std::round(rng.uniform01() * 25.0) / 25.0);
    }
    truth[0] = 1;
    truth[1] = 0;
    expect_near(out, roc_auc(truth, scores), brute_auc(truth, scores), 1e-12, "auc");
  }

  {
    Rng rng(13);
    Matrix x;
    std::vector<int> y;
    for (int cls = 0; cls < 2; ++cls) {
      for (std::size_t i = 0; i < 30; ++i) {
        const double c = cls == 0 ? -2.0 : 2.0;
        x.push_back({c + rng.normal(0.0, 0.6), c + rng.normal(0.0, 0.6)});
        y.push_back(cls);
      }
    }
    const TrainConfig config;
    for (const ClassifierKind kind : {ClassifierKind::LOGISTIC, ClassifierKind::LINEAR_SVM,
                                      ClassifierKind::RANDOM_FOREST}) {
      const ClassifierModel m1 = train_classifier(kind, x, y, config, 1234);
      const ClassifierModel m2 = train_classifier(kind, x, y, config, 1234);
      bool identical = true;
      for (double px = -3.0; px <= 3.0 && identical; px += 0.25)
        identical = predict_score(m1, {px, -px}) == predict_score(m2, {px, -px});
      if (kind != ClassifierKind::RANDOM_FOREST)
        identical = identical && m1.weights == m2.weights && m1.bias == m2.bias;
      expect(out, identical,
             std::string("retraining not bit-exact for ") + classifier_kind_to_string(kind));
    }
  }
  return out;
}

// Ten-fold forest CV separates the popularity classes and cannot separate
// the two popular classes from each other.
Outcome criterion_forest_cv() {
  Outcome out;
  const SharedData& d = shared_default_corpus();
  const TrainConfig config;
  std::ostringstream detail;
  const auto run = [&](const std::string& name) {
    const TaskData data = task_data(d.vectors, task_from_string(name), true, 42);
    const EvalReport report =
        cross_validate(ClassifierKind::RANDOM_FOREST, data.x, data.y, 10, config, 42);
    detail << name << "=" << report.accuracy << " ";
    return report.accuracy;
  };
  expect(out, run("hfb-vs-lfb") >= 0.90, "hfb-vs-lfb accuracy below 0.90");
  expect(out, run("erb-vs-lfb") >= 0.90, "erb-vs-lfb accuracy below 0.90");
  expect(out, run("erb-vs-hfb") <= 0.75, "erb-vs-hfb accuracy above 0.75");
  out.detail = detail.str();
  return out;
}

// Kernel ridge regression of log follower counts on a 4:1 holdout.
Outcome criterion_follower_regression() {
  Outcome out;
  const SharedData& d = shared_default_corpus();

  std::vector<int> strata;
  strata.reserve(d.vectors.size());
  for (const auto& v : d.vectors) strata.push_back(static_cast<int>(v.label));
  const auto [train_idx, test_idx] = stratified_split(strata, 4, 1, 42);

  Matrix train_x, test_x;
  std::vector<double> train_t, test_t;
  for (const std::size_t i : train_idx) {
    train_x.push_back(d.vectors[i].values);
    train_t.push_back(d.vectors[i].target);
  }
  for (const std::size_t i : test_idx) {
    test_x.push_back(d.vectors[i].values);
    test_t.push_back(d.vectors[i].target);
  }
  const RegressorModel model = train_regressor(train_x, train_t, 1.0, 1.0, 0.0, 42);
  std::vector<double> predictions;
  predictions.reserve(test_x.size());
  for (const auto& x : test_x) predictions.push_back(predict_regression(model, x));
  const RegressionEval eval = evaluate_regression(predictions, test_t);

  std::ostringstream detail;
  detail << "rho=" << eval.pearson_rho << " nrmse=" << eval.normalized_rmse << " ("
         << train_idx.size() << ":" << test_idx.size() << ")";
  out.detail = detail.str();
  expect(out, eval.pearson_rho >= 0.80, "pearson rho below 0.80");
  expect(out, eval.normalized_rmse <= 0.20, "normalized rmse above 0.20");
  return out;
}

// The two like/repin retention coefficients must surface among the top
// five features separating popular from low-popularity boards.
Outcome criterion_retention_ranks_high() {
  Outcome out;
  const SharedData& d = shared_default_corpus();
  const TaskData data = task_data(d.vectors, task_from_string("hfb-vs-lfb"), true, 42);
  const std::vector<RankedFeature> ranked =
      relieff_rank(data.x, data.y, d.schema.names, 10, 0, 42);

  std::size_t lrc_pos = ranked.size(), rrc_pos = ranked.size();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (ranked[i].name == "lrc") lrc_pos = i;
    if (ranked[i].name == "rrc") rrc_pos = i;
  }
  std::ostringstream detail;
  detail << "lrc at " << (lrc_pos + 1) << ", rrc at " << (rrc_pos + 1) << " of "
         << ranked.size();
  out.detail = detail.str();
  expect(out, lrc_pos < 5, "lrc outside top 5");
  expect(out, rrc_pos < 5, "rrc outside top 5");
  return out;
}

// Popular boards differ from low-follower boards with KS p < 0.05 on the
// headline metrics for every generator seed from 1 to 10.
Outcome criterion_separation_across_seeds() {
  Outcome out;
  const std::set<std::string> required{"originality", "lrc", "rrc", "dos", "female_fraction"};
  double worst_p = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SynthConfig config = default_synth_config();
    config.seed = seed;
    const SynthOutput generated = generate(config);
    const IngestResult ingest = ingest_corpus_text(generated.boards_jsonl, "boards.jsonl",
                                                   generated.pins_jsonl, "pins.jsonl");
    const LineageMap lineages = resolve_lineages(ingest.corpus);
    const auto rows =
        separation_report(ingest.corpus, lineages, default_vocabulary(), MetricFlags{});
    std::set<std::string> seen;
    for (const SeparationRow& row : rows) {
      if (!required.count(row.metric)) continue;
      seen.insert(row.metric);
      worst_p = std::max(worst_p, row.ks.p_value);
      expect(out, row.ks.p_value < 0.05,
             row.metric + " p=" + std::to_string(row.ks.p_value) + " at seed " +
                 std::to_string(seed));
    }
    expect(out, seen == required, "missing metrics at seed " + std::to_string(seed));
  }
  std::ostringstream detail;
  detail << "50 checks, worst p " << worst_p;
  out.detail = detail.str();
  return out;
}

// The whole pipeline, run twice into different directories, must produce
// byte-identical files.
Outcome criterion_reproducible_pipeline() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / "pinlab_acceptance_repro";
  fs::remove_all(root);

  const auto run_all = [](const fs::path& base) {
    std::ostringstream sink;
    const std::string synth_dir = (base / "synth").string();
    SynthOptions synth;
    synth.output_dir = synth_dir;
    synth.seed = 42;
    run_synth(synth, sink);

    MetricsOptions metrics;
    metrics.input_dir = synth_dir;
    metrics.output_dir = (base / "metrics").string();
    run_metrics(metrics, sink);

    FeaturesOptions features;
    features.input_dir = synth_dir;
    features.output_dir = (base / "features").string();
    features.emit_tables = true;
    run_features(features, sink);

    TrainOptions train;
    train.input_dir = synth_dir;
    train.output_dir = (base / "train").string();
    run_train(train, sink);

    RankOptions rank;
    rank.input_dir = synth_dir;
    rank.output_dir = (base / "rank").string();
    run_rank(rank, sink);

    ReportOptions report;
    report.input_dir = synth_dir;
    report.output_dir = (base / "report").string();
    run_report(report, sink);
  };

  run_all(root / "a");
  run_all(root / "b");

  const auto listing = [&root](const fs::path& base) {
    std::vector<std::string> rel;
    for (const auto& entry : fs::recursive_directory_iterator(base))
      if (entry.is_regular_file())
        rel.push_back(fs::relative(entry.path(), base).string());
    std::sort(rel.begin(), rel.end());
    return rel;
  };
  const std::vector<std::string> files_a = listing(root / "a");
  const std::vector<std::string> files_b = listing(root / "b");
  expect(out, files_a == files_b, "file sets differ");
  expect(out, !files_a.empty(), "no files produced");
  std::size_t compared = 0;
  for (const std::string& rel : files_a) {
    const std::string a = read_text_file((root / "a" / rel).string());
    const std::string b = read_text_file((root / "b" / rel).string());
    if (a != b) expect(out, false, rel + " differs between runs");
    ++compared;
  }
  out.detail = std::to_string(compared) + " files compared";
  fs::remove_all(root);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
    double time_limit_s;  // 0 = no limit
  };
  const Criterion criteria[] = {
      {"hand-traced lineage, share and tempo metrics", &criterion_hand_trace, 1.0},
      {"originality matches O(n^2) recount", &criterion_originality_recount, 5.0},
      {"ks/pearson/spearman match brute force within 1e-12", &criterion_stat_oracles, 10.0},
      {"gradients, kernel PSD, AUC and bit-exact retraining", &criterion_learner_integrity,
       0.0},
      {"10-fold forest CV separates popularity classes", &criterion_forest_cv, 300.0},
      {"kernel ridge predicts log followers on 4:1 holdout", &criterion_follower_regression,
       120.0},
      {"retention coefficients rank in top 5 features", &criterion_retention_ranks_high,
       120.0},
      {"popular-vs-low KS significant for seeds 1-10", &criterion_separation_across_seeds,
       0.0},
      {"two pipeline runs are byte-identical", &criterion_reproducible_pipeline, 0.0},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.time_limit_s > 0.0 && elapsed >= criterion.time_limit_s) {
      outcome.ok = false;
      if (!outcome.detail.empty()) outcome.detail += "; ";
      outcome.detail += "over time budget of " + std::to_string(criterion.time_limit_s) + "s";
    }
    std::cout << (outcome.ok ? "PASS" : "FAIL") << " criterion " << index << ": "
              << criterion.name << " (" << std::fixed << std::setprecision(2) << elapsed
              << "s)";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
    if (!outcome.detail.empty()) std::cout << " [" << outcome.detail << "]";
    std::cout << "\n" << std::flush;
    if (!outcome.ok) ++failures;
  }

  std::cout << (9 - failures) << "/9 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
