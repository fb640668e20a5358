#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pinlab/corpus.hpp"
#include "pinlab/evaluate.hpp"
#include "pinlab/features.hpp"
#include "pinlab/kernel_ridge.hpp"
#include "pinlab/relieff.hpp"
#include "pinlab/stats.hpp"

namespace pinlab {

// Binary classification target: the class named first is the positive
// one, e.g. "hfb-vs-lfb" scores HFB boards as 1.
struct TaskSpec {
  std::string name;
  Label positive = Label::HFB;
  Label negative = Label::LFB;
};

TaskSpec task_from_string(const std::string& s);

// Reads dir/boards.jsonl + dir/pins.jsonl.
IngestResult load_corpus_dir(const std::string& dir);

// Serializes a corpus back out in ingest format, boards and pins ordered
// by id.
std::string boards_jsonl(const Corpus& corpus);
std::string pins_jsonl(const Corpus& corpus);

// One row per board: identity, size, originality, share ratios, temporal
// means. Undefined metrics render as empty cells.
std::string metrics_tsv(const Corpus& corpus, const LineageMap& lineages,
                        const MetricFlags& flags);

// Header: board_id, the 91 schema names, target, label.
std::string features_tsv(const std::vector<FeatureVector>& vectors,
                         const FeatureSchema& schema);

// Per-class tuple-fraction tables, one TSV per term kind; keys are file
// basenames like "terms_fashion_bi.tsv".
std::map<std::string, std::string> term_tables(const Corpus& corpus, const Vocabulary& vocab);

struct TaskData {
  Matrix x;
  std::vector<int> y;
  std::vector<std::string> board_ids;
};

// Vectors of the task's two classes; balance downsamples the majority
// class by seed.
TaskData task_data(const std::vector<FeatureVector>& vectors, const TaskSpec& task,
                   bool balance, std::uint64_t seed);

struct SeparationRow {
  std::string metric;
  double popular_mean = 0.0;
  double unpopular_mean = 0.0;
  KSResult ks;
};

// Popular (HFB and ERB) versus LFB board-level distributions of the
// sharing metrics and gender fractions.
std::vector<SeparationRow> separation_report(const Corpus& corpus, const LineageMap& lineages,
                                             const Vocabulary& vocab, const MetricFlags& flags);
std::string separation_tsv(const std::vector<SeparationRow>& rows);

struct IngestOptions {
  std::string input_dir;
  std::string output_dir;
  // When either fraction is set the corpus is relabeled by follower rank
  // and written back out.
  double label_top = 0.0;
  double label_bottom = 0.0;
  std::string erb_ids_path;
};

struct SynthOptions {
  std::string output_dir;
  std::string config_path;
  std::uint64_t seed = 42;
};

struct MetricsOptions {
  std::string input_dir;
  std::string output_dir;
  MetricFlags flags;
};

struct FeaturesOptions {
  std::string input_dir;
  std::string output_dir;
  std::string vocab_dir;
  TorsoParams torso;
  MetricFlags flags;
  bool emit_tables = false;
};

struct TrainOptions {
  std::string input_dir;
  std::string output_dir;
  std::string vocab_dir;
  std::string task = "hfb-vs-lfb";
  // lr, svm, rf classify the task; puk regresses log-follower counts.
  std::string model = "rf";
  int cv_folds = 10;
  // "A:B" switches classification to a holdout split; regression always
  // splits (default 4:1).
  std::string split;
  std::uint64_t seed = 42;
  TorsoParams torso;
  MetricFlags flags;
  double ridge_lambda = 1.0;
  double puk_omega = 1.0;
  // <= 0 resolves to sqrt(feature count).
  double puk_sigma = 0.0;
};

struct RankOptions {
  std::string input_dir;
  std::string output_dir;
  std::string vocab_dir;
  std::string task = "hfb-vs-lfb";
  std::size_t k_neighbors = 10;
  std::size_t m_samples = 0;
  std::uint64_t seed = 42;
  TorsoParams torso;
  MetricFlags flags;
};

struct ReportOptions {
  std::string input_dir;
  std::string output_dir;
  std::string vocab_dir;
  std::uint64_t seed = 42;
  MetricFlags flags;
};

// Each run loads its inputs, writes its outputs plus a
// "<subcommand>.manifest.json", and prints a short summary to out.
void run_ingest(const IngestOptions& options, std::ostream& out);
void run_synth(const SynthOptions& options, std::ostream& out);
void run_metrics(const MetricsOptions& options, std::ostream& out);
void run_features(const FeaturesOptions& options, std::ostream& out);
void run_train(const TrainOptions& options, std::ostream& out);
void run_rank(const RankOptions& options, std::ostream& out);
void run_report(const ReportOptions& options, std::ostream& out);

}  // namespace pinlab
