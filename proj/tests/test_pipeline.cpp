#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pinlab/cli.hpp"
#include "pinlab/corpus.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/manifest.hpp"
#include "pinlab/pipeline.hpp"
#include "pinlab/textio.hpp"

using namespace pinlab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / ("pinlab_pipe_" + leaf);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// 12 boards per class keeps every subcommand fast but non-trivial.
const char* kSmallSynthConfig =
    R"({"hfb": {"n_boards": 12}, "erb": {"n_boards": 12}, "lfb": {"n_boards": 12}})";

std::string small_corpus_dir() {
  static const std::string dir = [] {
    const fs::path base = fresh_dir("corpus");
    const fs::path config = base / "synth_config_in.json";
    write_text_file(config.string(), kSmallSynthConfig);
    SynthOptions options;
    options.output_dir = base.string();
    options.config_path = config.string();
    options.seed = 42;
    std::ostringstream sink;
    run_synth(options, sink);
    return base.string();
  }();
  return dir;
}

int cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"pinlab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::size_t line_count(const std::string& path) { return read_text_lines(path).size(); }

}  // namespace

TEST_CASE("task names parse into positive/negative label pairs") {
  CHECK(task_from_string("hfb-vs-lfb").positive == Label::HFB);
  CHECK(task_from_string("hfb-vs-lfb").negative == Label::LFB);
  CHECK(task_from_string("erb-vs-lfb").positive == Label::ERB);
  CHECK(task_from_string("erb-vs-hfb").negative == Label::HFB);
  try {
    task_from_string("cats-vs-dogs");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.name() == "UnknownTask");
  }
}

TEST_CASE("manifests round-trip through JSON") {
  RunManifest m;
  m.subcommand = "metrics";
  m.seed = 9;
  m.config["ict_gaps_only"] = "false";
  m.inputs["boards.jsonl"] = "0123456789abcdef";
  m.outputs = {"metrics.tsv"};

  const RunManifest back = manifest_from_json(manifest_to_json(m));
  CHECK(back == m);
  CHECK(back.tool_version == kToolVersion);

  CHECK_THROWS_AS(manifest_from_json("nope"), Error);
  try {
    manifest_from_json("{\"subcommand\": \"x\"}");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.name() == "SchemaMismatch");
  }
}

TEST_CASE("file digests are stable FNV-1a 64 hashes") {
  const fs::path dir = fresh_dir("digest");
  const fs::path empty = dir / "empty.bin";
  const fs::path one = dir / "one.bin";
  write_text_file(empty.string(), "");
  write_text_file(one.string(), "a");
  CHECK(file_digest(empty.string()) == "cbf29ce484222325");
  CHECK(file_digest(one.string()) == "af63dc4c8601ec8c");
  CHECK_THROWS_AS(file_digest((dir / "missing.bin").string()), Error);

  CHECK(basename_of("/a/b/c.tsv") == "c.tsv");
  CHECK(basename_of("c.tsv") == "c.tsv");
}

TEST_CASE("synth runs are reproducible across output directories") {
  const fs::path a = fresh_dir("synth_a");
  const fs::path b = fresh_dir("synth_b");
  SynthOptions options;
  options.config_path = (a / "config.json").string();
  write_text_file(options.config_path, kSmallSynthConfig);
  options.seed = 7;

  std::ostringstream sink;
  options.output_dir = a.string();
  run_synth(options, sink);
  options.output_dir = b.string();
  run_synth(options, sink);

  for (const char* name : {"boards.jsonl", "pins.jsonl", "synth_config.json"})
    CHECK(read_text_file((a / name).string()) == read_text_file((b / name).string()));
  CHECK(read_text_file((a / "synth.manifest.json").string()) ==
        read_text_file((b / "synth.manifest.json").string()));

  const RunManifest m =
      manifest_from_json(read_text_file((a / "synth.manifest.json").string()));
  CHECK(m.subcommand == "synth");
  CHECK(m.seed == 7);
  CHECK(m.outputs == std::vector<std::string>{"boards.jsonl", "pins.jsonl", "synth_config.json"});
}

TEST_CASE("metrics run emits one row per board") {
  const std::string corpus = small_corpus_dir();
  const fs::path out = fresh_dir("metrics");
  MetricsOptions options;
  options.input_dir = corpus;
  options.output_dir = out.string();

  std::ostringstream sink;
  run_metrics(options, sink);
  CHECK(sink.str().find("36 boards") != std::string::npos);

  const auto lines = read_text_lines((out / "metrics.tsv").string());
  REQUIRE(lines.size() == 37);
  CHECK(lines[0].rfind("board_id\tlabel\tfollower_count", 0) == 0);

  const RunManifest m =
      manifest_from_json(read_text_file((out / "metrics.manifest.json").string()));
  CHECK(m.inputs.count("boards.jsonl") == 1);
  CHECK(m.inputs.count("pins.jsonl") == 1);
}

TEST_CASE("features run writes vectors, schema and optional term tables") {
  const std::string corpus = small_corpus_dir();
  const fs::path out = fresh_dir("features");
  FeaturesOptions options;
  options.input_dir = corpus;
  options.output_dir = out.string();
  options.emit_tables = true;

  std::ostringstream sink;
  run_features(options, sink);

  const auto lines = read_text_lines((out / "features.tsv").string());
  REQUIRE(lines.size() == 37);
  // header: board_id + 91 features + target + label
  CHECK(std::count(lines[0].begin(), lines[0].end(), '\t') == 93);

  const FeatureSchema schema =
      schema_from_json(read_text_file((out / "schema.json").string()));
  CHECK(schema.names.size() == kFeatureCount);

  for (const char* table :
       {"terms_gender.tsv", "terms_fashion_uni.tsv", "terms_fashion_bi.tsv",
        "terms_fashion_tri.tsv", "terms_color_uni.tsv", "terms_color_bi.tsv",
        "terms_gender_fashion_bi.tsv", "terms_gender_fashion_tri.tsv",
        "terms_gender_color.tsv"})
    CHECK(fs::exists(out / table));
}

TEST_CASE("classification training writes a report and a loadable model") {
  const std::string corpus = small_corpus_dir();
  const fs::path out = fresh_dir("train_rf");
  TrainOptions options;
  options.input_dir = corpus;
  options.output_dir = out.string();
  options.model = "rf";
  options.task = "hfb-vs-lfb";
  options.cv_folds = 2;

  std::ostringstream sink;
  run_train(options, sink);
  CHECK(sink.str().find("hfb-vs-lfb rf (cv 2") != std::string::npos);

  const auto lines = read_text_lines((out / "report.tsv").string());
  REQUIRE(lines.size() == 4);  // header + mean + 2 folds
  CHECK(lines[0] == "task\tmodel\tscope\taccuracy\tprecision\trecall\tf1\troc_auc");
  CHECK(lines[1].rfind("hfb-vs-lfb\trf\tmean\t", 0) == 0);

  CHECK(fs::exists(out / "model.json"));
  CHECK(fs::exists(out / "schema.json"));
  CHECK(fs::exists(out / "train.manifest.json"));
}

TEST_CASE("holdout splits and regression reports work end to end") {
  const std::string corpus = small_corpus_dir();

  const fs::path split_out = fresh_dir("train_split");
  TrainOptions split;
  split.input_dir = corpus;
  split.output_dir = split_out.string();
  split.model = "lr";
  split.split = "3:1";
  std::ostringstream sink;
  run_train(split, sink);
  REQUIRE(read_text_lines((split_out / "report.tsv").string()).size() == 3);

  const fs::path puk_out = fresh_dir("train_puk");
  TrainOptions puk;
  puk.input_dir = corpus;
  puk.output_dir = puk_out.string();
  puk.model = "puk";
  run_train(puk, sink);
  const auto lines = read_text_lines((puk_out / "report.tsv").string());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "metric\tvalue");
  CHECK(lines[1].rfind("pearson_rho\t", 0) == 0);
  CHECK(lines[3] == "n_train\t30");  // 4:1 over three 12-board strata
  CHECK(lines[4] == "n_test\t6");
}

TEST_CASE("rank run orders all schema features") {
  const std::string corpus = small_corpus_dir();
  const fs::path out = fresh_dir("rank");
  RankOptions options;
  options.input_dir = corpus;
  options.output_dir = out.string();
  options.k_neighbors = 3;

  std::ostringstream sink;
  run_rank(options, sink);
  const auto lines = read_text_lines((out / "ranking.tsv").string());
  REQUIRE(lines.size() == 92);
  CHECK(lines[0] == "rank\tfeature\tweight");
  CHECK(lines[1].rfind("1\t", 0) == 0);
}

TEST_CASE("report run summarizes popular-versus-low separation") {
  const std::string corpus = small_corpus_dir();
  const fs::path out = fresh_dir("report");
  ReportOptions options;
  options.input_dir = corpus;
  options.output_dir = out.string();

  std::ostringstream sink;
  run_report(options, sink);
  CHECK(sink.str().find("spearman(originality, followers)") != std::string::npos);

  const auto lines = read_text_lines((out / "report.tsv").string());
  REQUIRE(lines.size() == 14);  // header + 13 metrics
  CHECK(fs::exists(out / "report_summary.json"));
}

TEST_CASE("ingest relabels by follower rank when asked") {
  const std::string corpus = small_corpus_dir();
  const fs::path out = fresh_dir("ingest");
  IngestOptions options;
  options.input_dir = corpus;
  options.output_dir = out.string();
  options.label_top = 0.25;
  options.label_bottom = 0.25;

  std::ostringstream sink;
  run_ingest(options, sink);
  CHECK(fs::exists(out / "ingest_summary.json"));

  const IngestResult relabeled = load_corpus_dir(out.string());
  int hfb = 0, lfb = 0;
  for (const auto& [id, b] : relabeled.corpus.boards) {
    if (b.label == Label::HFB) ++hfb;
    if (b.label == Label::LFB) ++lfb;
  }
  CHECK(hfb == 9);  // ceil(0.25 * 36)
  CHECK(lfb == 9);
}

TEST_CASE("cli maps success, runtime failures and usage errors to exit codes") {
  const std::string corpus = small_corpus_dir();

  CHECK(cli({"--version"}) == 0);
  CHECK(cli({"--help"}) == 0);
  CHECK(cli({}) == 2);                        // a subcommand is required
  CHECK(cli({"frobnicate"}) == 2);            // unknown subcommand
  CHECK(cli({"train", "--model", "nope"}) == 2);
  CHECK(cli({"metrics", "-i", "/definitely/missing", "-o",
             fresh_dir("cli_fail").string()}) == 1);

  const fs::path out = fresh_dir("cli_ok");
  CHECK(cli({"metrics", "-i", corpus, "-o", out.string()}) == 0);
  CHECK(fs::exists(out / "metrics.tsv"));
}
