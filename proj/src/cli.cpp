#include "pinlab/cli.hpp"

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/manifest.hpp"
#include "pinlab/pipeline.hpp"

namespace pinlab {

namespace {

void add_metric_flags(CLI::App* cmd, MetricFlags& flags) {
  cmd->add_flag("--ict-gaps-only", flags.ict_gaps_only,
                "Average only the gaps between consecutive copies");
  cmd->add_flag("--retention-copied-only", flags.retention_copied_only,
                "Retention over copied originals only");
}

void add_torso_flags(CLI::App* cmd, TorsoParams& torso) {
  cmd->add_option("--torso-head-mass", torso.head_mass,
                  "Head mass excluded before binning terms")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--torso-tail-min", torso.tail_min_frac,
                  "Minimum pin fraction for a term to leave the tail")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Sharing-dynamics and content-term metrics over pin/board corpora"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand(
      "ingest", "Validate a corpus, optionally relabel it by follower rank");
  ingest_cmd->add_option("-i,--input", ingest.input_dir, "Corpus directory")
      ->required();
  ingest_cmd->add_option("-o,--output", ingest.output_dir, "Output directory")
      ->required();
  ingest_cmd->add_option("--label-top", ingest.label_top,
                         "Fraction of most-followed boards labeled HFB")
      ->check(CLI::Range(0.0, 1.0));
  ingest_cmd->add_option("--label-bottom", ingest.label_bottom,
                         "Fraction of least-followed boards labeled LFB")
      ->check(CLI::Range(0.0, 1.0));
  ingest_cmd->add_option("--erb-ids", ingest.erb_ids_path,
                         "File of board ids to force-label ERB, one per line");

  SynthOptions synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  synth_cmd->add_option("-o,--output", synth.output_dir, "Output directory")
      ->required();
  synth_cmd->add_option("--config", synth.config_path,
                        "JSON generator config (defaults when omitted)");
  synth_cmd->add_option("--seed", synth.seed, "Generator seed");

  MetricsOptions metrics;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Per-board originality, share-ratio, and temporal metrics");
  metrics_cmd->add_option("-i,--input", metrics.input_dir, "Corpus directory")
      ->required();
  metrics_cmd->add_option("-o,--output", metrics.output_dir, "Output directory")
      ->required();
  add_metric_flags(metrics_cmd, metrics.flags);

  FeaturesOptions features;
  auto* features_cmd = app.add_subcommand(
      "features", "Fit the feature schema and export per-board vectors");
  features_cmd->add_option("-i,--input", features.input_dir, "Corpus directory")
      ->required();
  features_cmd->add_option("-o,--output", features.output_dir, "Output directory")
      ->required();
  features_cmd->add_option("--vocab", features.vocab_dir,
                           "Vocabulary directory (builtin when omitted)");
  add_torso_flags(features_cmd, features.torso);
  add_metric_flags(features_cmd, features.flags);
  features_cmd->add_flag("--emit-tables", features.emit_tables,
                         "Also write per-class term-fraction tables");

  TrainOptions train;
  auto* train_cmd =
      app.add_subcommand("train", "Train and evaluate a predictor");
  train_cmd->add_option("-i,--input", train.input_dir, "Corpus directory")
      ->required();
  train_cmd->add_option("-o,--output", train.output_dir, "Output directory")
      ->required();
  train_cmd->add_option("--vocab", train.vocab_dir,
                        "Vocabulary directory (builtin when omitted)");
  train_cmd->add_option("--task", train.task, "Classification task")
      ->check(CLI::IsMember({"hfb-vs-lfb", "erb-vs-lfb", "erb-vs-hfb"}));
  train_cmd
      ->add_option("--model", train.model,
                   "lr, svm, rf classify; puk regresses log follower counts")
      ->check(CLI::IsMember({"lr", "svm", "rf", "puk"}));
  train_cmd->add_option("--cv", train.cv_folds, "Cross-validation folds")
      ->check(CLI::Range(2, 1000));
  train_cmd->add_option("--split", train.split,
                        "Holdout split A:B instead of cross-validation");
  train_cmd->add_option("--seed", train.seed, "Training seed");
  train_cmd->add_option("--ridge-lambda", train.ridge_lambda,
                        "Kernel ridge regularization");
  train_cmd->add_option("--puk-omega", train.puk_omega, "PUK omega");
  train_cmd->add_option("--puk-sigma", train.puk_sigma,
                        "PUK sigma; <= 0 uses sqrt(feature count)");
  add_torso_flags(train_cmd, train.torso);
  add_metric_flags(train_cmd, train.flags);

  RankOptions rank;
  auto* rank_cmd =
      app.add_subcommand("rank", "Rank features by RELIEFF weight");
  rank_cmd->add_option("-i,--input", rank.input_dir, "Corpus directory")
      ->required();
  rank_cmd->add_option("-o,--output", rank.output_dir, "Output directory")
      ->required();
  rank_cmd->add_option("--vocab", rank.vocab_dir,
                       "Vocabulary directory (builtin when omitted)");
  rank_cmd->add_option("--task", rank.task, "Classification task")
      ->check(CLI::IsMember({"hfb-vs-lfb", "erb-vs-lfb", "erb-vs-hfb"}));
  rank_cmd->add_option("--knn", rank.k_neighbors, "Neighbors per class");
  rank_cmd->add_option("--samples", rank.m_samples,
                       "Sampled instances (0 = all)");
  rank_cmd->add_option("--seed", rank.seed, "Sampling seed");
  add_torso_flags(rank_cmd, rank.torso);
  add_metric_flags(rank_cmd, rank.flags);

  ReportOptions report;
  auto* report_cmd = app.add_subcommand(
      "report", "Popular-vs-LFB distribution separations and correlations");
  report_cmd->add_option("-i,--input", report.input_dir, "Corpus directory")
      ->required();
  report_cmd->add_option("-o,--output", report.output_dir, "Output directory")
      ->required();
  report_cmd->add_option("--vocab", report.vocab_dir,
                         "Vocabulary directory (builtin when omitted)");
  report_cmd->add_option("--seed", report.seed, "Recorded in the manifest");
  add_metric_flags(report_cmd, report.flags);

  ingest_cmd->callback([&] { run_ingest(ingest, std::cout); });
  synth_cmd->callback([&] { run_synth(synth, std::cout); });
  metrics_cmd->callback([&] { run_metrics(metrics, std::cout); });
  features_cmd->callback([&] { run_features(features, std::cout); });
  train_cmd->callback([&] { run_train(train, std::cout); });
  rank_cmd->callback([&] { run_rank(rank, std::cout); });
  report_cmd->callback([&] { run_report(report, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << std::flush;
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace pinlab
