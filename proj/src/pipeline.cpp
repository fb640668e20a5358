#include "pinlab/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>

#include "json.hpp"
#include "pinlab/content.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/lineage.hpp"
#include "pinlab/manifest.hpp"
#include "pinlab/model_io.hpp"
#include "pinlab/share_metrics.hpp"
#include "pinlab/synth.hpp"
#include "pinlab/temporal.hpp"
#include "pinlab/textio.hpp"

namespace pinlab {

namespace {

using nlohmann::json;

std::string opt_cell(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("WriteFailed", "cannot create directory " + dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

struct Prepared {
  IngestResult ingest;
  LineageMap lineages;
};

Prepared prepare(const std::string& input_dir) {
  Prepared p;
  p.ingest = load_corpus_dir(input_dir);
  p.lineages = resolve_lineages(p.ingest.corpus);
  return p;
}

Vocabulary resolve_vocab(const std::string& vocab_dir) {
  return vocab_dir.empty() ? default_vocabulary() : load_vocabulary(vocab_dir);
}

void add_corpus_inputs(RunManifest& manifest, const std::string& input_dir) {
  for (const char* name : {"boards.jsonl", "pins.jsonl"}) {
    manifest.inputs[name] = file_digest(join_path(input_dir, name));
  }
}

void add_vocab_inputs(RunManifest& manifest, const std::string& vocab_dir) {
  if (vocab_dir.empty()) return;
  for (const char* name :
       {"fashion.txt", "colors.txt", "gender_map.tsv", "stopwords.txt"}) {
    manifest.inputs[name] = file_digest(join_path(vocab_dir, name));
  }
}

std::pair<std::size_t, std::size_t> parse_split(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == s.size()) {
    throw Error("InvalidConfig", "split must look like A:B");
  }
  std::size_t a = 0;
  std::size_t b = 0;
  try {
    a = std::stoul(s.substr(0, colon));
    b = std::stoul(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error("InvalidConfig", "split must look like A:B");
  }
  if (a == 0 || b == 0) throw Error("InvalidConfig", "split parts must be positive");
  return {a, b};
}

std::string flag_str(bool v) { return v ? "true" : "false"; }

void write_output(RunManifest& manifest, const std::string& out_dir,
                  const std::string& name, const std::string& content) {
  write_text_file(join_path(out_dir, name), content);
  manifest.outputs.push_back(name);
}

json board_json(const BoardRecord& b) {
  json j;
  j["board_id"] = b.board_id;
  j["name"] = b.name;
  j["follower_count"] = b.follower_count;
  j["label"] = label_to_string(b.label);
  return j;
}

json pin_json(const PinRecord& p) {
  json j;
  j["pin_id"] = p.pin_id;
  j["board_id"] = p.board_id;
  j["image_id"] = p.image_id;
  j["created_at"] = p.created_at;
  j["likes"] = p.likes;
  j["repins"] = p.repins;
  j["comments"] = p.comments;
  j["caption_tokens"] = p.caption_tokens;
  return j;
}

// Board-level metric samples for the popular-vs-unpopular report.
struct GroupSamples {
  std::vector<double> popular;
  std::vector<double> unpopular;
};

void push_sample(GroupSamples& samples, Label label, std::optional<double> value) {
  if (!value) return;
  if (label == Label::HFB || label == Label::ERB) {
    samples.popular.push_back(*value);
  } else if (label == Label::LFB) {
    samples.unpopular.push_back(*value);
  }
}

}  // namespace

TaskSpec task_from_string(const std::string& s) {
  if (s == "hfb-vs-lfb") return {s, Label::HFB, Label::LFB};
  if (s == "erb-vs-lfb") return {s, Label::ERB, Label::LFB};
  if (s == "erb-vs-hfb") return {s, Label::ERB, Label::HFB};
  throw Error("UnknownTask", "no task named " + s);
}

IngestResult load_corpus_dir(const std::string& dir) {
  return ingest_corpus(join_path(dir, "boards.jsonl"), join_path(dir, "pins.jsonl"));
}

std::string boards_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& [id, board] : corpus.boards) {
    out += board_json(board).dump();
    out += '\n';
  }
  return out;
}

std::string pins_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& [id, pin] : corpus.pins) {
    out += pin_json(pin).dump();
    out += '\n';
  }
  return out;
}

std::string metrics_tsv(const Corpus& corpus, const LineageMap& lineages,
                        const MetricFlags& flags) {
  std::string out =
      "board_id\tlabel\tfollower_count\tt_b\to_b\toriginality\tlrc\trrc\tlpc\trpc"
      "\tict\tdos\tlikes_speed\trepins_speed\tn_excluded_zero_dos\n";
  for (const auto& [id, board] : corpus.boards) {
    const auto& pins = corpus.by_board.at(id);
    out += id;
    out += '\t';
    out += label_to_string(board.label);
    out += '\t';
    out += std::to_string(board.follower_count);
    if (pins.empty()) {
      out += "\t0\t0\t\t\t\t\t\t\t\t\t\t0\n";
      continue;
    }
    const OriginalityReport originality = originality_score(corpus, lineages, id);
    const ShareCoefficients share =
        share_coefficients(corpus, lineages, id, flags.retention_copied_only);
    const TemporalMetrics temporal =
        board_temporal_metrics(corpus, lineages, id, flags.ict_gaps_only);
    out += '\t';
    out += std::to_string(originality.t_b);
    out += '\t';
    out += std::to_string(originality.o_b);
    out += '\t';
    out += fmt_double(originality.score);
    for (const auto& cell : {share.lrc, share.rrc, share.lpc, share.rpc, temporal.ict,
                             temporal.dos, temporal.likes_speed, temporal.repins_speed}) {
      out += '\t';
      out += opt_cell(cell);
    }
    out += '\t';
    out += std::to_string(temporal.n_excluded_zero_dos);
    out += '\n';
  }
  return out;
}

std::string features_tsv(const std::vector<FeatureVector>& vectors,
                         const FeatureSchema& schema) {
  std::string out = "board_id";
  for (const auto& name : schema.names) {
    out += '\t';
    out += name;
  }
  out += "\ttarget\tlabel\n";
  for (const auto& v : vectors) {
    out += v.board_id;
    for (const double value : v.values) {
      out += '\t';
      out += fmt_double(value);
    }
    out += '\t';
    out += fmt_double(v.target);
    out += '\t';
    out += label_to_string(v.label);
    out += '\n';
  }
  return out;
}

std::map<std::string, std::string> term_tables(const Corpus& corpus,
                                               const Vocabulary& vocab) {
  struct TableSpec {
    const char* file;
    TermKind kind;
    int arity;
    std::size_t max_rows;
  };
  const TableSpec specs[] = {
      {"terms_gender.tsv", TermKind::GENDER, 1, 3},
      {"terms_fashion_uni.tsv", TermKind::FASHION, 1, 15},
      {"terms_fashion_bi.tsv", TermKind::FASHION, 2, 15},
      {"terms_fashion_tri.tsv", TermKind::FASHION, 3, 15},
      {"terms_color_uni.tsv", TermKind::COLOR, 1, 15},
      {"terms_color_bi.tsv", TermKind::COLOR, 2, 15},
      {"terms_gender_fashion_bi.tsv", TermKind::GENDER_FASHION, 2, 15},
      {"terms_gender_fashion_tri.tsv", TermKind::GENDER_FASHION, 3, 15},
      {"terms_gender_color.tsv", TermKind::GENDER_COLOR, 2, 15},
  };
  std::map<std::string, std::string> tables;
  for (const auto& spec : specs) {
    const auto dist = class_term_distribution(corpus, spec.arity, spec.kind, vocab);
    std::vector<Label> classes;
    for (const Label label : {Label::HFB, Label::ERB, Label::LFB}) {
      if (dist.count(label)) classes.push_back(label);
    }
    if (classes.empty()) continue;
    struct Row {
      std::string term;
      double peak = 0.0;
    };
    std::vector<Row> rows;
    for (const auto& [term, frac] : dist.at(classes.front()).fractions) {
      Row row{term, 0.0};
      for (const Label label : classes) {
        row.peak = std::max(row.peak, dist.at(label).fractions.at(term));
      }
      rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
      if (a.peak != b.peak) return a.peak > b.peak;
      return a.term < b.term;
    });
    if (rows.size() > spec.max_rows) rows.resize(spec.max_rows);
    std::string out = "term";
    for (const Label label : classes) {
      out += '\t';
      out += label_to_string(label);
    }
    out += '\n';
    for (const auto& row : rows) {
      out += row.term;
      for (const Label label : classes) {
        out += '\t';
        out += fmt_double(dist.at(label).fractions.at(row.term));
      }
      out += '\n';
    }
    tables[spec.file] = std::move(out);
  }
  return tables;
}

TaskData task_data(const std::vector<FeatureVector>& vectors, const TaskSpec& task,
                   bool balance, std::uint64_t seed) {
  TaskData data;
  for (const auto& v : vectors) {
    if (v.label != task.positive && v.label != task.negative) continue;
    data.x.push_back(v.values);
    data.y.push_back(v.label == task.positive ? 1 : 0);
    data.board_ids.push_back(v.board_id);
  }
  if (balance && !data.y.empty()) {
    const auto keep = balance_classes(data.y, seed);
    TaskData balanced;
    for (const std::size_t i : keep) {
      balanced.x.push_back(std::move(data.x[i]));
      balanced.y.push_back(data.y[i]);
      balanced.board_ids.push_back(std::move(data.board_ids[i]));
    }
    return balanced;
  }
  return data;
}

std::vector<SeparationRow> separation_report(const Corpus& corpus,
                                             const LineageMap& lineages,
                                             const Vocabulary& vocab,
                                             const MetricFlags& flags) {
  GroupSamples originality, lrc, rrc, lpc, rpc, ict, dos, likes_speed, repins_speed,
      avg_likes, avg_repins, male_fraction, female_fraction;

  for (const auto& [id, board] : corpus.boards) {
    const auto& pins = corpus.by_board.at(id);
    if (pins.empty()) continue;
    push_sample(originality, board.label,
                originality_score(corpus, lineages, id).score);
    const ShareCoefficients share =
        share_coefficients(corpus, lineages, id, flags.retention_copied_only);
    push_sample(lrc, board.label, share.lrc);
    push_sample(rrc, board.label, share.rrc);
    push_sample(lpc, board.label, share.lpc);
    push_sample(rpc, board.label, share.rpc);
    const TemporalMetrics temporal =
        board_temporal_metrics(corpus, lineages, id, flags.ict_gaps_only);
    push_sample(ict, board.label, temporal.ict);
    push_sample(dos, board.label, temporal.dos);
    push_sample(likes_speed, board.label, temporal.likes_speed);
    push_sample(repins_speed, board.label, temporal.repins_speed);

    double likes = 0.0;
    double repins = 0.0;
    std::int64_t males = 0;
    std::int64_t females = 0;
    for (const auto& pin_id : pins) {
      const PinRecord& pin = corpus.pins.at(pin_id);
      likes += static_cast<double>(pin.likes);
      repins += static_cast<double>(pin.repins);
      const auto tokens = normalize_tokens(pin.caption_tokens, vocab);
      const PinTermProfile profile = profile_pin(tokens, vocab);
      males += profile.male ? 1 : 0;
      females += profile.female ? 1 : 0;
    }
    const auto n = static_cast<double>(pins.size());
    push_sample(avg_likes, board.label, likes / n);
    push_sample(avg_repins, board.label, repins / n);
    push_sample(male_fraction, board.label, static_cast<double>(males) / n);
    push_sample(female_fraction, board.label, static_cast<double>(females) / n);
  }

  struct Named {
    const char* name;
    GroupSamples* samples;
  };
  const Named metrics[] = {
      {"originality", &originality},
      {"lrc", &lrc},
      {"rrc", &rrc},
      {"lpc", &lpc},
      {"rpc", &rpc},
      {"ict", &ict},
      {"dos", &dos},
      {"likes_speed", &likes_speed},
      {"repins_speed", &repins_speed},
      {"avg_likes", &avg_likes},
      {"avg_repins", &avg_repins},
      {"male_fraction", &male_fraction},
      {"female_fraction", &female_fraction},
  };
  std::vector<SeparationRow> rows;
  for (const auto& metric : metrics) {
    if (metric.samples->popular.empty() || metric.samples->unpopular.empty()) continue;
    SeparationRow row;
    row.metric = metric.name;
    row.popular_mean = mean(metric.samples->popular);
    row.unpopular_mean = mean(metric.samples->unpopular);
    row.ks = ks_two_sample(metric.samples->popular, metric.samples->unpopular);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string separation_tsv(const std::vector<SeparationRow>& rows) {
  std::string out =
      "metric\tpopular_mean\tlfb_mean\tks_d\tp_value\tband\tn_popular\tn_lfb"
      "\tsmall_sample_warning\n";
  for (const auto& row : rows) {
    out += row.metric;
    out += '\t';
    out += fmt_double(row.popular_mean);
    out += '\t';
    out += fmt_double(row.unpopular_mean);
    out += '\t';
    out += fmt_double(row.ks.d_statistic);
    out += '\t';
    out += fmt_double(row.ks.p_value);
    out += '\t';
    out += row.ks.significance_band;
    out += '\t';
    out += std::to_string(row.ks.n1);
    out += '\t';
    out += std::to_string(row.ks.n2);
    out += '\t';
    out += row.ks.small_sample_warning ? "yes" : "no";
    out += '\n';
  }
  return out;
}

void run_ingest(const IngestOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  const IngestResult result = load_corpus_dir(options.input_dir);

  RunManifest manifest;
  manifest.subcommand = "ingest";
  add_corpus_inputs(manifest, options.input_dir);
  manifest.config["label_top"] = fmt_double(options.label_top);
  manifest.config["label_bottom"] = fmt_double(options.label_bottom);

  json summary;
  summary["n_boards"] = result.corpus.boards.size();
  summary["n_pins"] = result.corpus.pins.size();
  summary["n_dangling"] = result.dangling_pin_ids.size();
  summary["dangling_pin_ids"] = result.dangling_pin_ids;
  write_output(manifest, options.output_dir, "ingest_summary.json",
               summary.dump(2) + "\n");

  if (options.label_top > 0.0 || options.label_bottom > 0.0) {
    std::set<std::string> erb_ids;
    if (!options.erb_ids_path.empty()) {
      manifest.inputs[basename_of(options.erb_ids_path)] =
          file_digest(options.erb_ids_path);
      for (const auto& line : read_text_lines(options.erb_ids_path)) {
        if (!line.empty()) erb_ids.insert(line);
      }
    }
    const Corpus labeled = assign_popularity_buckets(
        result.corpus, options.label_top, options.label_bottom, erb_ids);
    write_output(manifest, options.output_dir, "boards.jsonl", boards_jsonl(labeled));
    write_output(manifest, options.output_dir, "pins.jsonl", pins_jsonl(labeled));
  }

  write_manifest(manifest, options.output_dir);
  out << "ingested " << result.corpus.boards.size() << " boards, "
      << result.corpus.pins.size() << " pins, " << result.dangling_pin_ids.size()
      << " dangling pins dropped\n";
}

void run_synth(const SynthOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  SynthConfig config = options.config_path.empty()
                           ? default_synth_config()
                           : synth_config_from_json(read_text_file(options.config_path));
  config.seed = options.seed;
  const SynthOutput generated = generate(config);

  RunManifest manifest;
  manifest.subcommand = "synth";
  manifest.seed = options.seed;
  if (!options.config_path.empty()) {
    manifest.inputs[basename_of(options.config_path)] =
        file_digest(options.config_path);
  }
  const std::string config_json = synth_config_to_json(config);
  manifest.config["config_digest"] = hex64(fnv1a64(config_json));

  write_output(manifest, options.output_dir, "boards.jsonl", generated.boards_jsonl);
  write_output(manifest, options.output_dir, "pins.jsonl", generated.pins_jsonl);
  write_output(manifest, options.output_dir, "synth_config.json", config_json);
  write_manifest(manifest, options.output_dir);

  std::size_t n_boards = 0;
  for (const char c : generated.boards_jsonl) n_boards += c == '\n' ? 1 : 0;
  std::size_t n_pins = 0;
  for (const char c : generated.pins_jsonl) n_pins += c == '\n' ? 1 : 0;
  out << "generated " << n_boards << " boards, " << n_pins << " pins\n";
}

void run_metrics(const MetricsOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  const Prepared p = prepare(options.input_dir);

  RunManifest manifest;
  manifest.subcommand = "metrics";
  add_corpus_inputs(manifest, options.input_dir);
  manifest.config["ict_gaps_only"] = flag_str(options.flags.ict_gaps_only);
  manifest.config["retention_copied_only"] = flag_str(options.flags.retention_copied_only);

  write_output(manifest, options.output_dir, "metrics.tsv",
               metrics_tsv(p.ingest.corpus, p.lineages, options.flags));
  write_manifest(manifest, options.output_dir);
  out << "metrics.tsv: " << p.ingest.corpus.boards.size() << " boards\n";
}

void run_features(const FeaturesOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  const Prepared p = prepare(options.input_dir);
  const Vocabulary vocab = resolve_vocab(options.vocab_dir);

  const FeatureSchema schema =
      fit_schema(p.ingest.corpus, p.lineages, vocab, options.torso, options.flags);
  const auto vectors = vectorize_all(p.ingest.corpus, p.lineages, schema, vocab);

  RunManifest manifest;
  manifest.subcommand = "features";
  add_corpus_inputs(manifest, options.input_dir);
  add_vocab_inputs(manifest, options.vocab_dir);
  manifest.config["torso_head_mass"] = fmt_double(options.torso.head_mass);
  manifest.config["torso_tail_min"] = fmt_double(options.torso.tail_min_frac);
  manifest.config["ict_gaps_only"] = flag_str(options.flags.ict_gaps_only);
  manifest.config["retention_copied_only"] = flag_str(options.flags.retention_copied_only);
  manifest.config["emit_tables"] = flag_str(options.emit_tables);

  write_output(manifest, options.output_dir, "features.tsv",
               features_tsv(vectors, schema));
  write_output(manifest, options.output_dir, "schema.json", schema_to_json(schema));
  if (options.emit_tables) {
    for (const auto& [file, content] : term_tables(p.ingest.corpus, vocab)) {
      write_output(manifest, options.output_dir, file, content);
    }
  }
  write_manifest(manifest, options.output_dir);
  out << "features.tsv: " << vectors.size() << " boards x " << schema.names.size()
      << " features\n";
}

void run_train(const TrainOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  const Prepared p = prepare(options.input_dir);
  const Vocabulary vocab = resolve_vocab(options.vocab_dir);
  const FeatureSchema schema =
      fit_schema(p.ingest.corpus, p.lineages, vocab, options.torso, options.flags);
  const auto vectors = vectorize_all(p.ingest.corpus, p.lineages, schema, vocab);
  const std::string schema_json = schema_to_json(schema);
  const std::string schema_digest = hex64(fnv1a64(schema_json));

  RunManifest manifest;
  manifest.subcommand = "train";
  manifest.seed = options.seed;
  add_corpus_inputs(manifest, options.input_dir);
  add_vocab_inputs(manifest, options.vocab_dir);
  manifest.config["model"] = options.model;
  manifest.config["torso_head_mass"] = fmt_double(options.torso.head_mass);
  manifest.config["torso_tail_min"] = fmt_double(options.torso.tail_min_frac);
  manifest.config["ict_gaps_only"] = flag_str(options.flags.ict_gaps_only);
  manifest.config["retention_copied_only"] = flag_str(options.flags.retention_copied_only);

  write_output(manifest, options.output_dir, "schema.json", schema_json);

  if (options.model == "puk") {
    const std::string split = options.split.empty() ? "4:1" : options.split;
    manifest.config["split"] = split;
    manifest.config["ridge_lambda"] = fmt_double(options.ridge_lambda);
    manifest.config["puk_omega"] = fmt_double(options.puk_omega);
    manifest.config["puk_sigma"] = fmt_double(options.puk_sigma);
    const auto [a, b] = parse_split(split);

    std::vector<int> strata;
    strata.reserve(vectors.size());
    for (const auto& v : vectors) strata.push_back(static_cast<int>(v.label));
    const auto [train_idx, test_idx] = stratified_split(strata, a, b, options.seed);
    if (test_idx.empty()) throw Error("TooFewExamples", "holdout split is empty");

    Matrix train_x, test_x;
    std::vector<double> train_t, test_t;
    for (const std::size_t i : train_idx) {
      train_x.push_back(vectors[i].values);
      train_t.push_back(vectors[i].target);
    }
    for (const std::size_t i : test_idx) {
      test_x.push_back(vectors[i].values);
      test_t.push_back(vectors[i].target);
    }
    const RegressorModel model =
        train_regressor(train_x, train_t, options.ridge_lambda, options.puk_omega,
                        options.puk_sigma, options.seed);
    std::vector<double> predictions;
    predictions.reserve(test_x.size());
    for (const auto& x : test_x) predictions.push_back(predict_regression(model, x));
    const RegressionEval eval = evaluate_regression(predictions, test_t);

    std::string report = "metric\tvalue\n";
    report += "pearson_rho\t" + fmt_double(eval.pearson_rho) + "\n";
    report += "normalized_rmse\t" + fmt_double(eval.normalized_rmse) + "\n";
    report += "n_train\t" + std::to_string(train_idx.size()) + "\n";
    report += "n_test\t" + std::to_string(test_idx.size()) + "\n";
    write_output(manifest, options.output_dir, "report.tsv", report);
    write_output(manifest, options.output_dir, "model.json",
                 regressor_to_json(model, schema_digest));
    write_manifest(manifest, options.output_dir);
    out << "puk regression split " << split << ": pearson_rho="
        << fmt_double(eval.pearson_rho) << " normalized_rmse="
        << fmt_double(eval.normalized_rmse) << "\n";
    return;
  }

  const TaskSpec task = task_from_string(options.task);
  manifest.config["task"] = task.name;
  const ClassifierKind kind = classifier_kind_from_string(options.model);
  const TaskData data = task_data(vectors, task, true, options.seed);
  const TrainConfig config;

  EvalReport report;
  std::string mode;
  if (!options.split.empty()) {
    mode = "split " + options.split;
    manifest.config["split"] = options.split;
    const auto [a, b] = parse_split(options.split);
    const auto [train_idx, test_idx] = stratified_split(data.y, a, b, options.seed);
    if (test_idx.empty()) throw Error("TooFewExamples", "holdout split is empty");
    Matrix train_x;
    std::vector<int> train_y;
    for (const std::size_t i : train_idx) {
      train_x.push_back(data.x[i]);
      train_y.push_back(data.y[i]);
    }
    const ClassifierModel model =
        train_classifier(kind, train_x, train_y, config, options.seed);
    std::vector<int> truth, predicted;
    std::vector<double> scores;
    for (const std::size_t i : test_idx) {
      truth.push_back(data.y[i]);
      scores.push_back(predict_score(model, data.x[i]));
      predicted.push_back(scores.back() >= 0.5 ? 1 : 0);
    }
    const FoldMetrics fold = classification_metrics(truth, predicted, scores);
    report.folds.push_back(fold);
    report.accuracy = fold.accuracy;
    report.precision = fold.precision;
    report.recall = fold.recall;
    report.f1 = fold.f1;
    report.roc_auc = fold.roc_auc;
  } else {
    mode = "cv " + std::to_string(options.cv_folds);
    manifest.config["cv"] = std::to_string(options.cv_folds);
    report = cross_validate(kind, data.x, data.y,
                            static_cast<std::size_t>(options.cv_folds), config,
                            options.seed);
  }

  const ClassifierModel final_model =
      train_classifier(kind, data.x, data.y, config, options.seed);

  std::string tsv = "task\tmodel\tscope\taccuracy\tprecision\trecall\tf1\troc_auc\n";
  auto add_row = [&](const std::string& scope, double acc, double prec, double rec,
                     double f1, double auc) {
    tsv += task.name + "\t" + options.model + "\t" + scope + "\t" + fmt_double(acc) +
           "\t" + fmt_double(prec) + "\t" + fmt_double(rec) + "\t" + fmt_double(f1) +
           "\t" + fmt_double(auc) + "\n";
  };
  add_row("mean", report.accuracy, report.precision, report.recall, report.f1,
          report.roc_auc);
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    const FoldMetrics& fold = report.folds[f];
    add_row("fold" + std::to_string(f), fold.accuracy, fold.precision, fold.recall,
            fold.f1, fold.roc_auc);
  }
  write_output(manifest, options.output_dir, "report.tsv", tsv);
  write_output(manifest, options.output_dir, "model.json",
               classifier_to_json(final_model, schema_digest));
  write_manifest(manifest, options.output_dir);
  out << task.name << " " << options.model << " (" << mode << ", "
      << data.y.size() << " boards): accuracy=" << fmt_double(report.accuracy)
      << " f1=" << fmt_double(report.f1) << " auc=" << fmt_double(report.roc_auc)
      << "\n";
}

void run_rank(const RankOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  const Prepared p = prepare(options.input_dir);
  const Vocabulary vocab = resolve_vocab(options.vocab_dir);
  const FeatureSchema schema =
      fit_schema(p.ingest.corpus, p.lineages, vocab, options.torso, options.flags);
  const auto vectors = vectorize_all(p.ingest.corpus, p.lineages, schema, vocab);
  const TaskSpec task = task_from_string(options.task);
  const TaskData data = task_data(vectors, task, true, options.seed);

  const auto ranking = relieff_rank(data.x, data.y, schema.names, options.k_neighbors,
                                    options.m_samples, options.seed);

  RunManifest manifest;
  manifest.subcommand = "rank";
  manifest.seed = options.seed;
  add_corpus_inputs(manifest, options.input_dir);
  add_vocab_inputs(manifest, options.vocab_dir);
  manifest.config["task"] = task.name;
  manifest.config["k_neighbors"] = std::to_string(options.k_neighbors);
  manifest.config["m_samples"] = std::to_string(options.m_samples);
  manifest.config["torso_head_mass"] = fmt_double(options.torso.head_mass);
  manifest.config["torso_tail_min"] = fmt_double(options.torso.tail_min_frac);
  manifest.config["ict_gaps_only"] = flag_str(options.flags.ict_gaps_only);
  manifest.config["retention_copied_only"] = flag_str(options.flags.retention_copied_only);

  std::string tsv = "rank\tfeature\tweight\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    tsv += std::to_string(i + 1) + "\t" + ranking[i].name + "\t" +
           fmt_double(ranking[i].weight) + "\n";
  }
  write_output(manifest, options.output_dir, "ranking.tsv", tsv);
  write_manifest(manifest, options.output_dir);

  out << task.name << " top features:\n";
  for (std::size_t i = 0; i < ranking.size() && i < 10; ++i) {
    out << "  " << (i + 1) << ". " << ranking[i].name << " "
        << fmt_double(ranking[i].weight) << "\n";
  }
}

void run_report(const ReportOptions& options, std::ostream& out) {
  ensure_dir(options.output_dir);
  const Prepared p = prepare(options.input_dir);
  const Vocabulary vocab = resolve_vocab(options.vocab_dir);

  const auto rows = separation_report(p.ingest.corpus, p.lineages, vocab, options.flags);
  const double rho =
      originality_popularity_correlation(p.ingest.corpus, p.lineages);

  RunManifest manifest;
  manifest.subcommand = "report";
  manifest.seed = options.seed;
  add_corpus_inputs(manifest, options.input_dir);
  add_vocab_inputs(manifest, options.vocab_dir);
  manifest.config["ict_gaps_only"] = flag_str(options.flags.ict_gaps_only);
  manifest.config["retention_copied_only"] = flag_str(options.flags.retention_copied_only);

  write_output(manifest, options.output_dir, "report.tsv", separation_tsv(rows));
  json summary;
  summary["originality_followers_spearman"] = rho;
  summary["n_rows"] = rows.size();
  write_output(manifest, options.output_dir, "report_summary.json",
               summary.dump(2) + "\n");
  write_manifest(manifest, options.output_dir);

  out << "popular (HFB+ERB) vs LFB:\n";
  for (const auto& row : rows) {
    out << "  " << row.metric << ": d=" << fmt_double(row.ks.d_statistic)
        << " p=" << fmt_double(row.ks.p_value) << " [" << row.ks.significance_band
        << "]\n";
  }
  out << "spearman(originality, followers) = " << fmt_double(rho) << "\n";
}

}  // namespace pinlab
