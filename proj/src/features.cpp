#include "pinlab/features.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/share_metrics.hpp"
#include "pinlab/stats.hpp"
#include "pinlab/temporal.hpp"

namespace pinlab {

using nlohmann::json;

namespace {

const char* kScalarNames[] = {"originality", "lrc",         "rrc",          "lpc",
                              "rpc",         "total_pins",  "avg_likes",    "avg_repins",
                              "avg_comments", "ict",        "dos",          "likes_speed",
                              "repins_speed"};

const char* kGenderNames[] = {"male", "female", "male-female"};

struct GroupSpec {
  const char* kind;
  TermKind term_kind;
  int arity;
  std::size_t bins;
};

const GroupSpec kGroupSpecs[] = {
    {"fashion", TermKind::FASHION, 1, 10},
    {"fashion_bi", TermKind::FASHION, 2, 10},
    {"fashion_tri", TermKind::FASHION, 3, 10},
    {"color", TermKind::COLOR, 1, 10},
    {"color_bi", TermKind::COLOR, 2, 10},
    {"gender_fashion_bi", TermKind::GENDER_FASHION, 2, 10},
    {"gender_fashion_tri", TermKind::GENDER_FASHION, 3, 10},
    {"gender_color", TermKind::GENDER_COLOR, 2, 5},
};

TermKind term_kind_from_string(const std::string& s) {
  if (s == "gender") return TermKind::GENDER;
  if (s == "fashion") return TermKind::FASHION;
  if (s == "color") return TermKind::COLOR;
  if (s == "gender_fashion") return TermKind::GENDER_FASHION;
  if (s == "gender_color") return TermKind::GENDER_COLOR;
  throw Error("SchemaMismatch", "unknown term kind " + s);
}

const char* term_kind_to_string(TermKind kind) {
  switch (kind) {
    case TermKind::GENDER: return "gender";
    case TermKind::FASHION: return "fashion";
    case TermKind::COLOR: return "color";
    case TermKind::GENDER_FASHION: return "gender_fashion";
    case TermKind::GENDER_COLOR: return "gender_color";
  }
  return "fashion";
}

// The optional scalars and their fallback imputations when the fitting
// corpus never defines them (ratios sit at the neutral 1, temporal at 0).
const std::pair<const char*, double> kOptionalScalars[] = {
    {"lrc", 1.0},        {"rrc", 1.0},          {"lpc", 1.0},
    {"rpc", 1.0},        {"ict", 0.0},          {"dos", 0.0},
    {"likes_speed", 0.0}, {"repins_speed", 0.0},
};

std::vector<std::string> build_names(const std::vector<BinGroup>& groups) {
  std::vector<std::string> names;
  names.reserve(kFeatureCount);
  for (const char* n : kScalarNames) names.emplace_back(n);
  for (const char* n : kGenderNames) names.emplace_back(n);
  for (const BinGroup& g : groups) {
    for (std::size_t i = 0; i < g.bins; ++i) {
      if (i < g.tuples.size())
        names.push_back(g.tuples[i]);
      else
        names.push_back(g.kind + "_pad" + std::to_string(i));
    }
  }
  return names;
}

std::vector<PinTermProfile> board_profiles(const Corpus& corpus,
                                           const std::vector<std::string>& pin_ids,
                                           const Vocabulary& vocab) {
  std::vector<PinTermProfile> profiles;
  profiles.reserve(pin_ids.size());
  for (const std::string& pin_id : pin_ids) {
    const PinRecord& pin = corpus.pins.at(pin_id);
    profiles.push_back(profile_pin(normalize_tokens(pin.caption_tokens, vocab), vocab));
  }
  return profiles;
}

}  // namespace

FeatureSchema fit_schema(const Corpus& corpus, const LineageMap& lineages,
                         const Vocabulary& vocab, const TorsoParams& torso,
                         const MetricFlags& flags) {
  FeatureSchema schema;
  schema.torso = torso;
  schema.flags = flags;

  std::vector<std::string> all_pins;
  all_pins.reserve(corpus.pins.size());
  for (const auto& [pin_id, pin] : corpus.pins) all_pins.push_back(pin_id);
  const std::int64_t total_pins = static_cast<std::int64_t>(all_pins.size());

  for (const GroupSpec& spec : kGroupSpecs) {
    BinGroup group;
    group.kind = spec.kind;
    group.arity = spec.arity;
    group.term_kind = spec.term_kind;
    group.bins = spec.bins;
    const auto freq = count_tuples(corpus, all_pins, spec.arity, spec.term_kind, vocab);
    if (!freq.empty()) {
      const TorsoSelection sel =
          torso_top_k(freq, total_pins, spec.bins, torso.head_mass, torso.tail_min_frac);
      group.tuples = sel.terms;
      group.backfilled = sel.backfilled;
    } else {
      group.backfilled = true;
    }
    schema.groups.push_back(std::move(group));
  }
  schema.names = build_names(schema.groups);

  std::map<std::string, std::vector<double>> observed;
  for (const auto& [board_id, pin_ids] : corpus.by_board) {
    if (pin_ids.empty()) continue;
    const ShareCoefficients sc =
        share_coefficients(corpus, lineages, board_id, flags.retention_copied_only);
    const TemporalMetrics tm =
        board_temporal_metrics(corpus, lineages, board_id, flags.ict_gaps_only);
    const auto push = [&observed](const char* name, const std::optional<double>& v) {
      if (v) observed[name].push_back(*v);
    };
    push("lrc", sc.lrc);
    push("rrc", sc.rrc);
    push("lpc", sc.lpc);
    push("rpc", sc.rpc);
    push("ict", tm.ict);
    push("dos", tm.dos);
    push("likes_speed", tm.likes_speed);
    push("repins_speed", tm.repins_speed);
  }
  for (const auto& [name, fallback] : kOptionalScalars) {
    const auto it = observed.find(name);
    schema.imputation[name] =
        (it == observed.end() || it->second.empty()) ? fallback : quantile(it->second, 0.5);
  }
  return schema;
}

FeatureVector vectorize(const Corpus& corpus, const LineageMap& lineages,
                        const FeatureSchema& schema, const Vocabulary& vocab,
                        const std::string& board_id) {
  const auto board_it = corpus.boards.find(board_id);
  if (board_it == corpus.boards.end()) throw Error("UnknownBoard", "no board " + board_id);
  const auto pins_it = corpus.by_board.find(board_id);
  if (pins_it == corpus.by_board.end() || pins_it->second.empty())
    throw Error("EmptyBoard", "board " + board_id + " has no pins");
  const std::vector<std::string>& pin_ids = pins_it->second;

  FeatureVector fv;
  fv.board_id = board_id;
  fv.label = board_it->second.label;
  fv.target = std::log10(1.0 + static_cast<double>(board_it->second.follower_count));
  fv.values.reserve(kFeatureCount);

  const OriginalityReport orig = originality_score(corpus, lineages, board_id);
  const ShareCoefficients sc =
      share_coefficients(corpus, lineages, board_id, schema.flags.retention_copied_only);
  const TemporalMetrics tm =
      board_temporal_metrics(corpus, lineages, board_id, schema.flags.ict_gaps_only);

  const auto imputed = [&schema](const char* name, const std::optional<double>& v) {
    return v ? *v : schema.imputation.at(name);
  };

  double sum_likes = 0.0, sum_repins = 0.0, sum_comments = 0.0;
  for (const std::string& pin_id : pin_ids) {
    const PinRecord& pin = corpus.pins.at(pin_id);
    sum_likes += static_cast<double>(pin.likes);
    sum_repins += static_cast<double>(pin.repins);
    sum_comments += static_cast<double>(pin.comments);
  }
  const double n_pins = static_cast<double>(pin_ids.size());

  fv.values.push_back(orig.score);
  fv.values.push_back(imputed("lrc", sc.lrc));
  fv.values.push_back(imputed("rrc", sc.rrc));
  fv.values.push_back(imputed("lpc", sc.lpc));
  fv.values.push_back(imputed("rpc", sc.rpc));
  fv.values.push_back(n_pins);
  fv.values.push_back(sum_likes / n_pins);
  fv.values.push_back(sum_repins / n_pins);
  fv.values.push_back(sum_comments / n_pins);
  fv.values.push_back(imputed("ict", tm.ict));
  fv.values.push_back(imputed("dos", tm.dos));
  fv.values.push_back(imputed("likes_speed", tm.likes_speed));
  fv.values.push_back(imputed("repins_speed", tm.repins_speed));

  const std::vector<PinTermProfile> profiles = board_profiles(corpus, pin_ids, vocab);
  double n_male = 0.0, n_female = 0.0, n_both = 0.0;
  for (const PinTermProfile& p : profiles) {
    if (p.male) n_male += 1.0;
    if (p.female) n_female += 1.0;
    if (p.male && p.female) n_both += 1.0;
  }
  fv.values.push_back(n_male / n_pins);
  fv.values.push_back(n_female / n_pins);
  fv.values.push_back(n_both / n_pins);

  for (const BinGroup& group : schema.groups) {
    std::map<std::string, std::int64_t> counts;
    for (const PinTermProfile& p : profiles)
      for (const std::string& tuple : pin_tuples(p, group.arity, group.term_kind))
        ++counts[tuple];
    for (std::size_t i = 0; i < group.bins; ++i) {
      if (i < group.tuples.size()) {
        const auto it = counts.find(group.tuples[i]);
        fv.values.push_back(it == counts.end() ? 0.0
                                               : static_cast<double>(it->second) / n_pins);
      } else {
        fv.values.push_back(0.0);
      }
    }
  }
  return fv;
}

std::vector<FeatureVector> vectorize_all(const Corpus& corpus, const LineageMap& lineages,
                                         const FeatureSchema& schema, const Vocabulary& vocab) {
  std::vector<FeatureVector> out;
  for (const auto& [board_id, pin_ids] : corpus.by_board) {
    if (pin_ids.empty()) continue;
    out.push_back(vectorize(corpus, lineages, schema, vocab, board_id));
  }
  return out;
}

std::string schema_to_json(const FeatureSchema& schema) {
  json j;
  j["names"] = schema.names;
  j["torso"] = {{"head_mass", schema.torso.head_mass},
                {"tail_min_frac", schema.torso.tail_min_frac}};
  j["flags"] = {{"ict_gaps_only", schema.flags.ict_gaps_only},
                {"retention_copied_only", schema.flags.retention_copied_only}};
  j["imputation"] = schema.imputation;
  json groups = json::array();
  for (const BinGroup& g : schema.groups) {
    groups.push_back({{"kind", g.kind},
                      {"arity", g.arity},
                      {"term_kind", term_kind_to_string(g.term_kind)},
                      {"bins", g.bins},
                      {"tuples", g.tuples},
                      {"backfilled", g.backfilled}});
  }
  j["groups"] = std::move(groups);
  return j.dump(2) + "\n";
}

FeatureSchema schema_from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("SchemaMismatch", "schema JSON is unparsable");
  FeatureSchema schema;
  try {
    schema.names = j.at("names").get<std::vector<std::string>>();
    schema.torso.head_mass = j.at("torso").at("head_mass").get<double>();
    schema.torso.tail_min_frac = j.at("torso").at("tail_min_frac").get<double>();
    schema.flags.ict_gaps_only = j.at("flags").at("ict_gaps_only").get<bool>();
    schema.flags.retention_copied_only = j.at("flags").at("retention_copied_only").get<bool>();
    schema.imputation = j.at("imputation").get<std::map<std::string, double>>();
    for (const json& g : j.at("groups")) {
      BinGroup group;
      group.kind = g.at("kind").get<std::string>();
      group.arity = g.at("arity").get<int>();
      group.term_kind = term_kind_from_string(g.at("term_kind").get<std::string>());
      group.bins = g.at("bins").get<std::size_t>();
      group.tuples = g.at("tuples").get<std::vector<std::string>>();
      group.backfilled = g.at("backfilled").get<bool>();
      schema.groups.push_back(std::move(group));
    }
  } catch (const json::exception& e) {
    throw Error("SchemaMismatch", std::string("schema JSON missing fields: ") + e.what());
  }
  if (schema.names.size() != kFeatureCount)
    throw Error("SchemaMismatch", "schema must carry exactly 91 feature names");
  return schema;
}

}  // namespace pinlab
