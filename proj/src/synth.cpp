#include "pinlab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "json.hpp"
#include "pinlab/corpus.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

namespace {

using nlohmann::json;

// Surface forms that the token normalizer maps back onto each canonical
// term. Kept in sync with the tests that round-trip every entry.
const std::map<std::string, std::vector<std::string>>& fashion_surfaces() {
  static const std::map<std::string, std::vector<std::string>> kSurfaces = {
      {"bag", {"bag", "bags"}},
      {"button", {"button", "buttons"}},
      {"cloth", {"clothes", "cloth"}},
      {"curtain", {"curtain", "curtains"}},
      {"dress", {"dress", "dresses"}},
      {"feather", {"feather", "feathers"}},
      {"jacket", {"jacket", "jackets"}},
      {"jean", {"jeans", "jean"}},
      {"leather", {"leather"}},
      {"necklace", {"necklace"}},
      {"pant", {"pants", "pant"}},
      {"pillow", {"pillow", "pillows"}},
      {"shirt", {"shirt", "shirts"}},
      {"shoe", {"shoe"}},
      {"short", {"shorts", "short"}},
      {"skin", {"skin"}},
      {"skirt", {"skirt", "skirts"}},
      {"strap", {"strap", "straps"}},
      {"strip", {"striped", "strip"}},
      {"suit", {"suit", "suits"}},
      {"sunglass", {"sunglasses", "sunglass"}},
      {"trouser", {"trousers", "trouser"}},
      {"tshirt", {"tshirt", "tshirts"}},
      {"umbrella", {"umbrella", "umbrellas"}},
  };
  return kSurfaces;
}

const std::vector<std::string>& male_surfaces() {
  static const std::vector<std::string> kSurfaces = {"man", "men", "guy"};
  return kSurfaces;
}

const std::vector<std::string>& female_surfaces() {
  static const std::vector<std::string> kSurfaces = {"woman", "women",
                                                     "lady"};
  return kSurfaces;
}

const std::vector<std::string>& filler_tokens() {
  static const std::vector<std::string> kFiller = {
      "photo",  "outfit", "style",   "look",   "model",
      "runway", "casual", "vintage", "summer", "winter"};
  return kFiller;
}

std::map<std::string, double> popular_fashion_probs() {
  return {{"bag", 0.26},      {"button", 0.03},   {"cloth", 0.04},
          {"curtain", 0.02},  {"dress", 0.34},    {"feather", 0.02},
          {"jacket", 0.30},   {"jean", 0.22},     {"leather", 0.08},
          {"necklace", 0.12}, {"pant", 0.06},     {"pillow", 0.02},
          {"shirt", 0.38},    {"shoe", 0.25},     {"short", 0.09},
          {"skin", 0.05},     {"skirt", 0.28},    {"strap", 0.03},
          {"strip", 0.06},    {"suit", 0.10},     {"sunglass", 0.07},
          {"trouser", 0.11},  {"tshirt", 0.05},   {"umbrella", 0.02}};
}

std::map<std::string, double> popular_color_probs() {
  return {{"black", 0.38},  {"blue", 0.30},   {"brown", 0.10},
          {"green", 0.08},  {"grey", 0.12},   {"metal", 0.18},
          {"pink", 0.26},   {"purple", 0.03}, {"red", 0.22},
          {"silver", 0.06}, {"white", 0.42},  {"wooden", 0.02},
          {"yellow", 0.07}};
}

std::map<std::string, double> unpopular_fashion_probs() {
  return {{"bag", 0.14},      {"button", 0.02},   {"cloth", 0.08},
          {"curtain", 0.05},  {"dress", 0.18},    {"feather", 0.01},
          {"jacket", 0.12},   {"jean", 0.26},     {"leather", 0.13},
          {"necklace", 0.04}, {"pant", 0.17},     {"pillow", 0.06},
          {"shirt", 0.30},    {"shoe", 0.28},     {"short", 0.20},
          {"skin", 0.03},     {"skirt", 0.10},    {"strap", 0.02},
          {"strip", 0.12},    {"suit", 0.16},     {"sunglass", 0.03},
          {"trouser", 0.08},  {"tshirt", 0.12},   {"umbrella", 0.01}};
}

std::map<std::string, double> unpopular_color_probs() {
  return {{"black", 0.40},  {"blue", 0.33},   {"brown", 0.16},
          {"green", 0.12},  {"grey", 0.15},   {"metal", 0.08},
          {"pink", 0.10},   {"purple", 0.05}, {"red", 0.14},
          {"silver", 0.04}, {"white", 0.35},  {"wooden", 0.06},
          {"yellow", 0.18}};
}

void check_prob(const std::string& what, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error("InvalidConfig", what + " must lie in [0, 1]");
  }
}

void validate_class(const std::string& name, const SynthClassConfig& c) {
  if (c.n_boards < 1) {
    throw Error("InvalidConfig", name + ".n_boards must be positive");
  }
  if (c.originals_min < 1 || c.originals_max < c.originals_min) {
    throw Error("InvalidConfig", name + ".originals range is invalid");
  }
  if (!(c.originality_mean > 0.0 && c.originality_mean <= 1.0)) {
    throw Error("InvalidConfig",
                name + ".originality_mean must lie in (0, 1]");
  }
  if (c.originality_sd < 0.0 || c.level_jitter_sigma < 0.0 ||
      c.window_jitter_sigma < 0.0) {
    throw Error("InvalidConfig", name + " jitter sigmas must be >= 0");
  }
  if (c.like_level < 0.0 || c.repin_level < 0.0) {
    throw Error("InvalidConfig", name + " engagement levels must be >= 0");
  }
  if (c.retention < 0.0 || c.production < 0.0) {
    throw Error("InvalidConfig", name + " share factors must be >= 0");
  }
  if (!(c.window_days > 0.0)) {
    throw Error("InvalidConfig", name + ".window_days must be positive");
  }
  if (c.follower_log_sd < 0.0) {
    throw Error("InvalidConfig", name + ".follower_log_sd must be >= 0");
  }
  check_prob(name + ".p_male_only", c.p_male_only);
  check_prob(name + ".p_female_only", c.p_female_only);
  check_prob(name + ".p_both", c.p_both);
  if (c.p_male_only + c.p_female_only + c.p_both > 1.0 + 1e-12) {
    throw Error("InvalidConfig", name + " gender mix sums past 1");
  }
  for (const auto& [term, p] : c.fashion_probs) {
    if (fashion_surfaces().count(term) == 0) {
      throw Error("InvalidConfig", name + " unknown fashion term " + term);
    }
    check_prob(name + ".fashion_probs." + term, p);
  }
  for (const auto& [term, p] : c.color_probs) {
    check_prob(name + ".color_probs." + term, p);
  }
}

void validate(const SynthConfig& config) {
  if (config.share_rate_scale < 0.0) {
    throw Error("InvalidConfig", "share_rate_scale must be >= 0");
  }
  validate_class("hfb", config.hfb);
  validate_class("erb", config.erb);
  validate_class("lfb", config.lfb);
}

json class_to_json(const SynthClassConfig& c) {
  json j;
  j["n_boards"] = c.n_boards;
  j["originals_min"] = c.originals_min;
  j["originals_max"] = c.originals_max;
  j["originality_mean"] = c.originality_mean;
  j["originality_sd"] = c.originality_sd;
  j["like_level"] = c.like_level;
  j["repin_level"] = c.repin_level;
  j["level_jitter_sigma"] = c.level_jitter_sigma;
  j["retention"] = c.retention;
  j["production"] = c.production;
  j["window_days"] = c.window_days;
  j["window_jitter_sigma"] = c.window_jitter_sigma;
  j["follower_log_mean"] = c.follower_log_mean;
  j["follower_log_sd"] = c.follower_log_sd;
  j["p_male_only"] = c.p_male_only;
  j["p_female_only"] = c.p_female_only;
  j["p_both"] = c.p_both;
  j["fashion_probs"] = c.fashion_probs;
  j["color_probs"] = c.color_probs;
  return j;
}

SynthClassConfig class_from_json(const json& j, const SynthClassConfig& base) {
  SynthClassConfig c = base;
  if (!j.is_object()) {
    throw Error("InvalidConfig", "class config must be an object");
  }
  auto get_int = [&](const char* key, int& out) {
    if (j.contains(key)) out = j.at(key).get<int>();
  };
  auto get_double = [&](const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
  };
  get_int("n_boards", c.n_boards);
  get_int("originals_min", c.originals_min);
  get_int("originals_max", c.originals_max);
  get_double("originality_mean", c.originality_mean);
  get_double("originality_sd", c.originality_sd);
  get_double("like_level", c.like_level);
  get_double("repin_level", c.repin_level);
  get_double("level_jitter_sigma", c.level_jitter_sigma);
  get_double("retention", c.retention);
  get_double("production", c.production);
  get_double("window_days", c.window_days);
  get_double("window_jitter_sigma", c.window_jitter_sigma);
  get_double("follower_log_mean", c.follower_log_mean);
  get_double("follower_log_sd", c.follower_log_sd);
  get_double("p_male_only", c.p_male_only);
  get_double("p_female_only", c.p_female_only);
  get_double("p_both", c.p_both);
  if (j.contains("fashion_probs")) {
    c.fashion_probs =
        j.at("fashion_probs").get<std::map<std::string, double>>();
  }
  if (j.contains("color_probs")) {
    c.color_probs = j.at("color_probs").get<std::map<std::string, double>>();
  }
  return c;
}

struct BoardGen {
  std::string id;
  std::string name;
  Label label = Label::UNLABELED;
  std::int64_t followers = 0;
  std::int64_t start = 0;
  std::int64_t window_secs = 0;
  double like_mean = 0.0;
  double repin_mean = 0.0;
  int n_originals = 0;
  int quota = 0;
  const SynthClassConfig* cls = nullptr;
};

struct PinGen {
  std::string id;
  std::string image_id;
  int board = 0;
  std::int64_t created_at = 0;
  std::int64_t likes = 0;
  std::int64_t repins = 0;
  std::int64_t comments = 0;
  std::vector<std::string> tokens;
};

std::string padded(const char* prefix, int value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%04d", prefix, value);
  return buf;
}

std::string pin_name(int value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p%07d", value);
  return buf;
}

std::string image_name(int value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "i%07d", value);
  return buf;
}

std::vector<std::string> make_caption(Rng& rng, const SynthClassConfig& cls) {
  std::vector<std::string> tokens;
  const auto& filler = filler_tokens();
  tokens.push_back(filler[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(filler.size()) - 1))]);
  const double g = rng.uniform01();
  bool male = false;
  bool female = false;
  if (g < cls.p_male_only) {
    male = true;
  } else if (g < cls.p_male_only + cls.p_female_only) {
    female = true;
  } else if (g < cls.p_male_only + cls.p_female_only + cls.p_both) {
    male = true;
    female = true;
  }
  auto pick = [&rng](const std::vector<std::string>& options) {
    return options[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(options.size()) - 1))];
  };
  if (male) tokens.push_back(pick(male_surfaces()));
  if (female) tokens.push_back(pick(female_surfaces()));
  for (const auto& [term, p] : cls.fashion_probs) {
    if (rng.uniform01() < p) tokens.push_back(pick(fashion_surfaces().at(term)));
  }
  for (const auto& [term, p] : cls.color_probs) {
    if (rng.uniform01() < p) tokens.push_back(term);
  }
  const std::int64_t extra = rng.uniform_int(1, 2);
  for (std::int64_t i = 0; i < extra; ++i) {
    tokens.push_back(filler[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(filler.size()) - 1))]);
  }
  return tokens;
}

}  // namespace

SynthConfig default_synth_config() {
  SynthConfig config;

  config.hfb.n_boards = 200;
  config.hfb.originals_min = 24;
  config.hfb.originals_max = 40;
  config.hfb.originality_mean = 0.75;
  config.hfb.originality_sd = 0.10;
  config.hfb.like_level = 12.0;
  config.hfb.repin_level = 20.0;
  config.hfb.retention = 0.30;
  config.hfb.production = 1.2;
  config.hfb.window_days = 75.0;
  config.hfb.follower_log_mean = 9.0;
  config.hfb.follower_log_sd = 0.8;
  config.hfb.p_male_only = 0.11;
  config.hfb.p_female_only = 0.20;
  config.hfb.p_both = 0.37;
  config.hfb.fashion_probs = popular_fashion_probs();
  config.hfb.color_probs = popular_color_probs();

  config.erb = config.hfb;
  config.erb.retention = 0.32;
  config.erb.production = 1.18;
  config.erb.follower_log_mean = 8.6;
  config.erb.follower_log_sd = 1.2;
  config.erb.p_male_only = 0.14;
  config.erb.p_female_only = 0.26;
  config.erb.p_both = 0.35;

  config.lfb.n_boards = 200;
  config.lfb.originals_min = 10;
  config.lfb.originals_max = 18;
  config.lfb.originality_mean = 0.35;
  config.lfb.originality_sd = 0.10;
  config.lfb.like_level = 3.0;
  config.lfb.repin_level = 5.0;
  config.lfb.retention = 1.15;
  config.lfb.production = 0.7;
  config.lfb.window_days = 20.0;
  config.lfb.follower_log_mean = 4.0;
  config.lfb.follower_log_sd = 0.8;
  config.lfb.p_male_only = 0.19;
  config.lfb.p_female_only = 0.23;
  config.lfb.p_both = 0.26;
  config.lfb.fashion_probs = unpopular_fashion_probs();
  config.lfb.color_probs = unpopular_color_probs();

  return config;
}

std::string synth_config_to_json(const SynthConfig& config) {
  json j;
  j["seed"] = config.seed;
  j["share_rate_scale"] = config.share_rate_scale;
  j["hfb"] = class_to_json(config.hfb);
  j["erb"] = class_to_json(config.erb);
  j["lfb"] = class_to_json(config.lfb);
  return j.dump(2) + "\n";
}

SynthConfig synth_config_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error("InvalidConfig", "config is not a JSON object");
  }
  SynthConfig config = default_synth_config();
  try {
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("share_rate_scale")) {
      config.share_rate_scale = j.at("share_rate_scale").get<double>();
    }
    if (j.contains("hfb")) config.hfb = class_from_json(j.at("hfb"), config.hfb);
    if (j.contains("erb")) config.erb = class_from_json(j.at("erb"), config.erb);
    if (j.contains("lfb")) config.lfb = class_from_json(j.at("lfb"), config.lfb);
  } catch (const json::exception& e) {
    throw Error("InvalidConfig", e.what());
  }
  validate(config);
  return config;
}

SynthOutput generate(const SynthConfig& config) {
  validate(config);
  Rng rng(config.seed);

  constexpr std::int64_t kEpoch = 1400000000;
  constexpr std::int64_t kDay = 86400;

  std::vector<BoardGen> boards;
  struct ClassEntry {
    const char* prefix;
    Label label;
    const SynthClassConfig* cls;
  };
  const ClassEntry classes[] = {
      {"hfb", Label::HFB, &config.hfb},
      {"erb", Label::ERB, &config.erb},
      {"lfb", Label::LFB, &config.lfb},
  };

  for (const auto& entry : classes) {
    for (int i = 0; i < entry.cls->n_boards; ++i) {
      BoardGen b;
      b.id = padded(entry.prefix, i + 1);
      b.name = std::string(entry.prefix) + " collection " +
               std::to_string(i + 1);
      b.label = entry.label;
      b.cls = entry.cls;
      b.followers = std::llround(
          rng.lognormal(entry.cls->follower_log_mean,
                        entry.cls->follower_log_sd));
      if (b.followers < 1) b.followers = 1;
      b.start = kEpoch + static_cast<std::int64_t>(boards.size()) * kDay;
      const double window = entry.cls->window_days * kDay *
                            rng.lognormal(0.0, entry.cls->window_jitter_sigma);
      b.window_secs = std::max<std::int64_t>(2, std::llround(window));
      const double jitter = rng.lognormal(0.0, entry.cls->level_jitter_sigma);
      b.like_mean = entry.cls->like_level * jitter;
      b.repin_mean = entry.cls->repin_level * jitter;
      b.n_originals = static_cast<int>(
          rng.uniform_int(entry.cls->originals_min, entry.cls->originals_max));
      double target = rng.normal(entry.cls->originality_mean,
                                 entry.cls->originality_sd);
      target = std::clamp(target, 0.12, 0.95);
      b.quota = static_cast<int>(std::llround(
          b.n_originals * (1.0 - target) / target * config.share_rate_scale));
      if (b.quota < 0) b.quota = 0;
      boards.push_back(std::move(b));
    }
  }

  std::vector<PinGen> pins;
  std::vector<int> original_index;
  int pin_counter = 0;
  for (std::size_t bi = 0; bi < boards.size(); ++bi) {
    const BoardGen& b = boards[bi];
    for (int j = 0; j < b.n_originals; ++j) {
      PinGen p;
      ++pin_counter;
      p.id = pin_name(pin_counter);
      p.image_id = image_name(pin_counter);
      p.board = static_cast<int>(bi);
      p.created_at = b.start + rng.uniform_int(0, 30 * kDay);
      p.likes = rng.poisson(b.like_mean);
      p.repins = rng.poisson(b.repin_mean);
      p.comments = rng.poisson(0.3);
      p.tokens = make_caption(rng, *b.cls);
      original_index.push_back(static_cast<int>(pins.size()));
      pins.push_back(std::move(p));
    }
  }

  if (!original_index.empty()) {
    const auto n_orig = static_cast<std::int64_t>(original_index.size());
    for (std::size_t bi = 0; bi < boards.size(); ++bi) {
      const BoardGen& host = boards[bi];
      for (int s = 0; s < host.quota; ++s) {
        int origin = original_index[static_cast<std::size_t>(
            rng.uniform_int(0, n_orig - 1))];
        for (int attempt = 0;
             attempt < 16 && pins[origin].board == static_cast<int>(bi);
             ++attempt) {
          origin = original_index[static_cast<std::size_t>(
              rng.uniform_int(0, n_orig - 1))];
        }
        const PinGen& src = pins[origin];
        const BoardGen& origin_board = boards[static_cast<std::size_t>(src.board)];
        PinGen p;
        ++pin_counter;
        p.id = pin_name(pin_counter);
        p.image_id = src.image_id;
        p.board = static_cast<int>(bi);
        p.created_at = src.created_at + 1 +
                       rng.uniform_int(0, origin_board.window_secs - 1);
        const double r = origin_board.cls->retention;
        const double h = host.cls->production;
        p.likes = rng.poisson(static_cast<double>(src.likes) * r * h);
        p.repins = rng.poisson(static_cast<double>(src.repins) * r * h);
        p.comments = rng.poisson(0.3);
        p.tokens = src.tokens;
        pins.push_back(std::move(p));
      }
    }
  }

  SynthOutput out;
  for (const BoardGen& b : boards) {
    json j;
    j["board_id"] = b.id;
    j["name"] = b.name;
    j["follower_count"] = b.followers;
    j["label"] = label_to_string(b.label);
    out.boards_jsonl += j.dump();
    out.boards_jsonl += '\n';
  }
  for (const PinGen& p : pins) {
    json j;
    j["pin_id"] = p.id;
    j["board_id"] = boards[static_cast<std::size_t>(p.board)].id;
    j["image_id"] = p.image_id;
    j["created_at"] = p.created_at;
    j["likes"] = p.likes;
    j["repins"] = p.repins;
    j["comments"] = p.comments;
    j["caption_tokens"] = p.tokens;
    out.pins_jsonl += j.dump();
    out.pins_jsonl += '\n';
  }
  return out;
}

}  // namespace pinlab
