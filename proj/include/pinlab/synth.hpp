#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace pinlab {

// Per-class knobs of the corpus generator. Boards draw per-board jitters
// around these levels; originals live on their board, and every board is
// assigned a duplicate quota derived from its originality target, filled
// by copying originals sampled from the whole corpus.
struct SynthClassConfig {
  int n_boards = 200;
  int originals_min = 24;
  int originals_max = 40;
  // Target share of a board's pins that are its own originals.
  double originality_mean = 0.75;
  double originality_sd = 0.10;
  // Poisson means for original pins, jittered per board.
  double like_level = 12.0;
  double repin_level = 20.0;
  double level_jitter_sigma = 0.5;
  // Copies of this class's originals keep this fraction of the origin's
  // engagement; pins copied onto this class's boards get scaled by
  // production on top.
  double retention = 0.30;
  double production = 1.2;
  // Copies of an original arrive within this window after it.
  double window_days = 75.0;
  double window_jitter_sigma = 0.55;
  // Natural-log parameters of the follower-count draw.
  double follower_log_mean = 9.0;
  double follower_log_sd = 0.8;
  // Per-pin gender mix; the remainder is "no gender term".
  double p_male_only = 0.11;
  double p_female_only = 0.20;
  double p_both = 0.37;
  // Per-pin independent inclusion probability per canonical term.
  std::map<std::string, double> fashion_probs;
  std::map<std::string, double> color_probs;
};

struct SynthConfig {
  std::uint64_t seed = 42;
  // Scales every board's duplicate quota; 0 disables copying entirely.
  double share_rate_scale = 1.0;
  SynthClassConfig hfb;
  SynthClassConfig erb;
  SynthClassConfig lfb;
};

SynthConfig default_synth_config();

std::string synth_config_to_json(const SynthConfig& config);
SynthConfig synth_config_from_json(const std::string& text);

struct SynthOutput {
  std::string boards_jsonl;
  std::string pins_jsonl;
};

// Deterministic under config.seed: one RNG stream, fixed generation
// order, stable serialization.
SynthOutput generate(const SynthConfig& config);

}  // namespace pinlab
