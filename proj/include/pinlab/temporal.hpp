#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pinlab/corpus.hpp"
#include "pinlab/lineage.hpp"

namespace pinlab {

// Per-board means over eligible original pins. ICT/DoS need one copy;
// speeds additionally need a strictly positive span, and originals whose
// copies collapse onto one instant are skipped and counted.
struct TemporalMetrics {
  std::optional<double> ict;
  std::optional<double> dos;
  std::optional<double> likes_speed;
  std::optional<double> repins_speed;
  std::int64_t n_pins_used = 0;
  std::int64_t n_excluded_zero_dos = 0;
};

// Mean of the copy-gap list [0, t1-t0, ..., tn-1 - tn-2] over sorted
// timestamps; the leading zero stays in the average. gaps_only drops it
// (and needs >= 2 copies).
double pin_ict(std::span<const std::int64_t> duplicate_timestamps, bool gaps_only = false);

// Span between first and last copy.
double pin_dos(std::span<const std::int64_t> duplicate_timestamps);

// Total copy engagement per second of sharing.
double pin_likes_speed(std::span<const std::int64_t> duplicate_likes, double dos);

TemporalMetrics board_temporal_metrics(const Corpus& corpus, const LineageMap& lineages,
                                       const std::string& board_id, bool ict_gaps_only = false);

}  // namespace pinlab
