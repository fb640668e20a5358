#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "pinlab/corpus.hpp"
#include "pinlab/lineage.hpp"

namespace pinlab {

// Retention: per original pin on the board, (1 + engagement here) over
// (1 + mean engagement of its copies); never-copied originals use a copy
// mean of 0 unless copied_only is set. Production: per duplicate on the
// board, (1 + engagement on the origin board) over (1 + engagement here).
// Board values are plain means of the per-pin ratios.
struct ShareCoefficients {
  std::optional<double> lrc;
  std::optional<double> rrc;
  std::optional<double> lpc;
  std::optional<double> rpc;
  std::int64_t n_original = 0;
  std::int64_t n_duplicate = 0;
};

double likes_retention(const Corpus& corpus, const LineageMap& lineages,
                       const std::string& board_id, bool copied_only = false);
double repins_retention(const Corpus& corpus, const LineageMap& lineages,
                        const std::string& board_id, bool copied_only = false);
double likes_production(const Corpus& corpus, const LineageMap& lineages,
                        const std::string& board_id);
double repins_production(const Corpus& corpus, const LineageMap& lineages,
                         const std::string& board_id);

// All four at once; ineligible coefficients come back empty instead of
// throwing.
ShareCoefficients share_coefficients(const Corpus& corpus, const LineageMap& lineages,
                                     const std::string& board_id, bool copied_only = false);

}  // namespace pinlab
