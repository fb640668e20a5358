#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinlab/corpus.hpp"

namespace pinlab {

// All pins carrying one image. The original is the member minimizing
// (created_at, board_id, pin_id); everything else is a duplicate.
struct Lineage {
  std::string image_id;
  std::string original;
  std::vector<std::string> duplicates;
};

using LineageMap = std::map<std::string, Lineage>;

struct OriginalityReport {
  std::string board_id;
  std::int64_t o_b = 0;
  std::int64_t t_b = 0;
  double score = 0.0;
};

LineageMap resolve_lineages(const Corpus& corpus);

bool is_original(const LineageMap& lineages, const PinRecord& pin);

// score = originals / total pins of the board.
OriginalityReport originality_score(const Corpus& corpus, const LineageMap& lineages,
                                    const std::string& board_id);

// Spearman rank correlation between board originality scores and follower
// counts, over boards with at least one pin.
double originality_popularity_correlation(const Corpus& corpus, const LineageMap& lineages);

}  // namespace pinlab
