#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pinlab/learn.hpp"

namespace pinlab {

struct RankedFeature {
  std::string name;
  double weight = 0.0;
};

// ReliefF over min-max scaled features: every sampled instance pulls each
// feature's weight down by its mean distance to the k nearest same-class
// neighbors and up by its mean distance to the k nearest other-class
// neighbors. Neighbor ties break on (distance, index). m_samples == 0
// uses every instance in index order; otherwise a seeded sample without
// replacement. Output is sorted by weight descending (names ascending on
// exact ties).
std::vector<RankedFeature> relieff_rank(const Matrix& x, const std::vector<int>& y,
                                        const std::vector<std::string>& feature_names,
                                        std::size_t k_neighbors = 10,
                                        std::size_t m_samples = 0, std::uint64_t seed = 0);

}  // namespace pinlab
