#include "pinlab/relieff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pinlab/errors.hpp"
#include "pinlab/kern.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

std::vector<RankedFeature> relieff_rank(const Matrix& x, const std::vector<int>& y,
                                        const std::vector<std::string>& feature_names,
                                        std::size_t k_neighbors, std::size_t m_samples,
                                        std::uint64_t seed) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n)
    throw Error("TooFewExamples", "need one label per example and at least one example");
  const std::size_t d = x[0].size();
  if (feature_names.size() != d)
    throw Error("DimensionMismatch", "one name per feature required");
  if (k_neighbors < 1) throw Error("InvalidConfig", "k_neighbors must be >= 1");

  std::size_t class_counts[2] = {0, 0};
  for (const int v : y) {
    if (v != 0 && v != 1) throw Error("DegenerateLabels", "labels must be 0 or 1");
    ++class_counts[v];
  }
  if (class_counts[0] < k_neighbors + 1 || class_counts[1] < k_neighbors + 1)
    throw Error("TooFewExamples", "each class needs at least k_neighbors + 1 members");

  // Min-max scale to [0,1]; constant features stay at 0 and cannot score.
  Matrix scaled(n, std::vector<double>(d, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    double lo = x[0][j], hi = x[0][j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, x[i][j]);
      hi = std::max(hi, x[i][j]);
    }
    const double range = hi - lo;
    if (range > 0.0)
      for (std::size_t i = 0; i < n; ++i) scaled[i][j] = (x[i][j] - lo) / range;
  }

  std::vector<std::size_t> samples(n);
  std::iota(samples.begin(), samples.end(), std::size_t{0});
  if (m_samples > 0 && m_samples < n) {
    Rng rng(mix_seed(seed, 0x3e11e0));
    rng.shuffle(samples);
    samples.resize(m_samples);
    std::sort(samples.begin(), samples.end());
  }
  const double m = static_cast<double>(samples.size());
  const double k = static_cast<double>(k_neighbors);

  std::vector<double> weights(d, 0.0);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n - 1);
  for (const std::size_t i : samples) {
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      dist.emplace_back(kern_squared_distance(scaled[i], scaled[j]), j);
    }
    std::sort(dist.begin(), dist.end());

    std::size_t hits = 0, misses = 0;
    for (const auto& [d2, j] : dist) {
      if (hits == k_neighbors && misses == k_neighbors) break;
      const bool hit = y[j] == y[i];
      if (hit && hits < k_neighbors) {
        ++hits;
        for (std::size_t f = 0; f < d; ++f)
          weights[f] -= std::fabs(scaled[i][f] - scaled[j][f]) / (m * k);
      } else if (!hit && misses < k_neighbors) {
        ++misses;
        for (std::size_t f = 0; f < d; ++f)
          weights[f] += std::fabs(scaled[i][f] - scaled[j][f]) / (m * k);
      }
    }
  }

  std::vector<RankedFeature> ranked(d);
  for (std::size_t f = 0; f < d; ++f) ranked[f] = {feature_names[f], weights[f]};
  std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.name < b.name;
  });
  return ranked;
}

}  // namespace pinlab
