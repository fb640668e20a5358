#include "pinlab/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pinlab/errors.hpp"
#include "pinlab/rng.hpp"

namespace pinlab {

namespace {

struct TreeBuilder {
  const std::vector<std::vector<double>>& x;
  const std::vector<int>& y;
  int min_leaf;
  int features_per_node;
  Rng& rng;
  Tree tree;

  int grow(std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo;
    std::size_t ones = 0;
    for (std::size_t i = lo; i < hi; ++i) ones += static_cast<std::size_t>(y[idx[i]]);

    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[node_id].leaf_value = static_cast<double>(ones) / static_cast<double>(n);
    if (ones == 0 || ones == n || n < 2 * static_cast<std::size_t>(min_leaf) || n < 2)
      return node_id;

    // Distinct features, drawn without replacement.
    const std::size_t d = x[0].size();
    std::vector<std::size_t> features(d);
    std::iota(features.begin(), features.end(), std::size_t{0});
    const std::size_t want = std::min(d, static_cast<std::size_t>(features_per_node));
    for (std::size_t i = 0; i < want; ++i) {
      const std::size_t j = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(d) - 1));
      std::swap(features[i], features[j]);
    }

    const double parent_n = static_cast<double>(n);
    int best_feature = -1;
    double best_threshold = 0.0;
    double best_impurity = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> vals(n);
    for (std::size_t fi = 0; fi < want; ++fi) {
      const std::size_t f = features[fi];
      for (std::size_t i = 0; i < n; ++i)
        vals[i] = {x[idx[lo + i]][f], y[idx[lo + i]]};
      std::sort(vals.begin(), vals.end());
      if (vals.front().first == vals.back().first) continue;

      double left_n = 0.0, left_ones = 0.0;
      const double total_ones = static_cast<double>(ones);
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_n += 1.0;
        left_ones += static_cast<double>(vals[i].second);
        if (vals[i].first == vals[i + 1].first) continue;
        const double min_side = static_cast<double>(min_leaf);
        if (left_n < min_side || parent_n - left_n < min_side) continue;
        const double right_n = parent_n - left_n;
        const double right_ones = total_ones - left_ones;
        const double pl = left_ones / left_n;
        const double pr = right_ones / right_n;
        const double gini_l = 2.0 * pl * (1.0 - pl);
        const double gini_r = 2.0 * pr * (1.0 - pr);
        const double impurity = (left_n * gini_l + right_n * gini_r) / parent_n;
        if (impurity < best_impurity) {
          best_impurity = impurity;
          best_feature = static_cast<int>(f);
          best_threshold = vals[i].first + 0.5 * (vals[i + 1].first - vals[i].first);
        }
      }
    }
    if (best_feature < 0) return node_id;

    const auto mid_it = std::partition(idx.begin() + static_cast<std::ptrdiff_t>(lo),
                                       idx.begin() + static_cast<std::ptrdiff_t>(hi),
                                       [&](std::size_t i) {
                                         return x[i][static_cast<std::size_t>(best_feature)] <=
                                                best_threshold;
                                       });
    const std::size_t mid = static_cast<std::size_t>(mid_it - idx.begin());
    if (mid == lo || mid == hi) return node_id;

    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    const int left = grow(idx, lo, mid);
    tree.nodes[node_id].left = left;
    const int right = grow(idx, mid, hi);
    tree.nodes[node_id].right = right;
    return node_id;
  }
};

}  // namespace

Forest train_forest(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                    const ForestConfig& config, std::uint64_t seed) {
  if (x.empty() || x.size() != y.size())
    throw Error("TooFewExamples", "need one label per example and at least one example");
  const std::size_t n = x.size();
  const std::size_t d = x[0].size();

  Forest forest;
  forest.bootstrap = config.bootstrap;
  forest.features_per_node =
      config.features_per_node > 0
          ? config.features_per_node
          : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));

  for (int t = 0; t < config.n_trees; ++t) {
    Rng rng(mix_seed(seed, 0xf03e57ULL + static_cast<std::uint64_t>(t)));
    std::vector<std::size_t> idx(n);
    if (config.bootstrap) {
      for (std::size_t i = 0; i < n; ++i)
        idx[i] = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
      std::sort(idx.begin(), idx.end());
    } else {
      std::iota(idx.begin(), idx.end(), std::size_t{0});
    }
    TreeBuilder builder{x, y, config.min_leaf, forest.features_per_node, rng, {}};
    builder.grow(idx, 0, idx.size());
    forest.trees.push_back(std::move(builder.tree));
  }
  return forest;
}

double tree_score(const Tree& tree, const std::vector<double>& x) {
  int node = 0;
  while (tree.nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node)];
    node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
  }
  return tree.nodes[static_cast<std::size_t>(node)].leaf_value;
}

double forest_score(const Forest& forest, const std::vector<double>& x) {
  double acc = 0.0;
  for (const Tree& tree : forest.trees) acc += tree_score(tree, x);
  return acc / static_cast<double>(forest.trees.size());
}

}  // namespace pinlab
