#pragma once

#include <cstdint>
#include <vector>

namespace pinlab {

// flat node array; feature == -1 marks a leaf.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double leaf_value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct Forest {
  std::vector<Tree> trees;
  int features_per_node = 0;
  bool bootstrap = true;
};

struct ForestConfig {
  int n_trees = 100;
  int min_leaf = 1;
  // 0 resolves to ceil(sqrt(dim)).
  int features_per_node = 0;
  bool bootstrap = true;
};

// Gini-split classification forest over raw (unstandardized) features.
// Tree t draws its bootstrap sample and per-node feature subsets from an
// RNG seeded by (seed, t), so training is reproducible and trees are
// independent of each other's growth order.
Forest train_forest(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                    const ForestConfig& config, std::uint64_t seed);

double tree_score(const Tree& tree, const std::vector<double>& x);

// Mean of per-tree leaf class-1 fractions, in [0,1].
double forest_score(const Forest& forest, const std::vector<double>& x);

}  // namespace pinlab
