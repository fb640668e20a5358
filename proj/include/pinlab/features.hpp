#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinlab/content.hpp"
#include "pinlab/corpus.hpp"
#include "pinlab/lineage.hpp"

namespace pinlab {

inline constexpr std::size_t kFeatureCount = 91;

struct TorsoParams {
  double head_mass = 0.2;
  double tail_min_frac = 0.01;
};

struct MetricFlags {
  bool ict_gaps_only = false;
  bool retention_copied_only = false;
};

// One term-bin block of the schema: the tuples the torso selection bound
// to its slots. Groups short on tuples are padded with zero-valued
// placeholder names.
struct BinGroup {
  std::string kind;
  int arity = 1;
  TermKind term_kind = TermKind::FASHION;
  std::size_t bins = 0;
  std::vector<std::string> tuples;
  bool backfilled = false;
};

// 13 sharing/temporal scalars, 3 gender fractions, then 75 term bins.
// Bins are bound to concrete tuples at fit time; optional scalars carry
// the fitting corpus's median for imputation.
struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<BinGroup> groups;
  std::map<std::string, double> imputation;
  TorsoParams torso;
  MetricFlags flags;
};

struct FeatureVector {
  std::string board_id;
  std::vector<double> values;
  double target = 0.0;
  Label label = Label::UNLABELED;
};

FeatureSchema fit_schema(const Corpus& corpus, const LineageMap& lineages,
                         const Vocabulary& vocab, const TorsoParams& torso = {},
                         const MetricFlags& flags = {});

FeatureVector vectorize(const Corpus& corpus, const LineageMap& lineages,
                        const FeatureSchema& schema, const Vocabulary& vocab,
                        const std::string& board_id);

// Every board with at least one pin, ordered by board_id.
std::vector<FeatureVector> vectorize_all(const Corpus& corpus, const LineageMap& lineages,
                                         const FeatureSchema& schema, const Vocabulary& vocab);

std::string schema_to_json(const FeatureSchema& schema);
FeatureSchema schema_from_json(const std::string& text);

}  // namespace pinlab
