#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pinlab/corpus.hpp"

namespace pinlab {

enum class Gender { MALE, FEMALE };

struct Vocabulary {
  std::set<std::string> fashion_terms;
  std::set<std::string> color_terms;
  // Surface token (post-normalization) to gender.
  std::map<std::string, Gender> gender_map;
  std::set<std::string> stopwords;
};

// Built-in vocabulary: canonical forms of the fashion and color term lists
// plus a small gender surface-form map and ~120 stopwords.
const Vocabulary& default_vocabulary();

// Reads fashion.txt, colors.txt, gender_map.tsv, stopwords.txt from dir.
Vocabulary load_vocabulary(const std::string& dir);

// Writes the built-in vocabulary out in the load_vocabulary format.
void write_vocabulary(const Vocabulary& vocab, const std::string& dir);

// lowercase -> strip non-alphanumerics -> drop stopwords -> irregular
// plurals (men/women/feet) -> first suffix rule in {ies->y, es, s, ing,
// ed} whose result keeps >= 3 chars; bare "s" never strips after "ss".
std::vector<std::string> normalize_tokens(std::span<const std::string> raw,
                                          const Vocabulary& vocab);

std::string normalize_token(const std::string& raw, const Vocabulary& vocab);

struct PinTermProfile {
  bool male = false;
  bool female = false;
  std::set<std::string> fashion;
  std::set<std::string> colors;
};

// tokens must already be normalized.
PinTermProfile profile_pin(std::span<const std::string> tokens, const Vocabulary& vocab);

enum class TermKind { GENDER, FASHION, COLOR, GENDER_FASHION, GENDER_COLOR };

// For the gender-infused kinds, arity counts the fashion/color terms in
// the tuple (the gender word rides along in front): man-bag-jean has
// arity 2. Plain kinds use arity tokens total. Tuple names join members
// with '-', non-gender members sorted ascending.
std::vector<std::string> pin_tuples(const PinTermProfile& profile, int arity, TermKind kind);

struct TermDistribution {
  std::int64_t n_pins = 0;
  std::map<std::string, double> fractions;
};

// Fraction of each class's pins containing each observed tuple. Classes
// share one key set (the union over classes); UNLABELED pins are ignored.
// Gender rows are the inclusive male / female / male-female fractions.
std::map<Label, TermDistribution> class_term_distribution(const Corpus& corpus, int arity,
                                                          TermKind kind,
                                                          const Vocabulary& vocab);

// Pin-presence counts of tuples over the given pins.
std::map<std::string, std::int64_t> count_tuples(const Corpus& corpus,
                                                 std::span<const std::string> pin_ids,
                                                 int arity, TermKind kind,
                                                 const Vocabulary& vocab);

struct TorsoSelection {
  std::vector<std::string> terms;
  // Set when the torso held fewer than k terms and head/tail entries were
  // pulled back in.
  bool backfilled = false;
};

// Top-k terms from the torso of a frequency distribution: drop the
// minimal head prefix holding head_mass of the total count, drop terms
// present in fewer than tail_min_frac of pins, then take the k most
// frequent survivors (ties by term ascending). Short torsos backfill
// from the head boundary outward, then from the tail.
TorsoSelection torso_top_k(const std::map<std::string, std::int64_t>& freq,
                           std::int64_t total_pins, std::size_t k, double head_mass,
                           double tail_min_frac);

}  // namespace pinlab
