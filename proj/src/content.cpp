#include "pinlab/content.hpp"

#include <algorithm>
#include <cctype>

#include "pinlab/errors.hpp"
#include "pinlab/textio.hpp"

namespace pinlab {

namespace {

const char* kFashionTerms[] = {
    "bag",     "button",   "cloth",  "curtain", "dress",  "feather",
    "jacket",  "jean",     "leather", "necklace", "pant",  "pillow",
    "shirt",   "shoe",     "short",  "skin",    "skirt",  "strap",
    "strip",   "suit",     "sunglass", "trouser", "tshirt", "umbrella"};

const char* kColorTerms[] = {"black", "blue",   "brown", "green",  "grey",
                             "metal", "pink",   "purple", "red",   "silver",
                             "white", "wooden", "yellow"};

const char* kMaleSurfaces[] = {"man", "men", "male", "boy", "guy", "gentleman", "gentlemen"};
const char* kFemaleSurfaces[] = {"woman", "women", "female", "girl", "lady"};

const char* kStopwords[] = {
    "a",       "about",   "above",  "after",   "again",   "all",     "am",
    "an",      "and",     "any",    "are",     "as",      "at",      "be",
    "because", "been",    "before", "being",   "below",   "between", "both",
    "but",     "by",      "can",    "could",   "did",     "do",      "does",
    "doing",   "down",    "during", "each",    "few",     "for",     "from",
    "further", "had",     "has",    "have",    "having",  "he",      "her",
    "here",    "hers",    "him",    "himself", "his",     "how",     "i",
    "if",      "in",      "into",   "is",      "it",      "its",     "itself",
    "just",    "me",      "more",   "most",    "my",      "myself",  "no",
    "nor",     "not",     "now",    "of",      "off",     "on",      "once",
    "only",    "or",      "other",  "our",     "ours",    "out",     "over",
    "own",     "same",    "she",    "should",  "so",      "some",    "such",
    "than",    "that",    "the",    "their",   "theirs",  "them",    "then",
    "there",   "these",   "they",   "this",    "those",   "through", "to",
    "too",     "under",   "until",  "up",      "very",    "was",     "we",
    "were",    "what",    "when",   "where",   "which",   "while",   "who",
    "whom",    "why",     "will",   "with",    "would",   "you",     "your",
    "yours"};

bool ends_with(const std::string& s, const char* suffix) {
  const std::size_t n = std::char_traits<char>::length(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

const char* gender_word(Gender g) { return g == Gender::MALE ? "man" : "woman"; }

// All arity-sized subsets of the (sorted) items, each joined with '-'
// after the optional prefix.
void append_combinations(const std::set<std::string>& items, int arity,
                         const std::string& prefix, std::vector<std::string>& out) {
  if (arity <= 0 || static_cast<std::size_t>(arity) > items.size()) return;
  const std::vector<std::string> v(items.begin(), items.end());
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (true) {
    std::string name = prefix;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (!name.empty()) name += '-';
      name += v[idx[i]];
    }
    out.push_back(std::move(name));
    std::size_t i = idx.size();
    while (i > 0) {
      --i;
      if (idx[i] + (idx.size() - i) < v.size()) {
        ++idx[i];
        for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

const Vocabulary& default_vocabulary() {
  static const Vocabulary vocab = [] {
    Vocabulary v;
    for (const char* t : kFashionTerms) v.fashion_terms.insert(t);
    for (const char* t : kColorTerms) v.color_terms.insert(t);
    for (const char* t : kMaleSurfaces) v.gender_map.emplace(t, Gender::MALE);
    for (const char* t : kFemaleSurfaces) v.gender_map.emplace(t, Gender::FEMALE);
    for (const char* t : kStopwords) v.stopwords.insert(t);
    return v;
  }();
  return vocab;
}

Vocabulary load_vocabulary(const std::string& dir) {
  Vocabulary v;
  for (const std::string& line : read_text_lines(dir + "/fashion.txt"))
    if (!line.empty()) v.fashion_terms.insert(line);
  for (const std::string& line : read_text_lines(dir + "/colors.txt"))
    if (!line.empty()) v.color_terms.insert(line);
  for (const std::string& line : read_text_lines(dir + "/stopwords.txt"))
    if (!line.empty()) v.stopwords.insert(line);
  for (const std::string& line : read_text_lines(dir + "/gender_map.tsv")) {
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error("MalformedLine", "gender_map.tsv line lacks a tab: " + line);
    const std::string surface = line.substr(0, tab);
    const std::string gender = line.substr(tab + 1);
    if (gender == "MALE")
      v.gender_map.emplace(surface, Gender::MALE);
    else if (gender == "FEMALE")
      v.gender_map.emplace(surface, Gender::FEMALE);
    else
      throw Error("MalformedLine", "gender_map.tsv gender must be MALE or FEMALE: " + line);
  }
  if (v.fashion_terms.empty() || v.color_terms.empty())
    throw Error("InvalidConfig", "vocabulary files must be non-empty");
  return v;
}

void write_vocabulary(const Vocabulary& vocab, const std::string& dir) {
  const auto joined = [](const std::set<std::string>& terms) {
    std::string out;
    for (const std::string& t : terms) {
      out += t;
      out += '\n';
    }
    return out;
  };
  write_text_file(dir + "/fashion.txt", joined(vocab.fashion_terms));
  write_text_file(dir + "/colors.txt", joined(vocab.color_terms));
  write_text_file(dir + "/stopwords.txt", joined(vocab.stopwords));
  std::string gm;
  for (const auto& [surface, gender] : vocab.gender_map) {
    gm += surface;
    gm += '\t';
    gm += (gender == Gender::MALE ? "MALE" : "FEMALE");
    gm += '\n';
  }
  write_text_file(dir + "/gender_map.tsv", gm);
}

std::string normalize_token(const std::string& raw, const Vocabulary& vocab) {
  std::string t;
  t.reserve(raw.size());
  for (const char c : raw) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) t.push_back(static_cast<char>(std::tolower(u)));
  }
  if (t.empty() || vocab.stopwords.count(t)) return {};

  if (t == "men") return "man";
  if (t == "women") return "woman";
  if (t == "feet") return "foot";

  if (ends_with(t, "ies") && t.size() - 2 >= 3) return t.substr(0, t.size() - 3) + "y";
  if (ends_with(t, "es") && t.size() - 2 >= 3) return t.substr(0, t.size() - 2);
  if (ends_with(t, "s") && !ends_with(t, "ss") && t.size() - 1 >= 3)
    return t.substr(0, t.size() - 1);
  if (ends_with(t, "ing") && t.size() - 3 >= 3) return t.substr(0, t.size() - 3);
  if (ends_with(t, "ed") && t.size() - 2 >= 3) return t.substr(0, t.size() - 2);
  return t;
}

std::vector<std::string> normalize_tokens(std::span<const std::string> raw,
                                          const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const std::string& token : raw) {
    std::string t = normalize_token(token, vocab);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

PinTermProfile profile_pin(std::span<const std::string> tokens, const Vocabulary& vocab) {
  PinTermProfile p;
  for (const std::string& t : tokens) {
    if (const auto it = vocab.gender_map.find(t); it != vocab.gender_map.end()) {
      (it->second == Gender::MALE ? p.male : p.female) = true;
    }
    if (vocab.fashion_terms.count(t)) p.fashion.insert(t);
    if (vocab.color_terms.count(t)) p.colors.insert(t);
  }
  return p;
}

std::vector<std::string> pin_tuples(const PinTermProfile& profile, int arity, TermKind kind) {
  std::vector<std::string> out;
  switch (kind) {
    case TermKind::GENDER:
      if (profile.male) out.push_back("male");
      if (profile.female) out.push_back("female");
      if (profile.male && profile.female) out.push_back("male-female");
      break;
    case TermKind::FASHION:
      append_combinations(profile.fashion, arity, "", out);
      break;
    case TermKind::COLOR:
      append_combinations(profile.colors, arity, "", out);
      break;
    case TermKind::GENDER_FASHION:
      if (profile.male) append_combinations(profile.fashion, arity, gender_word(Gender::MALE), out);
      if (profile.female)
        append_combinations(profile.fashion, arity, gender_word(Gender::FEMALE), out);
      break;
    case TermKind::GENDER_COLOR:
      if (profile.male) append_combinations(profile.colors, arity, gender_word(Gender::MALE), out);
      if (profile.female)
        append_combinations(profile.colors, arity, gender_word(Gender::FEMALE), out);
      break;
  }
  return out;
}

std::map<std::string, std::int64_t> count_tuples(const Corpus& corpus,
                                                 std::span<const std::string> pin_ids,
                                                 int arity, TermKind kind,
                                                 const Vocabulary& vocab) {
  std::map<std::string, std::int64_t> counts;
  for (const std::string& pin_id : pin_ids) {
    const PinRecord& pin = corpus.pins.at(pin_id);
    const PinTermProfile profile = profile_pin(normalize_tokens(pin.caption_tokens, vocab), vocab);
    for (const std::string& tuple : pin_tuples(profile, arity, kind)) ++counts[tuple];
  }
  return counts;
}

std::map<Label, TermDistribution> class_term_distribution(const Corpus& corpus, int arity,
                                                          TermKind kind,
                                                          const Vocabulary& vocab) {
  std::map<Label, std::vector<std::string>> class_pins;
  for (const auto& [board_id, pin_ids] : corpus.by_board) {
    const Label label = corpus.boards.at(board_id).label;
    if (label == Label::UNLABELED) continue;
    auto& bucket = class_pins[label];
    bucket.insert(bucket.end(), pin_ids.begin(), pin_ids.end());
  }
  std::erase_if(class_pins, [](const auto& kv) { return kv.second.empty(); });
  if (class_pins.empty())
    throw Error("UnlabeledCorpus", "no labeled board has pins");

  std::map<Label, std::map<std::string, std::int64_t>> counts;
  std::set<std::string> all_tuples;
  for (const auto& [label, pin_ids] : class_pins) {
    counts[label] = count_tuples(corpus, pin_ids, arity, kind, vocab);
    for (const auto& [tuple, n] : counts[label]) all_tuples.insert(tuple);
  }

  std::map<Label, TermDistribution> out;
  for (const auto& [label, pin_ids] : class_pins) {
    TermDistribution dist;
    dist.n_pins = static_cast<std::int64_t>(pin_ids.size());
    for (const std::string& tuple : all_tuples) {
      const auto it = counts[label].find(tuple);
      const double c = it == counts[label].end() ? 0.0 : static_cast<double>(it->second);
      dist.fractions[tuple] = c / static_cast<double>(dist.n_pins);
    }
    out.emplace(label, std::move(dist));
  }
  return out;
}

TorsoSelection torso_top_k(const std::map<std::string, std::int64_t>& freq,
                           std::int64_t total_pins, std::size_t k, double head_mass,
                           double tail_min_frac) {
  if (freq.empty()) throw Error("EmptyDistribution", "no terms to select from");
  if (k < 1 || head_mass < 0.0 || head_mass >= 1.0 || tail_min_frac < 0.0 ||
      tail_min_frac >= 1.0)
    throw Error("InvalidConfig", "need k >= 1 and head_mass, tail_min_frac in [0,1)");

  std::vector<std::pair<std::string, std::int64_t>> order(freq.begin(), freq.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  double total_count = 0.0;
  for (const auto& [term, count] : order) total_count += static_cast<double>(count);

  const double head_target = head_mass * total_count;
  std::size_t head_end = 0;
  double cum = 0.0;
  while (cum < head_target && head_end < order.size()) {
    cum += static_cast<double>(order[head_end].second);
    ++head_end;
  }

  const double tail_threshold = tail_min_frac * static_cast<double>(total_pins);
  std::vector<std::string> torso, tail;
  for (std::size_t i = head_end; i < order.size(); ++i) {
    if (static_cast<double>(order[i].second) < tail_threshold)
      tail.push_back(order[i].first);
    else
      torso.push_back(order[i].first);
  }

  TorsoSelection sel;
  for (const std::string& t : torso) {
    if (sel.terms.size() == k) break;
    sel.terms.push_back(t);
  }
  if (sel.terms.size() < k) {
    sel.backfilled = true;
    for (std::size_t i = head_end; i > 0 && sel.terms.size() < k; --i)
      sel.terms.push_back(order[i - 1].first);
    for (const std::string& t : tail) {
      if (sel.terms.size() == k) break;
      sel.terms.push_back(t);
    }
  }
  return sel;
}

}  // namespace pinlab
