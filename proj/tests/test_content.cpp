#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "pinlab/content.hpp"
#include "pinlab/corpus.hpp"
#include "pinlab/errors.hpp"

using namespace pinlab;

namespace {

std::string norm(const std::string& raw) { return normalize_token(raw, default_vocabulary()); }

}  // namespace

TEST_CASE("token normalization lowercases, strips and stems") {
  const std::vector<std::string> raw{"Women", "wearing", "striped", "Dresses"};
  const std::vector<std::string> want{"woman", "wear", "strip", "dress"};
  CHECK(normalize_tokens(raw, default_vocabulary()) == want);

  CHECK(norm("T-Shirt!") == "tshirt");
  CHECK(norm("BLUE,") == "blue");
  CHECK(norm("jeans") == "jean");
  CHECK(norm("shirts") == "shirt");
  CHECK(norm("sunglasses") == "sunglass");
  CHECK(norm("ladies") == "lady");
  CHECK(norm("walked") == "walk");
  CHECK(norm("2pac") == "2pac");
}

TEST_CASE("stopwords and empty tokens vanish") {
  CHECK(norm("the") == "");
  CHECK(norm("About") == "");
  CHECK(norm("!!!") == "");
  CHECK(norm("") == "");

  const std::vector<std::string> raw{"a", "red", "and", "shoes"};
  const std::vector<std::string> want{"red", "sho"};
  CHECK(normalize_tokens(raw, default_vocabulary()) == want);
}

TEST_CASE("irregular plurals map to their singular") {
  CHECK(norm("men") == "man");
  CHECK(norm("Women") == "woman");
  CHECK(norm("feet") == "foot");
  CHECK(norm("man") == "man");
}

TEST_CASE("suffix rules keep stems at three letters or more") {
  // Guard fallthrough: too-short "es"/"ies" stems try the next rule.
  CHECK(norm("yes") == "yes");
  CHECK(norm("ties") == "tie");
  // Double-s words are not plurals.
  CHECK(norm("dress") == "dress");
  CHECK(norm("glass") == "glass");
  // First matching rule wins: "dresses" is an -es plural, not -s.
  CHECK(norm("dresses") == "dress");
  CHECK(norm("sing") == "sing");
  CHECK(norm("bed") == "bed");
}

TEST_CASE("profiles pick up gender, fashion and color mentions") {
  const Vocabulary& vocab = default_vocabulary();
  const std::vector<std::string> tokens =
      normalize_tokens(std::vector<std::string>{"Lady", "in", "a", "Blue", "Dress", "with", "guys"},
                       vocab);
  const PinTermProfile p = profile_pin(tokens, vocab);
  CHECK(p.female);
  CHECK(p.male);
  CHECK(p.fashion == std::set<std::string>{"dress"});
  CHECK(p.colors == std::set<std::string>{"blue"});

  const PinTermProfile empty = profile_pin(std::vector<std::string>{"sunset", "beach"}, vocab);
  CHECK_FALSE(empty.male);
  CHECK_FALSE(empty.female);
  CHECK(empty.fashion.empty());
  CHECK(empty.colors.empty());
}

TEST_CASE("tuples enumerate sorted term combinations") {
  PinTermProfile p;
  p.fashion = {"shirt", "dress", "bag"};
  p.colors = {"blue"};
  p.female = true;

  CHECK(pin_tuples(p, 1, TermKind::FASHION) ==
        std::vector<std::string>{"bag", "dress", "shirt"});
  CHECK(pin_tuples(p, 2, TermKind::FASHION) ==
        std::vector<std::string>{"bag-dress", "bag-shirt", "dress-shirt"});
  CHECK(pin_tuples(p, 3, TermKind::FASHION) == std::vector<std::string>{"bag-dress-shirt"});
  CHECK(pin_tuples(p, 4, TermKind::FASHION).empty());

  CHECK(pin_tuples(p, 1, TermKind::GENDER) == std::vector<std::string>{"female"});
  p.male = true;
  CHECK(pin_tuples(p, 1, TermKind::GENDER) ==
        std::vector<std::string>{"male", "female", "male-female"});

  CHECK(pin_tuples(p, 1, TermKind::GENDER_COLOR) ==
        std::vector<std::string>{"man-blue", "woman-blue"});
  p.male = false;
  CHECK(pin_tuples(p, 2, TermKind::GENDER_FASHION) ==
        std::vector<std::string>{"woman-bag-dress", "woman-bag-shirt", "woman-dress-shirt"});
}

namespace {

Corpus labeled_corpus() {
  Corpus c;
  const auto board = [&](const std::string& id, Label label) {
    BoardRecord b;
    b.board_id = id;
    b.label = label;
    c.boards.emplace(id, b);
    c.by_board.emplace(id, std::vector<std::string>{});
  };
  const auto pin = [&](const std::string& id, const std::string& board_id,
                       std::vector<std::string> tokens) {
    PinRecord p;
    p.pin_id = id;
    p.board_id = board_id;
    p.image_id = "img_" + id;
    p.caption_tokens = std::move(tokens);
    c.pins.emplace(id, p);
    c.by_board[board_id].push_back(id);
    c.by_image[p.image_id].push_back(id);
  };
  board("h1", Label::HFB);
  board("l1", Label::LFB);
  board("u1", Label::UNLABELED);
  pin("p1", "h1", {"woman", "blue", "dress"});
  pin("p2", "h1", {"blue", "dress"});
  pin("p3", "h1", {"sunset"});
  pin("p4", "l1", {"man", "red", "shirt"});
  pin("p5", "u1", {"blue", "dress"});
  for (auto& [id, v] : c.by_board) std::sort(v.begin(), v.end());
  return c;
}

}  // namespace

TEST_CASE("count_tuples tallies per-pin tuple occurrences") {
  const Corpus c = labeled_corpus();
  const auto counts = count_tuples(c, c.by_board.at("h1"), 1, TermKind::FASHION,
                                   default_vocabulary());
  REQUIRE(counts.size() == 1);
  CHECK(counts.at("dress") == 2);

  const auto colors = count_tuples(c, c.by_board.at("l1"), 1, TermKind::COLOR,
                                   default_vocabulary());
  CHECK(colors.at("red") == 1);
}

TEST_CASE("class distributions share a key set and skip unlabeled boards") {
  const Corpus c = labeled_corpus();
  const auto dist = class_term_distribution(c, 1, TermKind::FASHION, default_vocabulary());
  REQUIRE(dist.count(Label::HFB) == 1);
  REQUIRE(dist.count(Label::LFB) == 1);
  CHECK(dist.count(Label::UNLABELED) == 0);

  const TermDistribution& h = dist.at(Label::HFB);
  const TermDistribution& l = dist.at(Label::LFB);
  CHECK(h.n_pins == 3);
  CHECK(l.n_pins == 1);
  // Both classes carry both keys, zero-filled where absent.
  CHECK(h.fractions.at("dress") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(h.fractions.at("shirt") == 0.0);
  CHECK(l.fractions.at("dress") == 0.0);
  CHECK(l.fractions.at("shirt") == 1.0);

  Corpus unlabeled = c;
  for (auto& [id, b] : unlabeled.boards) b.label = Label::UNLABELED;
  try {
    class_term_distribution(unlabeled, 1, TermKind::FASHION, default_vocabulary());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.name() == "UnlabeledCorpus");
  }
}

TEST_CASE("torso selection skips the head and the rare tail") {
  const std::map<std::string, std::int64_t> freq{
      {"a", 50}, {"b", 30}, {"c", 10}, {"d", 5}, {"e", 5}};

  const TorsoSelection sel = torso_top_k(freq, 100, 2, 0.4, 0.06);
  CHECK(sel.terms == std::vector<std::string>{"b", "c"});
  CHECK_FALSE(sel.backfilled);

  // Asking for more than the torso holds backfills head-first, then tail.
  const TorsoSelection wide = torso_top_k(freq, 100, 4, 0.4, 0.06);
  CHECK(wide.terms == std::vector<std::string>{"b", "c", "a", "d"});
  CHECK(wide.backfilled);

  // Zero head and tail keeps everything, ties sorted by name.
  const std::map<std::string, std::int64_t> tied{{"y", 5}, {"x", 5}};
  CHECK(torso_top_k(tied, 10, 2, 0.0, 0.0).terms == std::vector<std::string>{"x", "y"});

  CHECK_THROWS_AS(torso_top_k({}, 10, 2, 0.2, 0.01), Error);
  CHECK_THROWS_AS(torso_top_k(freq, 100, 0, 0.2, 0.01), Error);
  CHECK_THROWS_AS(torso_top_k(freq, 100, 2, 1.0, 0.01), Error);
  CHECK_THROWS_AS(torso_top_k(freq, 100, 2, 0.2, -0.1), Error);
}

TEST_CASE("vocabulary files round-trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pinlab_vocab_roundtrip";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const Vocabulary& vocab = default_vocabulary();
  write_vocabulary(vocab, dir.string());
  const Vocabulary loaded = load_vocabulary(dir.string());
  CHECK(loaded.fashion_terms == vocab.fashion_terms);
  CHECK(loaded.color_terms == vocab.color_terms);
  CHECK(loaded.stopwords == vocab.stopwords);
  CHECK(loaded.gender_map == vocab.gender_map);

  // A gender row without a tab is malformed.
  {
    std::ofstream bad(dir / "gender_map.tsv");
    bad << "man MALE\n";
  }
  try {
    load_vocabulary(dir.string());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.name() == "MalformedLine");
  }
  fs::remove_all(dir);
}
