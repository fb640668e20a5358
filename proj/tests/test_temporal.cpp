#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "pinlab/corpus.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/lineage.hpp"
#include "pinlab/temporal.hpp"

using namespace pinlab;

namespace {

void add_board(Corpus& c, const std::string& id) {
  BoardRecord b;
  b.board_id = id;
  c.boards.emplace(id, b);
  c.by_board.emplace(id, std::vector<std::string>{});
}

void add_pin(Corpus& c, const std::string& id, const std::string& board_id,
             const std::string& image_id, std::int64_t created, std::int64_t likes,
             std::int64_t repins) {
  PinRecord p;
  p.pin_id = id;
  p.board_id = board_id;
  p.image_id = image_id;
  p.created_at = created;
  p.likes = likes;
  p.repins = repins;
  c.pins.emplace(id, p);
  c.by_board[board_id].push_back(id);
  c.by_image[image_id].push_back(id);
}

Corpus trace_corpus() {
  Corpus c;
  add_board(c, "A");
  add_board(c, "B");
  add_board(c, "C");
  add_pin(c, "A1", "A", "imgX", 100, 10, 4);
  add_pin(c, "B1", "B", "imgX", 200, 3, 1);
  add_pin(c, "C1", "C", "imgX", 400, 5, 3);
  add_pin(c, "A2", "A", "imgY", 150, 7, 2);
  add_pin(c, "B2", "B", "imgZ", 50, 2, 0);
  add_pin(c, "A3", "A", "imgZ", 300, 6, 5);
  for (auto& [id, v] : c.by_board) std::sort(v.begin(), v.end());
  for (auto& [id, v] : c.by_image) std::sort(v.begin(), v.end());
  return c;
}

}  // namespace

TEST_CASE("pin_ict divides the copy span by the copy count") {
  const std::vector<std::int64_t> two{400, 200};  // order must not matter
  CHECK(pin_ict(two, false) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(pin_ict(two, true) == doctest::Approx(200.0).epsilon(1e-15));

  const std::vector<std::int64_t> three{10, 40, 20};
  CHECK(pin_ict(three, false) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(pin_ict(three, true) == doctest::Approx(15.0).epsilon(1e-15));

  const std::vector<std::int64_t> one{300};
  CHECK(pin_ict(one, false) == 0.0);
  CHECK(pin_ict(one, true) == 0.0);

  const std::vector<std::int64_t> tied{100, 100};
  CHECK(pin_ict(tied, false) == 0.0);

  try {
    pin_ict({}, false);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.name() == "NoDuplicates");
  }
}

TEST_CASE("pin_dos is the spread between first and last copy") {
  CHECK(pin_dos(std::vector<std::int64_t>{400, 200}) == 200.0);
  CHECK(pin_dos(std::vector<std::int64_t>{300}) == 0.0);
  CHECK(pin_dos(std::vector<std::int64_t>{7, 3, 9, 5}) == 6.0);
  CHECK_THROWS_AS(pin_dos({}), Error);
}

TEST_CASE("pin_likes_speed rejects zero spans") {
  CHECK(pin_likes_speed(std::vector<std::int64_t>{3, 5}, 200.0) ==
        doctest::Approx(0.04).epsilon(1e-15));
  CHECK(pin_likes_speed(std::vector<std::int64_t>{}, 10.0) == 0.0);
  try {
    pin_likes_speed(std::vector<std::int64_t>{3}, 0.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.name() == "ZeroDuration");
  }
  CHECK_THROWS_AS(pin_likes_speed(std::vector<std::int64_t>{3}, -1.0), Error);
}

TEST_CASE("board metrics average over originals that were copied") {
  const Corpus c = trace_corpus();
  const LineageMap lin = resolve_lineages(c);

  // Board A: only A1 was copied (B1 at 200, C1 at 400 with 3+5 likes, 1+3 repins).
  const TemporalMetrics a = board_temporal_metrics(c, lin, "A", false);
  CHECK(a.n_pins_used == 1);
  CHECK(a.n_excluded_zero_dos == 0);
  REQUIRE(a.ict.has_value());
  CHECK(*a.ict == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(*a.dos == doctest::Approx(200.0).epsilon(1e-12));
  CHECK(*a.likes_speed == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(*a.repins_speed == doctest::Approx(0.02).epsilon(1e-12));

  const TemporalMetrics a_gaps = board_temporal_metrics(c, lin, "A", true);
  CHECK(*a_gaps.ict == doctest::Approx(200.0).epsilon(1e-12));

  // Board B: B2 has exactly one copy, so its span is zero and the speed
  // averages must skip it rather than divide by zero.
  const TemporalMetrics b = board_temporal_metrics(c, lin, "B", false);
  CHECK(b.n_pins_used == 1);
  CHECK(b.n_excluded_zero_dos == 1);
  CHECK(*b.ict == 0.0);
  CHECK(*b.dos == 0.0);
  CHECK_FALSE(b.likes_speed.has_value());
  CHECK_FALSE(b.repins_speed.has_value());

  // Board C holds no originals at all.
  const TemporalMetrics cc = board_temporal_metrics(c, lin, "C", false);
  CHECK(cc.n_pins_used == 0);
  CHECK_FALSE(cc.ict.has_value());
  CHECK_FALSE(cc.dos.has_value());

  CHECK_THROWS_AS(board_temporal_metrics(c, lin, "ghost", false), Error);
}
