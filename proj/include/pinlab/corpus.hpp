#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pinlab {

enum class Label { HFB, ERB, LFB, UNLABELED };

const char* label_to_string(Label label);
Label label_from_string(const std::string& s);

// One pinned image instance on one board. Pins sharing an image_id form a
// lineage: the same image travelling across boards.
struct PinRecord {
  std::string pin_id;
  std::string board_id;
  std::string image_id;
  std::int64_t created_at = 0;
  std::int64_t likes = 0;
  std::int64_t repins = 0;
  std::int64_t comments = 0;
  std::vector<std::string> caption_tokens;

  bool operator==(const PinRecord&) const = default;
};

struct BoardRecord {
  std::string board_id;
  std::int64_t follower_count = 0;
  Label label = Label::UNLABELED;
  std::string name;

  bool operator==(const BoardRecord&) const = default;
};

// Immutable after ingest. Ordered maps keep every iteration deterministic;
// index lists are sorted by pin_id so input line order cannot leak through.
struct Corpus {
  std::map<std::string, BoardRecord> boards;
  std::map<std::string, PinRecord> pins;
  std::map<std::string, std::vector<std::string>> by_board;
  std::map<std::string, std::vector<std::string>> by_image;

  bool operator==(const Corpus&) const = default;
};

struct IngestResult {
  Corpus corpus;
  // Pins dropped because their board_id resolves to no board.
  std::vector<std::string> dangling_pin_ids;
};

// Reads boards.jsonl and pins.jsonl (one object per line). Dangling pins
// are dropped and reported; malformed lines and duplicate ids throw.
IngestResult ingest_corpus(const std::string& boards_path, const std::string& pins_path);

// Parse a single already-read JSONL body (used by ingest and the tests).
IngestResult ingest_corpus_text(const std::string& boards_text, const std::string& boards_name,
                                const std::string& pins_text, const std::string& pins_name);

// Labels the ceil(top_frac*N) most-followed boards HFB and the
// ceil(bottom_frac*N) least-followed LFB (ties broken by board_id
// ascending; a board selected by both sides keeps HFB). Boards named in
// erb_ids become ERB regardless of follower count. Everything else is
// UNLABELED.
Corpus assign_popularity_buckets(const Corpus& corpus, double top_frac, double bottom_frac,
                                 const std::set<std::string>& erb_ids);

}  // namespace pinlab
