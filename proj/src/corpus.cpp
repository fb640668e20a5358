#include "pinlab/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "pinlab/errors.hpp"
#include "pinlab/textio.hpp"

namespace pinlab {

using nlohmann::json;

const char* label_to_string(Label label) {
  switch (label) {
    case Label::HFB: return "HFB";
    case Label::ERB: return "ERB";
    case Label::LFB: return "LFB";
    case Label::UNLABELED: return "UNLABELED";
  }
  return "UNLABELED";
}

Label label_from_string(const std::string& s) {
  if (s == "HFB") return Label::HFB;
  if (s == "ERB") return Label::ERB;
  if (s == "LFB") return Label::LFB;
  if (s == "UNLABELED") return Label::UNLABELED;
  throw Error("MalformedLine", "unknown label: " + s);
}

namespace {

std::string require_string(const json& obj, const char* key, const std::string& where,
                           std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw malformed_line(where, line_no, std::string("missing or non-string \"") + key + "\"");
  return it->get<std::string>();
}

std::int64_t require_count(const json& obj, const char* key, const std::string& where,
                           std::size_t line_no) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_number_integer())
    throw malformed_line(where, line_no, std::string("missing or non-integer \"") + key + "\"");
  const std::int64_t v = it->get<std::int64_t>();
  if (v < 0) throw malformed_line(where, line_no, std::string("negative \"") + key + "\"");
  return v;
}

json parse_line(const std::string& line, const std::string& where, std::size_t line_no) {
  json obj = json::parse(line, nullptr, false);
  if (obj.is_discarded() || !obj.is_object())
    throw malformed_line(where, line_no, "not a JSON object");
  return obj;
}

}  // namespace

IngestResult ingest_corpus_text(const std::string& boards_text, const std::string& boards_name,
                                const std::string& pins_text, const std::string& pins_name) {
  IngestResult result;
  Corpus& corpus = result.corpus;

  const auto split = [](const std::string& body) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < body.size()) {
      std::size_t end = body.find('\n', start);
      if (end == std::string::npos) end = body.size();
      std::string line = body.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      start = end + 1;
    }
    return lines;
  };

  std::size_t line_no = 0;
  for (const std::string& line : split(boards_text)) {
    ++line_no;
    if (line.empty()) continue;
    const json obj = parse_line(line, boards_name, line_no);
    BoardRecord board;
    board.board_id = require_string(obj, "board_id", boards_name, line_no);
    if (board.board_id.empty())
      throw malformed_line(boards_name, line_no, "empty board_id");
    board.follower_count = require_count(obj, "follower_count", boards_name, line_no);
    if (const auto it = obj.find("label"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) throw malformed_line(boards_name, line_no, "non-string label");
      try {
        board.label = label_from_string(it->get<std::string>());
      } catch (const Error&) {
        throw malformed_line(boards_name, line_no, "unknown label " + it->get<std::string>());
      }
    }
    if (const auto it = obj.find("name"); it != obj.end() && !it->is_null()) {
      if (!it->is_string()) throw malformed_line(boards_name, line_no, "non-string name");
      board.name = it->get<std::string>();
    }
    if (corpus.boards.count(board.board_id)) throw duplicate_board_id(board.board_id);
    corpus.by_board[board.board_id] = {};
    corpus.boards.emplace(board.board_id, std::move(board));
  }

  line_no = 0;
  for (const std::string& line : split(pins_text)) {
    ++line_no;
    if (line.empty()) continue;
    const json obj = parse_line(line, pins_name, line_no);
    PinRecord pin;
    pin.pin_id = require_string(obj, "pin_id", pins_name, line_no);
    if (pin.pin_id.empty()) throw malformed_line(pins_name, line_no, "empty pin_id");
    pin.board_id = require_string(obj, "board_id", pins_name, line_no);
    pin.image_id = require_string(obj, "image_id", pins_name, line_no);
    if (pin.image_id.empty()) throw malformed_line(pins_name, line_no, "empty image_id");
    pin.created_at = require_count(obj, "created_at", pins_name, line_no);
    pin.likes = require_count(obj, "likes", pins_name, line_no);
    pin.repins = require_count(obj, "repins", pins_name, line_no);
    pin.comments = require_count(obj, "comments", pins_name, line_no);
    if (const auto it = obj.find("caption_tokens"); it != obj.end() && !it->is_null()) {
      if (!it->is_array()) throw malformed_line(pins_name, line_no, "caption_tokens not an array");
      for (const json& tok : *it) {
        if (!tok.is_string())
          throw malformed_line(pins_name, line_no, "non-string caption token");
        pin.caption_tokens.push_back(tok.get<std::string>());
      }
    }
    if (corpus.pins.count(pin.pin_id)) throw duplicate_pin_id(pin.pin_id);
    if (!corpus.boards.count(pin.board_id)) {
      result.dangling_pin_ids.push_back(pin.pin_id);
      continue;
    }
    corpus.by_board[pin.board_id].push_back(pin.pin_id);
    corpus.by_image[pin.image_id].push_back(pin.pin_id);
    corpus.pins.emplace(pin.pin_id, std::move(pin));
  }

  for (auto& [board_id, pin_ids] : corpus.by_board) std::sort(pin_ids.begin(), pin_ids.end());
  for (auto& [image_id, pin_ids] : corpus.by_image) std::sort(pin_ids.begin(), pin_ids.end());
  std::sort(result.dangling_pin_ids.begin(), result.dangling_pin_ids.end());
  return result;
}

IngestResult ingest_corpus(const std::string& boards_path, const std::string& pins_path) {
  return ingest_corpus_text(read_text_file(boards_path), boards_path,
                            read_text_file(pins_path), pins_path);
}

Corpus assign_popularity_buckets(const Corpus& corpus, double top_frac, double bottom_frac,
                                 const std::set<std::string>& erb_ids) {
  if (!(top_frac > 0.0) || !(bottom_frac > 0.0) || top_frac + bottom_frac > 1.0)
    throw Error("InvalidFraction",
                "need 0 < top_frac, 0 < bottom_frac, top_frac + bottom_frac <= 1");

  std::vector<const BoardRecord*> order;
  order.reserve(corpus.boards.size());
  for (const auto& [id, board] : corpus.boards) order.push_back(&board);
  std::sort(order.begin(), order.end(), [](const BoardRecord* a, const BoardRecord* b) {
    if (a->follower_count != b->follower_count) return a->follower_count > b->follower_count;
    return a->board_id < b->board_id;
  });

  const std::size_t n = order.size();
  const auto take = [n](double frac) {
    return std::min(n, static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n))));
  };
  const std::size_t n_top = take(top_frac);
  const std::size_t n_bottom = take(bottom_frac);

  Corpus out = corpus;
  for (auto& [id, board] : out.boards) board.label = Label::UNLABELED;
  for (std::size_t i = 0; i < n_bottom; ++i)
    out.boards.at(order[n - 1 - i]->board_id).label = Label::LFB;
  for (std::size_t i = 0; i < n_top; ++i) out.boards.at(order[i]->board_id).label = Label::HFB;
  for (const std::string& id : erb_ids) {
    const auto it = out.boards.find(id);
    if (it != out.boards.end()) it->second.label = Label::ERB;
  }
  return out;
}

}  // namespace pinlab
