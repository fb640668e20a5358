#include "pinlab/lineage.hpp"

#include <algorithm>
#include <tuple>

#include "pinlab/errors.hpp"
#include "pinlab/stats.hpp"

namespace pinlab {

namespace {

auto order_key(const Corpus& corpus, const std::string& pin_id) {
  const PinRecord& p = corpus.pins.at(pin_id);
  return std::tie(p.created_at, p.board_id, p.pin_id);
}

}  // namespace

LineageMap resolve_lineages(const Corpus& corpus) {
  LineageMap out;
  for (const auto& [image_id, pin_ids] : corpus.by_image) {
    Lineage lin;
    lin.image_id = image_id;
    std::vector<std::string> members = pin_ids;
    std::sort(members.begin(), members.end(), [&](const std::string& a, const std::string& b) {
      return order_key(corpus, a) < order_key(corpus, b);
    });
    lin.original = members.front();
    lin.duplicates.assign(members.begin() + 1, members.end());
    out.emplace(image_id, std::move(lin));
  }
  return out;
}

bool is_original(const LineageMap& lineages, const PinRecord& pin) {
  return lineages.at(pin.image_id).original == pin.pin_id;
}

OriginalityReport originality_score(const Corpus& corpus, const LineageMap& lineages,
                                    const std::string& board_id) {
  if (!corpus.boards.count(board_id))
    throw Error("UnknownBoard", "no board " + board_id);
  const auto it = corpus.by_board.find(board_id);
  if (it == corpus.by_board.end() || it->second.empty())
    throw Error("EmptyBoard", "board " + board_id + " has no pins");

  OriginalityReport report;
  report.board_id = board_id;
  report.t_b = static_cast<std::int64_t>(it->second.size());
  for (const std::string& pin_id : it->second)
    if (is_original(lineages, corpus.pins.at(pin_id))) ++report.o_b;
  report.score = static_cast<double>(report.o_b) / static_cast<double>(report.t_b);
  return report;
}

double originality_popularity_correlation(const Corpus& corpus, const LineageMap& lineages) {
  std::vector<double> scores, followers;
  for (const auto& [board_id, pin_ids] : corpus.by_board) {
    if (pin_ids.empty()) continue;
    scores.push_back(originality_score(corpus, lineages, board_id).score);
    followers.push_back(static_cast<double>(corpus.boards.at(board_id).follower_count));
  }
  if (scores.size() < 3)
    throw Error("InsufficientData", "need at least 3 boards with pins");
  return spearman(scores, followers);
}

}  // namespace pinlab
