#include "pinlab/temporal.hpp"

#include <algorithm>
#include <vector>

#include "pinlab/errors.hpp"

namespace pinlab {

double pin_ict(std::span<const std::int64_t> duplicate_timestamps, bool gaps_only) {
  if (duplicate_timestamps.empty()) throw Error("NoDuplicates", "pin was never copied");
  std::vector<std::int64_t> ts(duplicate_timestamps.begin(), duplicate_timestamps.end());
  std::sort(ts.begin(), ts.end());
  const double span = static_cast<double>(ts.back() - ts.front());
  if (gaps_only) {
    if (ts.size() < 2) return 0.0;
    return span / static_cast<double>(ts.size() - 1);
  }
  return span / static_cast<double>(ts.size());
}

double pin_dos(std::span<const std::int64_t> duplicate_timestamps) {
  if (duplicate_timestamps.empty()) throw Error("NoDuplicates", "pin was never copied");
  const auto [lo, hi] =
      std::minmax_element(duplicate_timestamps.begin(), duplicate_timestamps.end());
  return static_cast<double>(*hi - *lo);
}

double pin_likes_speed(std::span<const std::int64_t> duplicate_likes, double dos) {
  if (dos <= 0.0) throw Error("ZeroDuration", "sharing span is zero");
  double total = 0.0;
  for (const std::int64_t v : duplicate_likes) total += static_cast<double>(v);
  return total / dos;
}

TemporalMetrics board_temporal_metrics(const Corpus& corpus, const LineageMap& lineages,
                                       const std::string& board_id, bool ict_gaps_only) {
  const auto it = corpus.by_board.find(board_id);
  if (it == corpus.by_board.end()) throw Error("UnknownBoard", "no board " + board_id);

  TemporalMetrics out;
  std::vector<double> icts, doses, likes_speeds, repins_speeds;
  for (const std::string& pin_id : it->second) {
    const PinRecord& pin = corpus.pins.at(pin_id);
    const Lineage& lin = lineages.at(pin.image_id);
    if (lin.original != pin_id || lin.duplicates.empty()) continue;

    std::vector<std::int64_t> ts, likes, repins;
    ts.reserve(lin.duplicates.size());
    for (const std::string& dup_id : lin.duplicates) {
      const PinRecord& dup = corpus.pins.at(dup_id);
      ts.push_back(dup.created_at);
      likes.push_back(dup.likes);
      repins.push_back(dup.repins);
    }
    icts.push_back(pin_ict(ts, ict_gaps_only));
    const double dos = pin_dos(ts);
    doses.push_back(dos);
    if (dos > 0.0) {
      likes_speeds.push_back(pin_likes_speed(likes, dos));
      repins_speeds.push_back(pin_likes_speed(repins, dos));
    } else {
      ++out.n_excluded_zero_dos;
    }
    ++out.n_pins_used;
  }

  const auto mean_of = [](const std::vector<double>& v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double acc = 0.0;
    for (const double x : v) acc += x;
    return acc / static_cast<double>(v.size());
  };
  out.ict = mean_of(icts);
  out.dos = mean_of(doses);
  out.likes_speed = mean_of(likes_speeds);
  out.repins_speed = mean_of(repins_speeds);
  return out;
}

}  // namespace pinlab
