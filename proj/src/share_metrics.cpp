#include "pinlab/share_metrics.hpp"

#include <vector>

#include "pinlab/errors.hpp"

namespace pinlab {

namespace {

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (const double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

std::optional<double> retention(const Corpus& corpus, const LineageMap& lineages,
                                const std::string& board_id, std::int64_t PinRecord::*count,
                                bool copied_only, std::int64_t* n_used) {
  const auto it = corpus.by_board.find(board_id);
  if (it == corpus.by_board.end()) throw Error("UnknownBoard", "no board " + board_id);
  std::vector<double> ratios;
  for (const std::string& pin_id : it->second) {
    const PinRecord& pin = corpus.pins.at(pin_id);
    const Lineage& lin = lineages.at(pin.image_id);
    if (lin.original != pin_id) continue;
    if (copied_only && lin.duplicates.empty()) continue;
    double copy_mean = 0.0;
    if (!lin.duplicates.empty()) {
      double acc = 0.0;
      for (const std::string& dup_id : lin.duplicates)
        acc += static_cast<double>(corpus.pins.at(dup_id).*count);
      copy_mean = acc / static_cast<double>(lin.duplicates.size());
    }
    ratios.push_back((1.0 + static_cast<double>(pin.*count)) / (1.0 + copy_mean));
  }
  if (n_used) *n_used = static_cast<std::int64_t>(ratios.size());
  if (ratios.empty()) return std::nullopt;
  return mean_of(ratios);
}

std::optional<double> production(const Corpus& corpus, const LineageMap& lineages,
                                 const std::string& board_id, std::int64_t PinRecord::*count,
                                 std::int64_t* n_used) {
  const auto it = corpus.by_board.find(board_id);
  if (it == corpus.by_board.end()) throw Error("UnknownBoard", "no board " + board_id);
  std::vector<double> ratios;
  for (const std::string& pin_id : it->second) {
    const PinRecord& pin = corpus.pins.at(pin_id);
    const Lineage& lin = lineages.at(pin.image_id);
    if (lin.original == pin_id) continue;
    const PinRecord& origin = corpus.pins.at(lin.original);
    ratios.push_back((1.0 + static_cast<double>(origin.*count)) /
                     (1.0 + static_cast<double>(pin.*count)));
  }
  if (n_used) *n_used = static_cast<std::int64_t>(ratios.size());
  if (ratios.empty()) return std::nullopt;
  return mean_of(ratios);
}

}  // namespace

double likes_retention(const Corpus& corpus, const LineageMap& lineages,
                       const std::string& board_id, bool copied_only) {
  const auto v = retention(corpus, lineages, board_id, &PinRecord::likes, copied_only, nullptr);
  if (!v) throw Error("NoOriginalPins", "board " + board_id + " has no eligible original pin");
  return *v;
}

double repins_retention(const Corpus& corpus, const LineageMap& lineages,
                        const std::string& board_id, bool copied_only) {
  const auto v = retention(corpus, lineages, board_id, &PinRecord::repins, copied_only, nullptr);
  if (!v) throw Error("NoOriginalPins", "board " + board_id + " has no eligible original pin");
  return *v;
}

double likes_production(const Corpus& corpus, const LineageMap& lineages,
                        const std::string& board_id) {
  const auto v = production(corpus, lineages, board_id, &PinRecord::likes, nullptr);
  if (!v) throw Error("NoDuplicatePins", "board " + board_id + " has no duplicate pin");
  return *v;
}

double repins_production(const Corpus& corpus, const LineageMap& lineages,
                         const std::string& board_id) {
  const auto v = production(corpus, lineages, board_id, &PinRecord::repins, nullptr);
  if (!v) throw Error("NoDuplicatePins", "board " + board_id + " has no duplicate pin");
  return *v;
}

ShareCoefficients share_coefficients(const Corpus& corpus, const LineageMap& lineages,
                                     const std::string& board_id, bool copied_only) {
  ShareCoefficients out;
  out.lrc = retention(corpus, lineages, board_id, &PinRecord::likes, copied_only, &out.n_original);
  out.rrc = retention(corpus, lineages, board_id, &PinRecord::repins, copied_only, nullptr);
  out.lpc = production(corpus, lineages, board_id, &PinRecord::likes, &out.n_duplicate);
  out.rpc = production(corpus, lineages, board_id, &PinRecord::repins, nullptr);
  return out;
}

}  // namespace pinlab
