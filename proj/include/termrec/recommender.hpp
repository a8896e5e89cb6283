#pragma once

#include <string>
#include <unordered_set>
#include <vector>

#include "termrec/config.hpp"
#include "termrec/item_index.hpp"
#include "termrec/user_model.hpp"

namespace termrec {

struct Recommendation {
  ItemId item_id;
  double score = 0.0;

  bool operator==(const Recommendation&) const = default;
};

enum class Execution { Serial, Parallel };

// Per-item similarity between U_v and the item feature vector, in index order.
std::vector<double> score_items(const RefinedModel& refined, const ItemIndex& index,
                                const EngineConfig& config,
                                Execution execution = Execution::Parallel);

// Item feature vector S_i of one item over the refined words.
std::vector<double> item_vector(const RefinedModel& refined, const ItemIndex& index,
                                std::size_t position, const EngineConfig& config);

// Scores every item not in `exclude`, sorts by score descending with ties on
// ascending item id, and keeps the first `top_n`. Throws on an empty index.
std::vector<Recommendation> recommend_top_n(const RefinedModel& refined, const ItemIndex& index,
                                            const EngineConfig& config, std::size_t top_n,
                                            const std::unordered_set<ItemId>& exclude = {},
                                            Execution execution = Execution::Parallel);

inline std::vector<Recommendation> recommend_top_n(const RefinedModel& refined,
                                                   const ItemIndex& index,
                                                   const EngineConfig& config) {
  return recommend_top_n(refined, index, config, config.top_n);
}

}  // namespace termrec
