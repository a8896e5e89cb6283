#include "termrec/recommender.hpp"

#include <algorithm>
#include <numeric>

#include "termrec/error.hpp"
#include "termrec/kernels.hpp"

namespace termrec {
namespace {

// Owns the buffers a kernels::ScoringProblem points into.
struct ScoringPlan {
  std::vector<kernels::FieldPostingsView> fields;
  std::vector<std::int32_t> term_slot;
  std::vector<double> idf;
  kernels::ScoringProblem problem;
};

ScoringPlan make_plan(const RefinedModel& refined, const ItemIndex& index,
                      const EngineConfig& config) {
  if (refined.words.size() != refined.weights.size()) {
    throw invalid_argument("refined model words and weights differ in length");
  }
  if (config.field_weights.size() != index.field_count()) {
    throw invalid_argument("config has " + std::to_string(config.field_weights.size()) +
                           " field weights, index has " + std::to_string(index.field_count()) +
                           " fields");
  }
  const std::size_t n_fields = index.field_count();
  const std::size_t slots = refined.words.size();

  ScoringPlan plan;
  plan.term_slot.assign(index.vocabulary_size(), -1);
  plan.idf.assign(n_fields * slots, smoothed_idf(index.item_count(), 0));
  for (std::size_t s = 0; s < slots; ++s) {
    const auto id = index.term_id(refined.words[s]);
    if (!id) continue;
    plan.term_slot[*id] = static_cast<std::int32_t>(s);
    for (std::size_t j = 0; j < n_fields; ++j) {
      plan.idf[j * slots + s] = smoothed_idf(index.item_count(), index.document_frequencies(j)[*id]);
    }
  }
  for (std::size_t j = 0; j < n_fields; ++j) plan.fields.push_back(index.postings(j));

  plan.problem.item_count = index.item_count();
  plan.problem.slot_count = slots;
  plan.problem.fields = plan.fields;
  plan.problem.term_slot = plan.term_slot;
  plan.problem.idf = plan.idf;
  plan.problem.field_weights = config.field_weights;
  plan.problem.query = refined.weights;
  plan.problem.tf_mode = config.tf_mode;
  plan.problem.measure = config.measure;
  return plan;
}

}  // namespace

std::vector<double> score_items(const RefinedModel& refined, const ItemIndex& index,
                                const EngineConfig& config, Execution execution) {
  const ScoringPlan plan = make_plan(refined, index, config);
  std::vector<double> scores(index.item_count());
  if (execution == Execution::Parallel) {
    kernels::score_items_omp(plan.problem, scores);
  } else {
    kernels::score_items_serial(plan.problem, scores);
  }
  return scores;
}

std::vector<double> item_vector(const RefinedModel& refined, const ItemIndex& index,
                                std::size_t position, const EngineConfig& config) {
  if (position >= index.item_count()) throw not_found("item position out of range");
  const ScoringPlan plan = make_plan(refined, index, config);
  std::vector<double> out(refined.words.size());
  kernels::item_vector(plan.problem, position, out);
  return out;
}

std::vector<Recommendation> recommend_top_n(const RefinedModel& refined, const ItemIndex& index,
                                            const EngineConfig& config, std::size_t top_n,
                                            const std::unordered_set<ItemId>& exclude,
                                            Execution execution) {
  if (index.empty()) throw conflict("item index is empty");
  if (top_n == 0) throw invalid_argument("top_n must be at least 1");

  const std::vector<double> scores = score_items(refined, index, config, execution);
  std::vector<std::size_t> order;
  order.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!exclude.count(index.item(i).id)) order.push_back(i);
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return index.item(a).id < index.item(b).id;
  };
  const std::size_t take = std::min(top_n, order.size());
  std::partial_sort(order.begin(), order.begin() + take, order.end(), better);

  std::vector<Recommendation> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back({index.item(order[i]).id, scores[order[i]]});
  return out;
}

}  // namespace termrec
