#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "termrec/config.hpp"
#include "termrec/embedding_store.hpp"
#include "termrec/item_index.hpp"
#include "termrec/recommender.hpp"
#include "termrec/workbook.hpp"

namespace termrec {

struct MetricReport {
  std::string config_label;
  double precision = 0.0;
  double accuracy = 0.0;
  std::size_t users = 0;           // users averaged over
  std::optional<std::string> error;  // set when the run failed
};

// precision = TP / N; accuracy = (TP + TN) / total with
// TN = total - N - |liked| + TP. Throws when N is 0 or exceeds total.
MetricReport evaluate(std::span<const ItemId> recommended, const std::set<ItemId>& liked,
                      std::size_t total);

enum class EvaluationMethod {
  Engine,          // keyword expansion + refined model + per-field tf-idf
  FullVocabTfidf,  // keyword list vs full-vocabulary tf-idf of each item
  EmbeddingSum,    // summed word embeddings of keywords vs item text
};

const char* to_string(EvaluationMethod method);
EvaluationMethod evaluation_method_from_string(std::string_view name);

struct EvaluationRun {
  std::string label;
  EngineConfig config;
  EvaluationMethod method = EvaluationMethod::Engine;
  // When > 0, the first `train_events` events of every workbook are held out
  // as rated history and metrics are computed over the remaining events.
  std::size_t train_events = 0;
  // Learn from the held-out history (liked -> positive, other -> negative).
  bool apply_feedback = false;
  // Recommendation count; defaults to the user's liked count on the
  // evaluated events.
  std::optional<std::size_t> top_n;
};

struct AblationTable {
  std::string title;
  std::vector<EvaluationRun> rows;
};

struct TableReport {
  std::string title;
  std::vector<MetricReport> rows;
};

struct EvaluationResources {
  const SynonymSource* synonyms = nullptr;     // keyword expansion
  const EmbeddingStore* embeddings = nullptr;  // EmbeddingSum baseline
};

// One report per run, metrics averaged over every user of every workbook.
// A failing run is reported with `error` set instead of aborting the grid.
std::vector<MetricReport> run_ablation(std::span<const LabeledWorkbook> workbooks,
                                       std::span<const EvaluationRun> grid,
                                       const EvaluationResources& resources);

std::vector<TableReport> run_tables(std::span<const LabeledWorkbook> workbooks,
                                    std::span<const AblationTable> tables,
                                    const EvaluationResources& resources);

// Grid document: {"base": {config overrides}, "tables": [{"title": ...,
// "rows": [{"label", "config", "method", "train_events", "apply_feedback",
// "N"}]}]}. Row configs are applied on top of `base`, then on `defaults`.
std::vector<AblationTable> grid_from_json(const nlohmann::json& j, const EngineConfig& defaults);
std::vector<AblationTable> load_grid_file(const std::string& path, const EngineConfig& defaults);

// Aligned plain-text table.
std::string format_table(const TableReport& table);
// `label<TAB>precision<TAB>accuracy` per row.
std::string format_machine_lines(const TableReport& table);

// Ranking over the full corpus vocabulary: the keyword list is one tf-idf
// document, each item's concatenated fields another; cosine, ties on item id.
std::vector<ItemId> baseline_fullvocab_tfidf(std::span<const std::string> keywords,
                                             const ItemIndex& index, std::size_t top_n,
                                             const std::unordered_set<ItemId>& exclude = {});

// Sum of embeddings of each item's tokens (all fields) against the sum of
// keyword embeddings; cosine, ties on item id. Throws when no keyword is in
// the store.
std::vector<ItemId> baseline_embedding_sum(std::span<const std::string> keywords,
                                           std::span<const Item> items,
                                           const EmbeddingStore& store, std::size_t top_n,
                                           const std::unordered_set<ItemId>& exclude = {});

}  // namespace termrec
