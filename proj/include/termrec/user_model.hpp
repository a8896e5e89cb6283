#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "termrec/config.hpp"
#include "termrec/embedding_store.hpp"
#include "termrec/item_index.hpp"
#include "termrec/text_normalize.hpp"

namespace termrec {

struct ModelEntry {
  std::string word;
  double weight = 0.0;  // interest intensity; may be negative

  bool operator==(const ModelEntry&) const = default;
};

// Ordered {word: weight} array with unique words.
struct UserModel {
  std::vector<ModelEntry> entries;

  const ModelEntry* find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  bool operator==(const UserModel&) const = default;
};

// Normalized words and the aligned weight vector U_v used for scoring.
struct RefinedModel {
  std::vector<std::string> words;
  std::vector<double> weights;

  std::size_t size() const { return words.size(); }
};

enum class FeedbackLabel { Positive, Negative };

const char* to_string(FeedbackLabel label);
FeedbackLabel feedback_label_from_string(std::string_view name);

struct FeedbackRecord {
  ItemId item_id;
  FeedbackLabel label = FeedbackLabel::Positive;
  std::int64_t timestamp = 0;  // seconds since epoch

  bool operator==(const FeedbackRecord&) const = default;
};

// M_Q, aligned with a UserModel's entries.
struct ItemModel {
  std::vector<double> values;
};

struct InitialModel {
  UserModel model;
  // Keywords the synonym source did not know; they keep W_max and get no
  // expansions.
  std::vector<std::string> unexpanded_keywords;
};

// Trimmed, lowercased, blank-free and deduplicated in first-seen order.
std::vector<std::string> clean_keywords(std::span<const std::string> keywords);

// Keywords are cleaned as above. Each keyword enters with
// `keyword_weight`, followed by up to `synonyms_per_keyword` near-synonyms
// with their similarity weights; repeated words keep the highest weight at
// their first position.
InitialModel create_initial_model(std::span<const std::string> keywords,
                                  std::size_t synonyms_per_keyword, double keyword_weight,
                                  const SynonymSource& synonyms);

// Normalizes every word, drops those under the length filter and merges
// duplicates on the highest weight. Throws Error{InvalidArgument} if nothing
// survives.
RefinedModel refine_model(const UserModel& model, const NormalizeOptions& options);

// Appends each foreign word the model lacks with weight 0.
UserModel update_model_words(UserModel model, const std::set<std::string>& foreign_vocabulary);

// M_Q = sum_j S_df(j) * W_df(j) over the model's words. A word contributes
// through its normalized form under the index's options; when a word has two
// forms (union mode) the larger component is used.
ItemModel compute_item_model(std::string_view item_id, const UserModel& model,
                             const ItemIndex& index, const EngineConfig& config);

// Applies M_c <- M_c +/- alpha * M_Q for each record in timestamp order
// (stable for equal timestamps). Throws Error{NotFound} naming the first
// unknown item before touching any weight.
UserModel update_model_weights(UserModel model, std::span<const FeedbackRecord> feedback,
                               double alpha, const ItemIndex& index, const EngineConfig& config);

}  // namespace termrec
