#include "termrec/user_model.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "termrec/error.hpp"

namespace termrec {

const ModelEntry* UserModel::find(std::string_view word) const {
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const ModelEntry& e) { return e.word == word; });
  return it == entries.end() ? nullptr : &*it;
}

const char* to_string(FeedbackLabel label) {
  return label == FeedbackLabel::Positive ? "positive" : "negative";
}

FeedbackLabel feedback_label_from_string(std::string_view name) {
  if (name == "positive" || name == "pos") return FeedbackLabel::Positive;
  if (name == "negative" || name == "neg") return FeedbackLabel::Negative;
  throw invalid_argument("unknown feedback label '" + std::string(name) + "'");
}

namespace {

// Insertion-ordered union keeping the highest weight per word.
class MaxMerge {
 public:
  void add(const std::string& word, double weight) {
    const auto [it, inserted] = slot_.try_emplace(word, words_.size());
    if (inserted) {
      words_.push_back(word);
      weights_.push_back(weight);
    } else {
      weights_[it->second] = std::max(weights_[it->second], weight);
    }
  }

  std::vector<std::string>& words() { return words_; }
  std::vector<double>& weights() { return weights_; }

 private:
  std::unordered_map<std::string, std::size_t> slot_;
  std::vector<std::string> words_;
  std::vector<double> weights_;
};

std::string clean_keyword(std::string_view raw) {
  const auto first = raw.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = raw.find_last_not_of(" \t\r\n");
  return to_lower(raw.substr(first, last - first + 1));
}

}  // namespace

std::vector<std::string> clean_keywords(std::span<const std::string> keywords) {
  std::vector<std::string> unique;
  for (const std::string& raw : keywords) {
    std::string keyword = clean_keyword(raw);
    if (keyword.empty()) continue;
    if (std::find(unique.begin(), unique.end(), keyword) == unique.end()) {
      unique.push_back(std::move(keyword));
    }
  }
  return unique;
}

InitialModel create_initial_model(std::span<const std::string> keywords,
                                  std::size_t synonyms_per_keyword, double keyword_weight,
                                  const SynonymSource& synonyms) {
  if (synonyms_per_keyword == 0) throw invalid_argument("S must be at least 1");
  if (!(keyword_weight > 0.0)) throw invalid_argument("W_max must be positive");

  const std::vector<std::string> unique = clean_keywords(keywords);
  if (unique.empty()) throw invalid_argument("at least one keyword is required");

  InitialModel result;
  MaxMerge merged;
  for (const std::string& keyword : unique) {
    merged.add(keyword, keyword_weight);
    const SynonymLookup lookup = synonyms.near_synonyms(keyword, synonyms_per_keyword);
    if (lookup.out_of_vocabulary) result.unexpanded_keywords.push_back(keyword);
    for (const NearSynonym& syn : lookup.synonyms) {
      const std::string word = to_lower(syn.word);
      if (word == keyword) continue;
      merged.add(word, syn.weight);
    }
  }
  for (std::size_t i = 0; i < merged.words().size(); ++i) {
    result.model.entries.push_back({merged.words()[i], merged.weights()[i]});
  }
  return result;
}

RefinedModel refine_model(const UserModel& model, const NormalizeOptions& options) {
  if (model.empty()) throw invalid_argument("cannot refine an empty user model");
  MaxMerge merged;
  for (const ModelEntry& entry : model.entries) {
    for (const std::string& form : normalize_term(entry.word, options)) {
      merged.add(form, entry.weight);
    }
  }
  if (merged.words().empty()) {
    throw invalid_argument("refined model is empty: every word was filtered out");
  }
  return {std::move(merged.words()), std::move(merged.weights())};
}

UserModel update_model_words(UserModel model, const std::set<std::string>& foreign_vocabulary) {
  std::unordered_set<std::string> present;
  for (const ModelEntry& entry : model.entries) present.insert(entry.word);
  for (const std::string& word : foreign_vocabulary) {
    if (present.insert(word).second) model.entries.push_back({word, 0.0});
  }
  return model;
}

ItemModel compute_item_model(std::string_view item_id, const UserModel& model,
                             const ItemIndex& index, const EngineConfig& config) {
  const auto position = index.position(item_id);
  if (!position) throw not_found("unknown item '" + std::string(item_id) + "'");
  if (config.field_weights.size() != index.field_count()) {
    throw invalid_argument("config field weights do not match the index field count");
  }

  ItemModel result;
  result.values.reserve(model.size());
  for (const ModelEntry& entry : model.entries) {
    double best = 0.0;
    for (const std::string& form : normalize_term(entry.word, index.options().normalize)) {
      double component = 0.0;
      for (std::size_t j = 0; j < index.field_count(); ++j) {
        const std::uint32_t count = index.tf(*position, j, form);
        if (count == 0) continue;
        const double tf = config.tf_mode == TfMode::Binary ? 1.0 : static_cast<double>(count);
        component += (tf * index.idf(j, form)) * config.field_weights[j];
      }
      best = std::max(best, component);
    }
    result.values.push_back(best);
  }
  return result;
}

UserModel update_model_weights(UserModel model, std::span<const FeedbackRecord> feedback,
                               double alpha, const ItemIndex& index, const EngineConfig& config) {
  if (!(alpha > 0.0)) throw invalid_argument("alpha must be positive");
  for (std::size_t i = 0; i < feedback.size(); ++i) {
    if (!index.position(feedback[i].item_id)) {
      throw not_found("feedback record " + std::to_string(i) + " refers to unknown item '" +
                      feedback[i].item_id + "'");
    }
  }
  std::vector<const FeedbackRecord*> ordered;
  for (const FeedbackRecord& record : feedback) ordered.push_back(&record);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const FeedbackRecord* a, const FeedbackRecord* b) {
                     return a->timestamp < b->timestamp;
                   });

  for (const FeedbackRecord* record : ordered) {
    const ItemModel item_model = compute_item_model(record->item_id, model, index, config);
    const double sign = record->label == FeedbackLabel::Positive ? 1.0 : -1.0;
    for (std::size_t w = 0; w < model.entries.size(); ++w) {
      model.entries[w].weight += sign * alpha * item_model.values[w];
    }
  }
  return model;
}

}  // namespace termrec
