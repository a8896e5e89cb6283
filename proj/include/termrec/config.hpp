#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "termrec/similarity.hpp"
#include "termrec/text_normalize.hpp"

namespace termrec {

// Every tunable of the engine. JSON keys mirror the field comments.
struct EngineConfig {
  std::size_t synonyms_per_keyword = 5;          // "S"
  double keyword_weight = 2.0;                   // "W_max"
  std::size_t field_count = 3;                   // "field_count"
  std::vector<double> field_weights{1.0, 1.2, 0.8};  // "W_df"
  double learning_rate = 0.1;                    // "alpha"
  WordFormMode word_form = WordFormMode::Stemmed;  // "word_form"
  bool trim_suffix = true;                       // "trim_suffix"
  TfMode tf_mode = TfMode::Binary;               // "tf_mode"
  SimilarityMeasure measure = SimilarityMeasure::Cosine;  // "measure"
  std::size_t top_n = 10;                        // "N"
  std::string embedding_path;                    // "embedding_path"

  NormalizeOptions normalize_options() const { return {word_form, trim_suffix}; }

  // Throws Error{InvalidArgument} when a numeric field is not strictly
  // positive or |W_df| != field_count.
  void validate() const;

  bool operator==(const EngineConfig&) const = default;
};

void to_json(nlohmann::json& j, const EngineConfig& config);
// Missing keys keep their current values, so partial documents act as overrides.
void from_json(const nlohmann::json& j, EngineConfig& config);

EngineConfig load_config_file(const std::string& path);

}  // namespace termrec
