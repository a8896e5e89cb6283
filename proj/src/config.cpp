#include "termrec/config.hpp"

#include <fstream>

#include "termrec/error.hpp"

namespace termrec {

void EngineConfig::validate() const {
  if (synonyms_per_keyword == 0) throw invalid_argument("config: S must be positive");
  if (!(keyword_weight > 0.0)) throw invalid_argument("config: W_max must be positive");
  if (field_count == 0) throw invalid_argument("config: field_count must be positive");
  if (field_weights.size() != field_count) {
    throw invalid_argument("config: W_df has " + std::to_string(field_weights.size()) +
                           " entries, field_count is " + std::to_string(field_count));
  }
  for (const double w : field_weights) {
    if (!(w > 0.0)) throw invalid_argument("config: every W_df entry must be positive");
  }
  if (!(learning_rate > 0.0)) throw invalid_argument("config: alpha must be positive");
  if (top_n == 0) throw invalid_argument("config: N must be positive");
}

void to_json(nlohmann::json& j, const EngineConfig& c) {
  j = nlohmann::json{
      {"S", c.synonyms_per_keyword},
      {"W_max", c.keyword_weight},
      {"field_count", c.field_count},
      {"W_df", c.field_weights},
      {"alpha", c.learning_rate},
      {"word_form", to_string(c.word_form)},
      {"trim_suffix", c.trim_suffix},
      {"tf_mode", to_string(c.tf_mode)},
      {"measure", to_string(c.measure)},
      {"N", c.top_n},
      {"embedding_path", c.embedding_path},
  };
}

void from_json(const nlohmann::json& j, EngineConfig& c) {
  if (!j.is_object()) throw invalid_argument("config must be a JSON object");
  try {
    if (j.contains("S")) c.synonyms_per_keyword = j.at("S").get<std::size_t>();
    if (j.contains("W_max")) c.keyword_weight = j.at("W_max").get<double>();
    if (j.contains("field_count")) c.field_count = j.at("field_count").get<std::size_t>();
    if (j.contains("W_df")) c.field_weights = j.at("W_df").get<std::vector<double>>();
    if (j.contains("alpha")) c.learning_rate = j.at("alpha").get<double>();
    if (j.contains("word_form")) c.word_form = word_form_from_string(j.at("word_form").get<std::string>());
    if (j.contains("trim_suffix")) c.trim_suffix = j.at("trim_suffix").get<bool>();
    if (j.contains("tf_mode")) c.tf_mode = tf_mode_from_string(j.at("tf_mode").get<std::string>());
    if (j.contains("measure")) c.measure = similarity_from_string(j.at("measure").get<std::string>());
    if (j.contains("N")) c.top_n = j.at("N").get<std::size_t>();
    if (j.contains("embedding_path")) c.embedding_path = j.at("embedding_path").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw invalid_argument(std::string("config: ") + e.what());
  }
}

EngineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "config file '" + path + "': " + e.what());
  }
  EngineConfig config = j.get<EngineConfig>();
  config.validate();
  return config;
}

}  // namespace termrec
