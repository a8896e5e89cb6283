#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// The oracles recompute everything from raw item text with plain loops and
// maps; they share only tokenize/normalize_term with the library.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "termrec/config.hpp"
#include "termrec/embedding_store.hpp"
#include "termrec/item_index.hpp"
#include "termrec/kernels.hpp"
#include "termrec/text_normalize.hpp"
#include "termrec/user_model.hpp"

namespace termrec::test {

inline std::vector<std::string> table2_keywords() { return {"sport", "technology"}; }

// Near-synonym lists of the worked example, five per keyword.
inline SynonymTable table1_synonyms() {
  SynonymTable table;
  table.set("sport", {{"athletics", 1.0}, {"football", 1.0}, {"rowing", 0.9}, {"racing", 0.9},
                      {"wrestling", 0.8}});
  table.set("technology", {{"engineering", 0.8}, {"IT", 0.8}, {"application", 0.6},
                           {"business", 0.5}, {"technological", 0.5}});
  return table;
}

// Initial model of the worked example, in display order.
inline UserModel table2_model() {
  return UserModel{{{"sport", 2.0}, {"athletics", 1.0}, {"football", 1.0}, {"rowing", 0.9},
                    {"racing", 0.9}, {"wrestling", 0.8}, {"technology", 2.0},
                    {"engineering", 0.8}, {"it", 0.8}, {"application", 0.6},
                    {"business", 0.5}, {"technological", 0.5}}};
}

inline const std::vector<std::string>& table4_words() {
  static const std::vector<std::string> words{"sport", "athlet", "footbal", "row", "race",
                                              "wrestl", "technolog", "engin", "applic", "bus"};
  return words;
}

inline const std::vector<double>& table4_weights() {
  static const std::vector<double> weights{2.0, 1.0, 1.0, 0.9, 0.9, 0.8, 2.0, 0.8, 0.6, 0.5};
  return weights;
}

// Table-5 tf-idf rows [item][field][slot] over the Table-4 words.
inline const std::vector<std::vector<std::vector<double>>>& table5_tfidf() {
  static const std::vector<std::vector<std::vector<double>>> rows{
      {{0, 1.70, 1.0, 0, 0, 0, 0, 0, 0, 0},
       {2.60, 3.40, 2.0, 0, 0, 0, 0, 0, 0, 0},
       {1.30, 0, 1.0, 0, 0, 0, 0, 0, 0, 0}},
      {{0, 0, 0, 0, 0, 0, 0, 0.50, 1.30, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 0, 0}},
      {{0, 0, 0, 0, 0, 0, 0.82, 0, 0, 0},
       {1.30, 0, 0, 0, 0, 0, 2.46, 0, 0, 0},
       {0, 0, 0, 0, 0, 0, 0, 0.50, 0, 0}},
  };
  return rows;
}

inline const std::vector<std::vector<double>>& table6_vectors() {
  static const std::vector<std::vector<double>> s{
      {3.64, 4.42, 3.8, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0.5, 1.3, 0},
      {1.04, 0, 0, 0, 0, 0, 2.788, 0.6, 0, 0},
  };
  return s;
}

// Table 5 factors exactly as integer tf times one idf per word, so it can be
// injected into the scoring kernel in Frequency mode.
struct InjectedTable5 {
  std::vector<std::vector<std::size_t>> offsets;          // [field]
  std::vector<std::vector<kernels::TermCount>> entries;   // [field]
  std::vector<kernels::FieldPostingsView> views;
  std::vector<std::int32_t> term_slot;
  std::vector<double> idf;  // [field][slot]
  std::vector<double> field_weights;
  std::vector<double> query;
  kernels::ScoringProblem problem;

  explicit InjectedTable5(std::vector<double> weights) : field_weights(std::move(weights)) {
    const auto& rows = table5_tfidf();
    const std::size_t slots = table4_words().size();
    // Unused words keep idf 1; their tf is 0 everywhere.
    const std::vector<double> word_idf{1.30, 1.70, 1.0, 1.0, 1.0, 1.0, 0.82, 0.50, 1.30, 1.0};
    offsets.assign(3, {0});
    entries.assign(3, {});
    for (const auto& item : rows) {
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t s = 0; s < slots; ++s) {
          if (item[j][s] == 0) continue;
          const double tf = item[j][s] / word_idf[s];
          entries[j].push_back({static_cast<std::uint32_t>(s),
                                static_cast<std::uint32_t>(std::lround(tf))});
        }
        offsets[j].push_back(entries[j].size());
      }
    }
    for (std::size_t j = 0; j < 3; ++j) views.push_back({offsets[j], entries[j]});
    for (std::size_t s = 0; s < slots; ++s) term_slot.push_back(static_cast<std::int32_t>(s));
    for (std::size_t j = 0; j < 3; ++j) idf.insert(idf.end(), word_idf.begin(), word_idf.end());
    query = table4_weights();

    problem.item_count = rows.size();
    problem.slot_count = slots;
    problem.fields = views;
    problem.term_slot = term_slot;
    problem.idf = idf;
    problem.field_weights = field_weights;
    problem.query = query;
    problem.tf_mode = TfMode::Frequency;
    problem.measure = SimilarityMeasure::Cosine;
  }
  InjectedTable5(const InjectedTable5&) = delete;
  InjectedTable5& operator=(const InjectedTable5&) = delete;
};

// Three college events for the HTTP and CLI examples.
inline std::vector<Item> worked_example_items() {
  return {
      {"1",
       {"Honoring the football team",
        "Athletics department honors the football team and its athletes for a winning sport season",
        "football, sport"},
       {}},
      {"2", {"Course registration", "Registration opens for spring courses", "registrar"}, {}},
      {"3",
       {"Technology in health",
        "How technology and engineering help health care, sport medicine and technologies",
        "engineering"},
       {}},
  };
}

// Random corpora over a small vocabulary that is stable under every word-form
// mode, so collisions between forms stay within the vocabulary.
inline const std::vector<std::string>& toy_vocabulary() {
  static const std::vector<std::string> words{
      "garden", "music", "robot", "paint", "river", "chess", "salsa", "poem",   "coffee",
      "yoga",   "film",  "tango", "ocean", "piano", "novel", "orbit", "hiking", "cook"};
  return words;
}

inline std::vector<Item> random_items(std::mt19937_64& rng, std::size_t count,
                                      std::size_t field_count = 3) {
  const auto& vocab = toy_vocabulary();
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> length(0, 6);
  std::vector<Item> items;
  for (std::size_t i = 0; i < count; ++i) {
    Item item;
    char id[16];
    std::snprintf(id, sizeof id, "item%02zu", i);
    item.id = id;
    for (std::size_t f = 0; f < field_count; ++f) {
      std::string text;
      const int n = length(rng);
      for (int t = 0; t < n; ++t) text += vocab[pick(rng)] + (t + 1 < n ? " " : "");
      item.fields.push_back(text);
    }
    items.push_back(std::move(item));
  }
  return items;
}

inline RefinedModel random_refined(std::mt19937_64& rng, std::size_t words) {
  const auto& vocab = toy_vocabulary();
  std::vector<std::string> pool = vocab;
  pool.push_back("absent");
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_real_distribution<double> weight(-0.5, 2.0);
  RefinedModel model;
  for (std::size_t w = 0; w < std::min(words, pool.size()); ++w) {
    model.words.push_back(pool[w]);
    model.weights.push_back(weight(rng));
  }
  return model;
}

// ---- brute-force oracles ----

// Per-field term counts of one item, recomputed from its text.
inline std::vector<std::map<std::string, int>> oracle_counts(const Item& item,
                                                             const NormalizeOptions& options) {
  std::vector<std::map<std::string, int>> counts(item.fields.size());
  for (std::size_t j = 0; j < item.fields.size(); ++j) {
    for (const std::string& token : tokenize(item.fields[j])) {
      for (const std::string& form : normalize_term(token, options)) ++counts[j][form];
    }
  }
  return counts;
}

struct OracleCorpus {
  std::vector<std::vector<std::map<std::string, int>>> counts;  // [item][field]
  std::vector<std::map<std::string, int>> df;                   // [field]
  std::size_t n = 0;

  OracleCorpus(const std::vector<Item>& items, const NormalizeOptions& options) {
    n = items.size();
    for (const Item& item : items) counts.push_back(oracle_counts(item, options));
    df.resize(items.empty() ? 0 : items.front().fields.size());
    for (const auto& item : counts) {
      for (std::size_t j = 0; j < item.size(); ++j) {
        for (const auto& [term, c] : item[j]) {
          if (c > 0) ++df[j][term];
        }
      }
    }
  }

  double idf(std::size_t field, const std::string& term) const {
    const auto it = df[field].find(term);
    const double d = it == df[field].end() ? 0.0 : it->second;
    return std::log((1.0 + n) / (1.0 + d)) + 1.0;
  }

  double tfidf(std::size_t item, std::size_t field, const std::string& term, TfMode mode) const {
    const auto it = counts[item][field].find(term);
    if (it == counts[item][field].end() || it->second == 0) return 0.0;
    const double tf = mode == TfMode::Binary ? 1.0 : it->second;
    return tf * idf(field, term);
  }

  std::vector<double> vector(std::size_t item, const std::vector<std::string>& words,
                             const std::vector<double>& field_weights, TfMode mode) const {
    std::vector<double> out(words.size(), 0.0);
    for (std::size_t s = 0; s < words.size(); ++s) {
      for (std::size_t j = 0; j < field_weights.size(); ++j) {
        out[s] += tfidf(item, j, words[s], mode) * field_weights[j];
      }
    }
    return out;
  }
};

inline double oracle_similarity(const std::vector<double>& u, const std::vector<double>& s,
                                SimilarityMeasure measure) {
  double dot = 0, nu = 0, ns = 0, l2 = 0, l1 = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * s[i];
    nu += u[i] * u[i];
    ns += s[i] * s[i];
    l2 += (u[i] - s[i]) * (u[i] - s[i]);
    l1 += std::fabs(u[i] - s[i]);
  }
  switch (measure) {
    case SimilarityMeasure::Cosine:
      return (nu == 0 || ns == 0) ? 0.0 : dot / (std::sqrt(nu) * std::sqrt(ns));
    case SimilarityMeasure::DotProduct:
      return dot;
    case SimilarityMeasure::Euclidean:
      return -std::sqrt(l2);
    case SimilarityMeasure::Manhattan:
      return -l1;
  }
  return 0.0;
}

struct OracleRanked {
  std::string id;
  double score;
};

inline std::vector<OracleRanked> oracle_rank(const std::vector<Item>& items,
                                             const RefinedModel& model, const EngineConfig& config,
                                             std::size_t top_n) {
  const OracleCorpus corpus(items, config.normalize_options());
  std::vector<OracleRanked> all;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto s = corpus.vector(i, model.words, config.field_weights, config.tf_mode);
    all.push_back({items[i].id, oracle_similarity(model.weights, s, config.measure)});
  }
  // Selection by repeated maximum: a deliberately different algorithm from
  // the library's partial sort.
  std::vector<OracleRanked> out;
  std::vector<bool> used(all.size(), false);
  for (std::size_t k = 0; k < std::min(top_n, all.size()); ++k) {
    std::size_t best = all.size();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (used[i]) continue;
      if (best == all.size() || all[i].score > all[best].score ||
          (all[i].score == all[best].score && all[i].id < all[best].id)) {
        best = i;
      }
    }
    used[best] = true;
    out.push_back(all[best]);
  }
  return out;
}

// M_Q of one item: for every model word, the best over its normalized forms
// of the weighted field sum.
inline std::vector<double> oracle_item_model(const std::vector<Item>& items, std::size_t item,
                                             const UserModel& model, const EngineConfig& config) {
  const OracleCorpus corpus(items, config.normalize_options());
  std::vector<double> out;
  for (const ModelEntry& e : model.entries) {
    double best = 0.0;
    for (const std::string& form : normalize_term(e.word, config.normalize_options())) {
      double sum = 0.0;
      for (std::size_t j = 0; j < config.field_weights.size(); ++j) {
        sum += corpus.tfidf(item, j, form, config.tf_mode) * config.field_weights[j];
      }
      best = std::max(best, sum);
    }
    out.push_back(best);
  }
  return out;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  static std::mt19937_64 rng(std::random_device{}());
  const auto dir = std::filesystem::temp_directory_path() /
                   ("termrec-" + name + "-" + std::to_string(rng() % 1000000000));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace termrec::test
