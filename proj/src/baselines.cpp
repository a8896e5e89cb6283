#include <algorithm>
#include <cmath>
#include <map>

#include "termrec/error.hpp"
#include "termrec/evaluation.hpp"

namespace termrec {
namespace {

std::vector<ItemId> rank_by_score(const std::vector<double>& scores, std::span<const Item> items,
                                  std::size_t top_n, const std::unordered_set<ItemId>& exclude) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!exclude.count(items[i].id)) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return items[a].id < items[b].id;
  });
  std::vector<ItemId> out;
  for (std::size_t i = 0; i < std::min(top_n, order.size()); ++i) out.push_back(items[order[i]].id);
  return out;
}

double cosine_or_zero(double dot, double aa, double bb) {
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return dot / (std::sqrt(aa) * std::sqrt(bb));
}

}  // namespace

std::vector<ItemId> baseline_fullvocab_tfidf(std::span<const std::string> keywords,
                                             const ItemIndex& index, std::size_t top_n,
                                             const std::unordered_set<ItemId>& exclude) {
  if (index.empty()) throw conflict("item index is empty");
  const std::size_t n_items = index.item_count();

  // Concatenated-field term counts per item and document frequency over items.
  std::vector<std::map<std::uint32_t, std::uint32_t>> docs(n_items);
  std::vector<std::uint32_t> df(index.vocabulary_size(), 0);
  for (std::size_t i = 0; i < n_items; ++i) {
    for (std::size_t j = 0; j < index.field_count(); ++j) {
      for (const auto& tc : index.field_terms(i, j)) docs[i][tc.term] += tc.count;
    }
    for (const auto& [term, count] : docs[i]) ++df[term];
  }

  std::map<std::uint32_t, std::uint32_t> query;
  double query_norm_sq = 0.0;
  std::map<std::string, std::uint32_t> unknown;
  for (const std::string& keyword : keywords) {
    for (const std::string& token : tokenize(keyword)) {
      for (const std::string& form : normalize_term(token, index.options().normalize)) {
        if (const auto id = index.term_id(form)) {
          ++query[*id];
        } else {
          ++unknown[form];
        }
      }
    }
  }
  for (const auto& [term, count] : unknown) {
    const double w = count * smoothed_idf(n_items, 0);
    query_norm_sq += w * w;
  }
  for (const auto& [term, count] : query) {
    const double w = count * smoothed_idf(n_items, df[term]);
    query_norm_sq += w * w;
  }

  std::vector<double> scores(n_items, 0.0);
  for (std::size_t i = 0; i < n_items; ++i) {
    double dot = 0.0, doc_sq = 0.0;
    for (const auto& [term, count] : docs[i]) {
      const double w = count * smoothed_idf(n_items, df[term]);
      doc_sq += w * w;
      if (const auto q = query.find(term); q != query.end()) {
        dot += w * (q->second * smoothed_idf(n_items, df[term]));
      }
    }
    scores[i] = cosine_or_zero(dot, doc_sq, query_norm_sq);
  }
  return rank_by_score(scores, index.items(), top_n, exclude);
}

std::vector<ItemId> baseline_embedding_sum(std::span<const std::string> keywords,
                                           std::span<const Item> items,
                                           const EmbeddingStore& store, std::size_t top_n,
                                           const std::unordered_set<ItemId>& exclude) {
  if (store.empty()) throw invalid_argument("embedding store is empty");
  const std::size_t dim = store.dimension();

  auto add_tokens = [&](std::string_view text, std::vector<double>& acc) {
    std::size_t hits = 0;
    for (const std::string& token : tokenize(text)) {
      const auto v = store.vector(token);
      if (v.empty()) continue;
      for (std::size_t d = 0; d < dim; ++d) acc[d] += v[d];
      ++hits;
    }
    return hits;
  };

  std::vector<double> user(dim, 0.0);
  std::size_t known = 0;
  for (const std::string& keyword : keywords) known += add_tokens(keyword, user);
  if (known == 0) throw invalid_argument("no keyword is in the embedding vocabulary");

  std::vector<double> scores(items.size(), 0.0);
  std::vector<double> feature(dim);
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::fill(feature.begin(), feature.end(), 0.0);
    for (const std::string& field : items[i].fields) add_tokens(field, feature);
    scores[i] = similarity(feature, user, SimilarityMeasure::Cosine).value;
  }
  return rank_by_score(scores, items, top_n, exclude);
}

}  // namespace termrec
