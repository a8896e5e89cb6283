#include "termrec/item_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "termrec/error.hpp"

namespace termrec {

double smoothed_idf(std::size_t item_count, std::uint32_t df) {
  return std::log((1.0 + static_cast<double>(item_count)) / (1.0 + static_cast<double>(df))) +
         1.0;
}

ItemIndex::ItemIndex(IndexOptions options)
    : options_(options), postings_(options.field_count), df_(options.field_count) {
  if (options_.field_count == 0) throw invalid_argument("item index needs at least one field");
}

ItemIndex ItemIndex::build(IndexOptions options, std::span<const Item> items) {
  ItemIndex index(options);
  for (const Item& item : items) index.ingest(item);
  return index;
}

std::uint32_t ItemIndex::intern(const std::string& term) {
  const auto [it, inserted] = term_ids_.try_emplace(term, static_cast<std::uint32_t>(terms_.size()));
  if (inserted) {
    terms_.push_back(term);
    for (auto& df : df_) df.push_back(0);
  }
  return it->second;
}

void ItemIndex::ingest(Item item) {
  if (item.id.empty()) throw invalid_argument("item id must not be empty");
  if (positions_.count(item.id)) throw conflict("duplicate item id '" + item.id + "'");
  if (item.fields.size() != options_.field_count) {
    throw invalid_argument("item '" + item.id + "' has " + std::to_string(item.fields.size()) +
                           " fields, index expects " + std::to_string(options_.field_count));
  }

  for (std::size_t j = 0; j < options_.field_count; ++j) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const std::string& token : tokenize(item.fields[j])) {
      for (const std::string& form : normalize_term(token, options_.normalize)) {
        ++counts[intern(form)];
      }
    }
    FieldPostings& field = postings_[j];
    for (const auto& [term, count] : counts) {
      field.entries.push_back({term, count});
      ++df_[j][term];
    }
    field.offsets.push_back(field.entries.size());
  }
  positions_.emplace(item.id, items_.size());
  items_.push_back(std::move(item));
}

std::optional<std::size_t> ItemIndex::position(std::string_view id) const {
  const auto it = positions_.find(std::string(id));
  if (it == positions_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> ItemIndex::term_id(std::string_view term) const {
  const auto it = term_ids_.find(std::string(term));
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

void ItemIndex::check_field(std::size_t field) const {
  if (field >= options_.field_count) {
    throw invalid_argument("field index " + std::to_string(field) + " out of range (n = " +
                           std::to_string(options_.field_count) + ")");
  }
}

std::uint32_t ItemIndex::df(std::size_t field, std::string_view term) const {
  check_field(field);
  const auto id = term_id(term);
  return id ? df_[field][*id] : 0;
}

std::span<const kernels::TermCount> ItemIndex::field_terms(std::size_t position,
                                                           std::size_t field) const {
  check_field(field);
  if (position >= items_.size()) throw not_found("item position out of range");
  const FieldPostings& p = postings_[field];
  return std::span<const kernels::TermCount>(p.entries)
      .subspan(p.offsets[position], p.offsets[position + 1] - p.offsets[position]);
}

std::uint32_t ItemIndex::tf(std::size_t position, std::size_t field, std::string_view term) const {
  const auto terms = field_terms(position, field);
  const auto id = term_id(term);
  if (!id) return 0;
  const auto it = std::lower_bound(terms.begin(), terms.end(), *id,
                                   [](const kernels::TermCount& tc, std::uint32_t t) { return tc.term < t; });
  return (it != terms.end() && it->term == *id) ? it->count : 0;
}

double ItemIndex::idf(std::size_t field, std::string_view term) const {
  return smoothed_idf(items_.size(), df(field, term));
}

std::vector<double> ItemIndex::field_vector(std::size_t position, std::size_t field,
                                            std::span<const std::string> words, TfMode mode) const {
  check_field(field);
  std::vector<double> out(words.size(), 0.0);
  for (std::size_t w = 0; w < words.size(); ++w) {
    const std::uint32_t count = tf(position, field, words[w]);
    if (count == 0) continue;
    const double tf_value = mode == TfMode::Binary ? 1.0 : static_cast<double>(count);
    out[w] = tf_value * idf(field, words[w]);
  }
  return out;
}

kernels::FieldPostingsView ItemIndex::postings(std::size_t field) const {
  check_field(field);
  return {postings_[field].offsets, postings_[field].entries};
}

std::vector<double> item_feature_vector(std::span<const std::vector<double>> field_vectors,
                                        std::span<const double> weights) {
  if (field_vectors.size() != weights.size()) {
    throw invalid_argument("item_feature_vector: " + std::to_string(field_vectors.size()) +
                           " field vectors but " + std::to_string(weights.size()) + " weights");
  }
  if (field_vectors.empty()) return {};
  const std::size_t dim = field_vectors.front().size();
  std::vector<double> out(dim, 0.0);
  for (std::size_t j = 0; j < field_vectors.size(); ++j) {
    if (field_vectors[j].size() != dim) {
      throw invalid_argument("item_feature_vector: field vectors differ in dimension");
    }
    for (std::size_t d = 0; d < dim; ++d) out[d] += field_vectors[j][d] * weights[j];
  }
  return out;
}

}  // namespace termrec
