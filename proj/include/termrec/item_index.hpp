#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "termrec/kernels.hpp"
#include "termrec/similarity.hpp"
#include "termrec/text_normalize.hpp"

namespace termrec {

using ItemId = std::string;

// A free-text record with n ordered data fields (e.g. title, description, tags).
struct Item {
  ItemId id;
  std::vector<std::string> fields;
  std::map<std::string, std::string> metadata;

  bool operator==(const Item&) const = default;
};

struct IndexOptions {
  std::size_t field_count = 3;
  NormalizeOptions normalize;

  bool operator==(const IndexOptions& o) const {
    return field_count == o.field_count && normalize.mode == o.normalize.mode &&
           normalize.trim_suffix == o.normalize.trim_suffix;
  }
};

// smoothed idf: ln((1 + N) / (1 + df)) + 1, always >= 1 for df <= N
double smoothed_idf(std::size_t item_count, std::uint32_t df);

// Items plus per-field term statistics. Each item's field j is one document
// of the field-j collection, so df and idf are tracked per field.
class ItemIndex {
 public:
  explicit ItemIndex(IndexOptions options = {});

  // Equivalent to ingesting `items` in order into an empty index.
  static ItemIndex build(IndexOptions options, std::span<const Item> items);

  // Throws Error{Conflict} on a duplicate id and Error{InvalidArgument} when
  // the field count differs from the index's.
  void ingest(Item item);

  std::size_t item_count() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t field_count() const { return options_.field_count; }
  const IndexOptions& options() const { return options_; }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(std::size_t position) const { return items_.at(position); }
  std::optional<std::size_t> position(std::string_view id) const;

  std::size_t vocabulary_size() const { return terms_.size(); }
  std::optional<std::uint32_t> term_id(std::string_view term) const;
  const std::string& term(std::uint32_t id) const { return terms_.at(id); }

  std::uint32_t df(std::size_t field, std::string_view term) const;
  std::uint32_t tf(std::size_t position, std::size_t field, std::string_view term) const;
  double idf(std::size_t field, std::string_view term) const;

  // tf' * idf for each of `words` over the item's field; tf' is the raw
  // count (Frequency) or 1 when present (Binary). Throws on a bad field.
  std::vector<double> field_vector(std::size_t position, std::size_t field,
                                   std::span<const std::string> words, TfMode mode) const;

  std::span<const kernels::TermCount> field_terms(std::size_t position, std::size_t field) const;
  kernels::FieldPostingsView postings(std::size_t field) const;
  std::span<const std::uint32_t> document_frequencies(std::size_t field) const {
    return df_.at(field);
  }

  bool operator==(const ItemIndex&) const = default;

 private:
  struct FieldPostings {
    std::vector<std::size_t> offsets{0};
    std::vector<kernels::TermCount> entries;
    bool operator==(const FieldPostings&) const = default;
  };

  void check_field(std::size_t field) const;
  std::uint32_t intern(const std::string& term);

  IndexOptions options_;
  std::vector<Item> items_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  std::vector<FieldPostings> postings_;           // [field]
  std::vector<std::vector<std::uint32_t>> df_;    // [field][term id]
};

// S_i = sum_j field_vectors[j] * weights[j]. Throws on mismatched sizes.
std::vector<double> item_feature_vector(std::span<const std::vector<double>> field_vectors,
                                        std::span<const double> weights);

}  // namespace termrec
