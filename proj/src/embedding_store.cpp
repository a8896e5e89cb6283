#include "termrec/embedding_store.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "termrec/error.hpp"
#include "termrec/kernels.hpp"

namespace termrec {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) parts.push_back(line.substr(start, i - start));
  }
  return parts;
}

bool parse_double(std::string_view s, double& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool is_count_header(const std::vector<std::string_view>& parts) {
  if (parts.size() != 2) return false;
  return std::all_of(parts.begin(), parts.end(), [](std::string_view p) {
    return !p.empty() && std::all_of(p.begin(), p.end(), [](char c) { return c >= '0' && c <= '9'; });
  });
}

Error parse_error(std::size_t line_no, const std::string& what) {
  return Error(ErrorKind::Parse, "embeddings line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

EmbeddingStore EmbeddingStore::load(std::istream& in) {
  EmbeddingStore store;
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    const auto parts = split_ws(line);
    if (parts.empty()) continue;
    if (line_no == 1 && is_count_header(parts)) continue;
    if (parts.size() < 2) throw parse_error(line_no, "word without vector components");

    const std::size_t dim = parts.size() - 1;
    if (store.dim_ == 0) {
      store.dim_ = dim;
    } else if (dim != store.dim_) {
      throw parse_error(line_no, "dimension mismatch: expected " + std::to_string(store.dim_) +
                                     " components, found " + std::to_string(dim));
    }
    row.assign(dim, 0.0);
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      if (!parse_double(parts[d + 1], row[d])) {
        throw parse_error(line_no, "non-numeric component '" + std::string(parts[d + 1]) + "'");
      }
      sq += row[d] * row[d];
    }
    const std::string word(parts[0]);
    // Zero vectors have no direction; duplicates keep the first entry.
    if (sq == 0.0 || store.lookup_.count(word)) continue;
    store.lookup_.emplace(word, store.words_.size());
    store.words_.push_back(word);
    store.values_.insert(store.values_.end(), row.begin(), row.end());
    store.norms_.push_back(std::sqrt(sq));
  }
  if (store.words_.empty()) throw invalid_argument("embedding store is empty");
  return store;
}

EmbeddingStore EmbeddingStore::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open embeddings file '" + path + "'");
  return load(in);
}

EmbeddingStore::EmbeddingStore(std::vector<std::string> words, std::vector<double> values,
                               std::size_t dim)
    : words_(std::move(words)), values_(std::move(values)), dim_(dim) {
  if (dim_ == 0 || values_.size() != words_.size() * dim_) {
    throw invalid_argument("embedding matrix does not match vocabulary size x dimension");
  }
  index_rows();
}

void EmbeddingStore::index_rows() {
  norms_.clear();
  lookup_.clear();
  for (std::size_t r = 0; r < words_.size(); ++r) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) sq += values_[r * dim_ + d] * values_[r * dim_ + d];
    if (sq == 0.0) throw invalid_argument("zero vector for word '" + words_[r] + "'");
    if (!lookup_.emplace(words_[r], r).second) {
      throw invalid_argument("duplicate word '" + words_[r] + "'");
    }
    norms_.push_back(std::sqrt(sq));
  }
}

bool EmbeddingStore::contains(std::string_view word) const {
  return lookup_.count(std::string(word)) > 0;
}

std::span<const double> EmbeddingStore::vector(std::string_view word) const {
  const auto it = lookup_.find(std::string(word));
  if (it == lookup_.end()) return {};
  return row(it->second);
}

std::span<const double> EmbeddingStore::row(std::size_t index) const {
  return std::span<const double>(values_).subspan(index * dim_, dim_);
}

SynonymLookup EmbeddingStore::near_synonyms(std::string_view keyword, std::size_t count) const {
  SynonymLookup result;
  const auto it = lookup_.find(std::string(keyword));
  if (it == lookup_.end()) {
    result.out_of_vocabulary = true;
    return result;
  }
  if (count == 0) return result;
  const std::size_t self = it->second;

  std::vector<double> sims(words_.size());
  kernels::cosine_scan_omp(values_, norms_, dim_, row(self), sims);

  std::vector<std::size_t> candidates;
  candidates.reserve(words_.size());
  for (std::size_t r = 0; r < words_.size(); ++r) {
    if (r != self && sims[r] > 0.0) candidates.push_back(r);
  }
  auto better = [&](std::size_t a, std::size_t b) {
    if (sims[a] != sims[b]) return sims[a] > sims[b];
    return words_[a] < words_[b];
  };
  const std::size_t take = std::min(count, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + take, candidates.end(), better);
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t r = candidates[i];
    result.synonyms.push_back({words_[r], std::min(sims[r], 1.0)});
  }
  return result;
}

void SynonymTable::set(std::string keyword, std::vector<NearSynonym> synonyms) {
  table_.insert_or_assign(std::move(keyword), std::move(synonyms));
}

SynonymLookup SynonymTable::near_synonyms(std::string_view keyword, std::size_t count) const {
  SynonymLookup result;
  const auto it = table_.find(keyword);
  if (it == table_.end()) {
    result.out_of_vocabulary = true;
    return result;
  }
  const auto& list = it->second;
  result.synonyms.assign(list.begin(), list.begin() + std::min(count, list.size()));
  return result;
}

}  // namespace termrec
