#pragma once

#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace termrec {

struct NearSynonym {
  std::string word;
  double weight = 0.0;  // in (0, 1]
};

struct SynonymLookup {
  std::vector<NearSynonym> synonyms;
  bool out_of_vocabulary = false;
};

// Anything that can expand a keyword into weighted near-synonyms.
class SynonymSource {
 public:
  virtual ~SynonymSource() = default;
  virtual SynonymLookup near_synonyms(std::string_view keyword, std::size_t count) const = 0;
};

// Immutable word -> dense vector table in GloVe text format
// (`word v1 v2 ... vd` per line). A leading word2vec-style `count dim`
// header line is tolerated.
class EmbeddingStore final : public SynonymSource {
 public:
  EmbeddingStore() = default;

  // Throws Error{Parse} naming the line for malformed input,
  // dimension mismatches and zero vectors; Error{InvalidArgument} for an
  // empty store.
  static EmbeddingStore load(std::istream& in);
  static EmbeddingStore load_file(const std::string& path);

  // Takes ownership of a row-major matrix of words.size() x dim values.
  EmbeddingStore(std::vector<std::string> words, std::vector<double> values, std::size_t dim);

  std::size_t size() const { return words_.size(); }
  std::size_t dimension() const { return dim_; }
  bool empty() const { return words_.empty(); }
  bool contains(std::string_view word) const;
  const std::vector<std::string>& words() const { return words_; }

  // Empty span for unknown words.
  std::span<const double> vector(std::string_view word) const;
  std::span<const double> row(std::size_t index) const;

  // The `count` most cosine-similar vocabulary words with similarity > 0,
  // excluding the keyword itself. Ties break on ascending word.
  SynonymLookup near_synonyms(std::string_view keyword, std::size_t count) const override;

 private:
  void index_rows();

  std::vector<std::string> words_;
  std::vector<double> values_;
  std::vector<double> norms_;
  std::unordered_map<std::string, std::size_t> lookup_;
  std::size_t dim_ = 0;
};

// Curated keyword -> synonym lists, e.g. an exported thesaurus.
class SynonymTable final : public SynonymSource {
 public:
  void set(std::string keyword, std::vector<NearSynonym> synonyms);
  SynonymLookup near_synonyms(std::string_view keyword, std::size_t count) const override;

 private:
  std::map<std::string, std::vector<NearSynonym>, std::less<>> table_;
};

}  // namespace termrec
