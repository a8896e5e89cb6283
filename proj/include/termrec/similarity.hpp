#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace termrec {

enum class SimilarityMeasure {
  Cosine,
  DotProduct,
  Euclidean,
  Manhattan,
};

enum class TfMode {
  Frequency,
  // tf is 1 whenever the term occurs, so a component is either 0 or the idf.
  Binary,
};

const char* to_string(SimilarityMeasure measure);
SimilarityMeasure similarity_from_string(std::string_view name);
const char* to_string(TfMode mode);
TfMode tf_mode_from_string(std::string_view name);

struct SimilarityResult {
  double value = 0.0;
  // Set when Cosine met a zero vector; value is then 0.
  bool zero_vector = false;
};

// Higher is always more similar: Euclidean and Manhattan are returned as
// negated distances. Throws on dimension mismatch.
SimilarityResult similarity(std::span<const double> a, std::span<const double> b,
                            SimilarityMeasure measure);

inline double similarity_value(std::span<const double> a, std::span<const double> b,
                               SimilarityMeasure measure) {
  return similarity(a, b, measure).value;
}

}  // namespace termrec
