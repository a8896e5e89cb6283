#include "termrec/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "termrec/error.hpp"

namespace termrec {

const char* to_string(SimilarityMeasure measure) {
  switch (measure) {
    case SimilarityMeasure::Cosine: return "cosine";
    case SimilarityMeasure::DotProduct: return "dot";
    case SimilarityMeasure::Euclidean: return "euclidean";
    case SimilarityMeasure::Manhattan: return "manhattan";
  }
  return "unknown";
}

SimilarityMeasure similarity_from_string(std::string_view name) {
  if (name == "cosine") return SimilarityMeasure::Cosine;
  if (name == "dot") return SimilarityMeasure::DotProduct;
  if (name == "euclidean") return SimilarityMeasure::Euclidean;
  if (name == "manhattan") return SimilarityMeasure::Manhattan;
  throw invalid_argument("unknown similarity measure '" + std::string(name) + "'");
}

const char* to_string(TfMode mode) {
  return mode == TfMode::Binary ? "binary" : "frequency";
}

TfMode tf_mode_from_string(std::string_view name) {
  if (name == "binary") return TfMode::Binary;
  if (name == "frequency") return TfMode::Frequency;
  throw invalid_argument("unknown tf mode '" + std::string(name) + "'");
}

SimilarityResult similarity(std::span<const double> a, std::span<const double> b,
                            SimilarityMeasure measure) {
  if (a.size() != b.size()) {
    throw invalid_argument("similarity: dimension mismatch (" + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  switch (measure) {
    case SimilarityMeasure::Cosine: {
      double dot = 0.0, aa = 0.0, bb = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
      }
      if (aa == 0.0 || bb == 0.0) return {0.0, true};
      const double c = dot / (std::sqrt(aa) * std::sqrt(bb));
      return {std::clamp(c, -1.0, 1.0), false};
    }
    case SimilarityMeasure::DotProduct: {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += a[i] * b[i];
      return {dot, false};
    }
    case SimilarityMeasure::Euclidean: {
      double sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
      }
      return {-std::sqrt(sq), false};
    }
    case SimilarityMeasure::Manhattan: {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
      return {-sum, false};
    }
  }
  return {};
}

}  // namespace termrec
