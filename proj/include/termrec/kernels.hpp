#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; both evaluate each output element with the same
// floating-point operation order, so their results are bit-identical.

#include <cstddef>
#include <cstdint>
#include <span>

#include "termrec/similarity.hpp"

namespace termrec::kernels {

// One (term, count) posting of an item's data field.
struct TermCount {
  std::uint32_t term = 0;
  std::uint32_t count = 0;

  bool operator==(const TermCount&) const = default;
};

// Compressed rows for one data field: item i owns
// entries[offsets[i] .. offsets[i+1]).
struct FieldPostingsView {
  std::span<const std::size_t> offsets;
  std::span<const TermCount> entries;
};

struct ScoringProblem {
  std::size_t item_count = 0;
  std::size_t slot_count = 0;                 // |query|
  std::span<const FieldPostingsView> fields;  // n data fields
  // term id -> query slot, or -1 for terms outside the query vocabulary
  std::span<const std::int32_t> term_slot;
  // idf per field and slot, row-major [field][slot]
  std::span<const double> idf;
  std::span<const double> field_weights;  // n
  std::span<const double> query;          // slot_count
  TfMode tf_mode = TfMode::Binary;
  SimilarityMeasure measure = SimilarityMeasure::Cosine;
};

// Writes one similarity score per item.
void score_items_serial(const ScoringProblem& problem, std::span<double> scores);
void score_items_omp(const ScoringProblem& problem, std::span<double> scores);

// Item feature vector of a single item (dense over slots).
void item_vector(const ScoringProblem& problem, std::size_t item, std::span<double> out);

// Cosine of `query` against each row of a row-major matrix. `norms` holds
// the row norms; zero-norm rows or a zero query give 0.
void cosine_scan_serial(std::span<const double> matrix, std::span<const double> norms,
                        std::size_t dim, std::span<const double> query,
                        std::span<double> out);
void cosine_scan_omp(std::span<const double> matrix, std::span<const double> norms,
                     std::size_t dim, std::span<const double> query,
                     std::span<double> out);

}  // namespace termrec::kernels
