#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "termrec/workbook.hpp"

namespace termrec {

// Seeded generator for planted-ground-truth evaluation data. Events are
// written about interest topics using inflected word forms; every user
// likes exactly the events of their topics. Output is bit-reproducible for
// a given seed on every platform (no std:: distributions).
struct SyntheticOptions {
  std::uint64_t seed = 20190801;
  std::size_t workbooks = 2;
  std::size_t topics_per_workbook = 6;
  std::size_t events_per_topic = 5;
  std::size_t users_per_workbook = 10;
  std::size_t topics_per_user = 2;
  std::size_t dimension = 16;
};

struct SyntheticCorpus {
  std::vector<std::string> words;        // embedding vocabulary
  std::vector<std::vector<double>> vectors;
  std::vector<LabeledWorkbook> workbooks;
};

SyntheticCorpus generate_synthetic(const SyntheticOptions& options);

// GloVe text format with six decimals.
void write_embeddings(std::ostream& out, const SyntheticCorpus& corpus);

}  // namespace termrec
