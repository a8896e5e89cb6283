#pragma once

#include <algorithm>

#include "termrec/kernels.hpp"

namespace termrec::kernels::detail {

// S_i = sum_j (tf' * idf_j) * W_j, accumulated field by field.
inline void accumulate_item(const ScoringProblem& p, std::size_t item, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 0; j < p.fields.size(); ++j) {
    const FieldPostingsView& field = p.fields[j];
    const double weight = p.field_weights[j];
    const double* idf = p.idf.data() + j * p.slot_count;
    for (std::size_t e = field.offsets[item]; e < field.offsets[item + 1]; ++e) {
      const TermCount& tc = field.entries[e];
      if (tc.term >= p.term_slot.size()) continue;
      const std::int32_t slot = p.term_slot[tc.term];
      if (slot < 0) continue;
      const double tf = p.tf_mode == TfMode::Binary ? 1.0 : static_cast<double>(tc.count);
      out[static_cast<std::size_t>(slot)] += (tf * idf[slot]) * weight;
    }
  }
}

}  // namespace termrec::kernels::detail
