#include <omp.h>

#include <cmath>
#include <vector>

#include "item_vector.hpp"
#include "termrec/kernels.hpp"

namespace termrec::kernels {

void score_items_omp(const ScoringProblem& problem, std::span<double> scores) {
  const auto n = static_cast<std::ptrdiff_t>(problem.item_count);
#pragma omp parallel
  {
    std::vector<double> scratch(problem.slot_count);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      detail::accumulate_item(problem, static_cast<std::size_t>(i), scratch);
      scores[i] = similarity(scratch, problem.query, problem.measure).value;
    }
  }
}

void cosine_scan_omp(std::span<const double> matrix, std::span<const double> norms,
                     std::size_t dim, std::span<const double> query,
                     std::span<double> out) {
  double qq = 0.0;
  for (const double q : query) qq += q * q;
  const double qnorm = std::sqrt(qq);
  const auto rows = static_cast<std::ptrdiff_t>(norms.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const double* row = matrix.data() + r * dim;
    double dot = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dot += row[d] * query[d];
    out[r] = (norms[r] == 0.0 || qnorm == 0.0) ? 0.0 : dot / (norms[r] * qnorm);
  }
}

}  // namespace termrec::kernels
