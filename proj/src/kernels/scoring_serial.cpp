#include <cmath>
#include <vector>

#include "item_vector.hpp"
#include "termrec/kernels.hpp"

namespace termrec::kernels {

void item_vector(const ScoringProblem& problem, std::size_t item, std::span<double> out) {
  detail::accumulate_item(problem, item, out);
}

void score_items_serial(const ScoringProblem& problem, std::span<double> scores) {
  std::vector<double> scratch(problem.slot_count);
  for (std::size_t i = 0; i < problem.item_count; ++i) {
    detail::accumulate_item(problem, i, scratch);
    scores[i] = similarity(scratch, problem.query, problem.measure).value;
  }
}

void cosine_scan_serial(std::span<const double> matrix, std::span<const double> norms,
                        std::size_t dim, std::span<const double> query,
                        std::span<double> out) {
  double qq = 0.0;
  for (const double q : query) qq += q * q;
  const double qnorm = std::sqrt(qq);
  const std::size_t rows = norms.size();
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = matrix.data() + r * dim;
    double dot = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dot += row[d] * query[d];
    out[r] = (norms[r] == 0.0 || qnorm == 0.0) ? 0.0 : dot / (norms[r] * qnorm);
  }
}

}  // namespace termrec::kernels
