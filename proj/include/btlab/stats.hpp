#pragma once

#include <cstdint>
#include <vector>

namespace btlab::stats {

// Pearson statistic against a uniform expectation over counts.size() cells.
double chi_square_uniform(const std::vector<std::int64_t>& counts);

// Upper tail P[Chi2_df >= stat] via the regularized incomplete gamma function.
double chi_square_pvalue(double stat, int df);

}  // namespace btlab::stats
