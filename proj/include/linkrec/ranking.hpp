#pragma once

#include <cstddef>
#include <vector>

#include "linkrec/graph.hpp"

namespace linkrec {

/// K = ceil(fraction * n), clamped to [1, n] for n > 0.
std::size_t k_from_fraction(double fraction, std::size_t n);

/// Indices of the top-K scores: score descending, ties by pair ascending.
/// NaN scores are rejected.
std::vector<std::size_t> top_k_indices(const std::vector<double>& scores, const std::vector<UserPair>& pairs,
                                       std::size_t K);

}  // namespace linkrec
