#include "linkrec/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linkrec/error.hpp"

namespace linkrec {

std::size_t k_from_fraction(double fraction, std::size_t n) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    fail(ErrorKind::kInvalidArgument, "ranking", "k fraction must be in (0,1]");
  if (n == 0) return 0;
  const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(raw), 1, n);
}

std::vector<std::size_t> top_k_indices(const std::vector<double>& scores, const std::vector<UserPair>& pairs,
                                       std::size_t K) {
  if (scores.size() != pairs.size()) fail(ErrorKind::kInvalidArgument, "ranking", "scores/pairs size mismatch");
  for (double s : scores)
    if (std::isnan(s)) fail(ErrorKind::kNumeric, "ranking", "NaN score");
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t k = std::min(K, idx.size());
  auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return pairs[a] < pairs[b];
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(), better);
  idx.resize(k);
  return idx;
}

}  // namespace linkrec
