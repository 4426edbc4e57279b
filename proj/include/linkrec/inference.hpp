#pragma once

#include <cstddef>
#include <vector>

#include "linkrec/features.hpp"
#include "linkrec/theta.hpp"

namespace linkrec {

struct Recommendation {
  UserId j = 0;
  UserId h = 0;
  double probability = 0.0;
  /// Ranking key. For the latent model this is the log-odds, which keeps
  /// distinct records distinct after the probability saturates at 0 or 1.
  double score = 0.0;
};

struct RecommendationList {
  std::vector<Recommendation> items;
  std::size_t K = 0;
};

/// ln INT(1) - ln INT(0).
double rec_log_odds(const FeatureRecord& rec, const Theta& theta);
double rec_probability(const FeatureRecord& rec, const Theta& theta);

/// Top-K by score descending, ties by pair ascending. `probability` and
/// `score` must be parallel to `candidates`.
RecommendationList rank_top_k(const std::vector<FeatureRecord>& candidates, const std::vector<double>& probability,
                              const std::vector<double>& score, std::size_t K);

RecommendationList recommend_topk(const std::vector<FeatureRecord>& candidates, const Theta& theta, std::size_t K,
                                  unsigned threads = 1);

}  // namespace linkrec
