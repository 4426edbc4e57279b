#include "linkrec/inference.hpp"

#include <cmath>
#include <string>

#include "linkrec/error.hpp"
#include "linkrec/latent.hpp"
#include "linkrec/parallel.hpp"
#include "linkrec/ranking.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "inference";
}

double rec_log_odds(const FeatureRecord& rec, const Theta& theta) {
  theta.validate();
  double l[2];
  for (int r = 0; r < 2; ++r) {
    try {
      l[r] = latent::log_int(rec, theta, r);
    } catch (const Error&) {
      l[r] = -INFINITY;
    }
  }
  if (!std::isfinite(l[0]) && !std::isfinite(l[1]))
    fail(ErrorKind::kNumeric, kModule,
         "both class integrals vanish for pair (" + std::to_string(rec.j) + "," + std::to_string(rec.h) + ")");
  return l[1] - l[0];
}

double rec_probability(const FeatureRecord& rec, const Theta& theta) {
  const double z = rec_log_odds(rec, theta);
  // INT(1) / (INT(0) + INT(1)) = 1 / (1 + exp(ln INT(0) - ln INT(1)))
  return 1.0 / (1.0 + std::exp(-z));
}

RecommendationList rank_top_k(const std::vector<FeatureRecord>& candidates, const std::vector<double>& probability,
                              const std::vector<double>& score, std::size_t K) {
  if (K < 1) fail(ErrorKind::kInvalidArgument, kModule, "K must be >= 1");
  std::vector<UserPair> pairs;
  pairs.reserve(candidates.size());
  for (const auto& c : candidates) pairs.push_back({std::min(c.j, c.h), std::max(c.j, c.h)});
  RecommendationList out;
  out.K = K;
  for (std::size_t i : top_k_indices(score, pairs, K))
    out.items.push_back({pairs[i].j, pairs[i].h, probability[i], score[i]});
  return out;
}

RecommendationList recommend_topk(const std::vector<FeatureRecord>& candidates, const Theta& theta, std::size_t K,
                                  unsigned threads) {
  theta.validate();
  std::vector<double> prob(candidates.size()), score(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i, unsigned) {
    score[i] = rec_log_odds(candidates[i], theta);
    prob[i] = 1.0 / (1.0 + std::exp(-score[i]));
  });
  return rank_top_k(candidates, prob, score, K);
}

}  // namespace linkrec
