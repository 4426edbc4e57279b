#include "linkrec/baselines.hpp"

#include <cmath>
#include <string>

#include "linkrec/error.hpp"
#include "linkrec/ranking.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "baselines";
}

std::string_view name(ProximityScorer s) {
  switch (s) {
    case ProximityScorer::kCN: return "CN";
    case ProximityScorer::kAA: return "AA";
    case ProximityScorer::kKatz: return "Katz";
    case ProximityScorer::kJaccard: return "Jaccard";
  }
  return "?";
}

std::vector<double> proximity_scores(const GraphSnapshot& view, const ProfileStore& profiles,
                                     const std::vector<UserPair>& candidates, ProximityScorer scorer,
                                     const KatzConfig& katz_cfg) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const UserPair& p : candidates) {
    switch (scorer) {
      case ProximityScorer::kCN: scores.push_back(static_cast<double>(common_neighbors(view, p.j, p.h))); break;
      case ProximityScorer::kAA: scores.push_back(adamic_adar(view, p.j, p.h)); break;
      case ProximityScorer::kKatz: scores.push_back(katz(view, p.j, p.h, katz_cfg)); break;
      case ProximityScorer::kJaccard: scores.push_back(jaccard(profiles, p.j, p.h)); break;
    }
  }
  return scores;
}

RecommendationList rank_by_scores(const std::vector<UserPair>& candidates, const std::vector<double>& scores,
                                  std::size_t K) {
  if (K < 1) fail(ErrorKind::kInvalidArgument, kModule, "K must be >= 1");
  std::vector<UserPair> pairs;
  pairs.reserve(candidates.size());
  for (const auto& c : candidates) pairs.push_back({std::min(c.j, c.h), std::max(c.j, c.h)});
  RecommendationList out;
  out.K = K;
  for (std::size_t i : top_k_indices(scores, pairs, K)) out.items.push_back({pairs[i].j, pairs[i].h, scores[i], scores[i]});
  return out;
}

RecommendationList rank_by_proximity(const GraphSnapshot& view, const ProfileStore& profiles,
                                     const std::vector<UserPair>& candidates, ProximityScorer scorer, std::size_t K,
                                     const KatzConfig& katz_cfg) {
  return rank_by_scores(candidates, proximity_scores(view, profiles, candidates, scorer, katz_cfg), K);
}

NaiveBayesModel nb_fit(const std::vector<FeatureRecord>& records) {
  double n[2] = {0, 0}, sv[2] = {0, 0}, sc[2] = {0, 0}, ss[2] = {0, 0}, sn[2] = {0, 0};
  for (const FeatureRecord& r : records) {
    if (r.R != 0 && r.R != 1) fail(ErrorKind::kInvalidArgument, kModule, "unlabeled training record");
    n[r.R] += 1;
    sv[r.R] += r.V;
    sc[r.R] += r.C;
    ss[r.R] += r.S;
    sn[r.R] += r.N;
  }
  if (n[0] == 0 || n[1] == 0) fail(ErrorKind::kLearning, kModule, "naive Bayes needs both classes");
  NaiveBayesModel m;
  m.p[1] = n[1] / (n[0] + n[1]);
  m.p[0] = 1.0 - m.p[1];
  for (int c = 0; c < 2; ++c) {
    m.lamV[c] = n[c] / sv[c];
    m.lamC[c] = n[c] / sc[c];
    m.lamS[c] = n[c] / ss[c];
    m.lamN[c] = n[c] / sn[c];
    for (double v : {m.lamV[c], m.lamC[c], m.lamS[c], m.lamN[c]})
      if (!(v > 0.0) || !std::isfinite(v))
        fail(ErrorKind::kLearning, kModule, "degenerate class " + std::to_string(c) + " feature sums");
  }
  return m;
}

double nb_log_odds(const FeatureRecord& rec, const NaiveBayesModel& m) {
  double l[2];
  for (int c = 0; c < 2; ++c) {
    l[c] = std::log(m.p[c]) + std::log(m.lamV[c]) - m.lamV[c] * rec.V + std::log(m.lamC[c]) - m.lamC[c] * rec.C +
           std::log(m.lamS[c]) - m.lamS[c] * rec.S + std::log(m.lamN[c]) - m.lamN[c] * rec.N;
  }
  return l[1] - l[0];
}

double nb_probability(const FeatureRecord& rec, const NaiveBayesModel& m) {
  return 1.0 / (1.0 + std::exp(-nb_log_odds(rec, m)));
}

RecommendationList nb_recommend(const std::vector<FeatureRecord>& candidates, const NaiveBayesModel& model,
                                std::size_t K) {
  std::vector<double> prob, score;
  for (const auto& c : candidates) {
    score.push_back(nb_log_odds(c, model));
    prob.push_back(1.0 / (1.0 + std::exp(-score.back())));
  }
  return rank_top_k(candidates, prob, score, K);
}

}  // namespace linkrec
