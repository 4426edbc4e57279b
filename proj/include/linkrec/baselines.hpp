#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "linkrec/features.hpp"
#include "linkrec/inference.hpp"
#include "linkrec/proximity.hpp"

namespace linkrec {

enum class ProximityScorer { kCN, kAA, kKatz, kJaccard };

std::string_view name(ProximityScorer s);

/// Scores for each candidate pair on the given snapshot.
std::vector<double> proximity_scores(const GraphSnapshot& view, const ProfileStore& profiles,
                                     const std::vector<UserPair>& candidates, ProximityScorer scorer,
                                     const KatzConfig& katz_cfg = {});

RecommendationList rank_by_proximity(const GraphSnapshot& view, const ProfileStore& profiles,
                                     const std::vector<UserPair>& candidates, ProximityScorer scorer, std::size_t K,
                                     const KatzConfig& katz_cfg = {});

/// Ranks candidates by already computed scores.
RecommendationList rank_by_scores(const std::vector<UserPair>& candidates, const std::vector<double>& scores,
                                  std::size_t K);

struct NaiveBayesModel {
  std::array<double, 2> p{0.5, 0.5};
  std::array<double, 2> lamV{1, 1}, lamC{1, 1}, lamS{1, 1}, lamN{1, 1};
};

NaiveBayesModel nb_fit(const std::vector<FeatureRecord>& records);
double nb_log_odds(const FeatureRecord& rec, const NaiveBayesModel& model);
double nb_probability(const FeatureRecord& rec, const NaiveBayesModel& model);
RecommendationList nb_recommend(const std::vector<FeatureRecord>& candidates, const NaiveBayesModel& model,
                                std::size_t K);

}  // namespace linkrec
