#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "linkrec/graph.hpp"
#include "linkrec/proximity.hpp"

namespace linkrec {

struct SynthConfig {
  int months = 12;
  int total_users = 5000;
  /// Optional explicit arrivals per month; overrides months/total_users.
  std::vector<int> arrivals;
  /// Links each newcomer makes to earlier users.
  int links_per_user = 2;
  /// Triadic-closure links per month as a fraction of the current link count.
  double closure_rate = 0.08;
  /// Closure weight grows as (common neighbors)^closure_exponent.
  double closure_exponent = 3.0;
  double attachment_exponent = 1.0;
  /// Weight multiplier 1 + homophily * jaccard on every link choice.
  double homophily = 10.0;
  int vocabulary = 200;
  int communities = 10;
  int terms_per_user = 10;
  /// Probability that a profile term comes from the user's own community.
  double community_affinity = 0.5;
  /// Other terms follow a Zipf law over the vocabulary with this exponent
  /// (0 = uniform), so popular terms are shared across communities.
  double term_skew = 1.5;
  std::uint64_t seed = 1;
};

void validate(const SynthConfig& cfg);

std::pair<TemporalGraph, ProfileStore> gen_network(const SynthConfig& cfg);

}  // namespace linkrec
