#pragma once

#include <vector>

#include "linkrec/features.hpp"
#include "linkrec/graph.hpp"
#include "linkrec/proximity.hpp"

namespace linkrec {

struct LabelingConfig {
  double k_fraction = 0.005;
};

/// Establishment indicator at `month` for each candidate pair.
std::vector<std::uint8_t> established_at(const TemporalGraph& graph, const std::vector<NodePair>& pairs, int month);

/// R = 1 for the top ceil(k_fraction * n) records by utility (ties by pair).
/// Records are returned in canonical pair order regardless of input order.
std::vector<FeatureRecord> label_by_utility(std::vector<FeatureRecord> records,
                                            const std::vector<std::uint8_t>& established, double k_fraction);

/// Training records: features on snapshot t-1, outcomes read at snapshot t.
std::vector<FeatureRecord> build_training(const TemporalGraph& graph, const ProfileStore& profiles, int t,
                                          const ValueConfig& value_cfg, const CostConfig& cost_cfg,
                                          const KatzConfig& katz_cfg, const LabelingConfig& label_cfg,
                                          unsigned threads = 1);

/// Same labeling from already computed features of month t-1.
std::vector<FeatureRecord> build_training_from(const TemporalGraph& graph, const MonthFeatures& prev, int t,
                                               double rho, double k_fraction);

}  // namespace linkrec
