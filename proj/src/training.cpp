#include "linkrec/training.hpp"

#include <algorithm>
#include <numeric>

#include "linkrec/error.hpp"
#include "linkrec/ranking.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "training_set";
}

std::vector<std::uint8_t> established_at(const TemporalGraph& graph, const std::vector<NodePair>& pairs, int month) {
  const GraphSnapshot view = snapshot(graph, month);
  std::vector<std::uint8_t> out(pairs.size(), 0);
  for (std::size_t k = 0; k < pairs.size(); ++k) out[k] = view.adjacent(pairs[k].j, pairs[k].h) ? 1 : 0;
  return out;
}

std::vector<FeatureRecord> label_by_utility(std::vector<FeatureRecord> records,
                                            const std::vector<std::uint8_t>& established, double k_fraction) {
  if (records.size() != established.size())
    fail(ErrorKind::kInvalidArgument, kModule, "records/outcomes size mismatch");
  if (records.empty()) fail(ErrorKind::kEmptySet, kModule, "no candidate links");
  for (auto& r : records)
    if (r.j > r.h) std::swap(r.j, r.h);
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return UserPair{records[a].j, records[a].h} < UserPair{records[b].j, records[b].h};
  });
  std::vector<FeatureRecord> sorted;
  std::vector<double> util;
  std::vector<UserPair> pairs;
  sorted.reserve(records.size());
  for (std::size_t i : order) {
    sorted.push_back(records[i]);
    util.push_back(utility(records[i].V, records[i].C, established[i] != 0));
    pairs.push_back({records[i].j, records[i].h});
  }
  const std::size_t K = k_from_fraction(k_fraction, sorted.size());
  for (auto& r : sorted) r.R = 0;
  for (std::size_t i : top_k_indices(util, pairs, K)) sorted[i].R = 1;
  return sorted;
}

std::vector<FeatureRecord> build_training_from(const TemporalGraph& graph, const MonthFeatures& prev, int t,
                                               double rho, double k_fraction) {
  if (t < 2) fail(ErrorKind::kInvalidArgument, kModule, "training month t must be >= 2");
  if (prev.month != t - 1) fail(ErrorKind::kInvalidArgument, kModule, "features must come from month t-1");
  if (prev.pairs.empty()) fail(ErrorKind::kEmptySet, kModule, "no candidate links at month " + std::to_string(t - 1));
  // Utilities use the computed features; the floor only guards the likelihood.
  std::vector<FeatureRecord> raw = to_records(graph, prev, rho);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    raw[k].V = prev.V[k];
    raw[k].C = rho * prev.C1[k];
  }
  auto labeled = label_by_utility(std::move(raw), established_at(graph, prev.pairs, t), k_fraction);
  for (auto& r : labeled) {
    r.V = floor_feature(r.V);
    r.C = floor_feature(r.C);
  }
  return labeled;
}

std::vector<FeatureRecord> build_training(const TemporalGraph& graph, const ProfileStore& profiles, int t,
                                          const ValueConfig& value_cfg, const CostConfig& cost_cfg,
                                          const KatzConfig& katz_cfg, const LabelingConfig& label_cfg,
                                          unsigned threads) {
  if (t < 2) fail(ErrorKind::kInvalidArgument, kModule, "training month t must be >= 2");
  validate(cost_cfg);
  const EdgeValueCache costs(graph, value_cfg, threads);
  const MonthFeatures prev = compute_month_features(graph, profiles, t - 1, value_cfg, katz_cfg, costs, threads);
  return build_training_from(graph, prev, t, cost_cfg.rho, label_cfg.k_fraction);
}

}  // namespace linkrec
