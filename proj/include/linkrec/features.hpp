#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "linkrec/graph.hpp"
#include "linkrec/proximity.hpp"

namespace linkrec {

inline constexpr double kFeatureFloor = 1e-9;

struct UserOverride {
  double m = 1.0;
  double intrinsic = 0.0;
};

struct ValueConfig {
  double alpha = 0.5;
  int locality = 4;
  /// Replaces the graph's per-user m / intrinsic values where present.
  std::unordered_map<UserId, UserOverride> overrides;
};

struct CostConfig {
  double rho = 1.0;
};

void validate(const ValueConfig& cfg);
void validate(const CostConfig& cfg);

struct FeatureRecord {
  UserId j = 0;
  UserId h = 0;
  double V = 0.0;
  double C = 0.0;
  double S = 0.0;
  double N = 0.0;
  /// -1 when unlabeled.
  int R = -1;
};

/// Per-node m and intrinsic value after applying overrides.
struct UserWeights {
  std::vector<double> m;
  std::vector<double> intrinsic;
};
UserWeights resolve_weights(const TemporalGraph& graph, const ValueConfig& cfg);

/// alpha^0 .. alpha^X computed by repeated multiplication.
std::vector<double> alpha_powers(double alpha, int X);

double network_impact(const GraphSnapshot& view, UserId user, const ValueConfig& cfg);
double user_value(const GraphSnapshot& view, UserId user, const ValueConfig& cfg);
double total_value(const GraphSnapshot& view, const ValueConfig& cfg);

/// TV with the edge added minus TV without it. Re-runs truncated BFS only for
/// users whose neighborhoods can change.
double link_value(const GraphSnapshot& view, UserId j, UserId h, const ValueConfig& cfg);

/// Bulk link values on one snapshot via a truncated distance table.
class LinkValueEngine {
 public:
  LinkValueEngine(const GraphSnapshot& view, const ValueConfig& cfg, unsigned threads = 1);

  /// Requires j, h present and non-adjacent. Safe to call concurrently.
  double value(Node j, Node h) const;


 private:
  const GraphSnapshot* view_;
  int X_;
  std::vector<double> apow_;
  UserWeights weights_;
  DistanceTable dist_;
};

/// Value of every historical link, each evaluated on the network it was
/// added to (users registered by its month, links from earlier months).
class EdgeValueCache {
 public:
  EdgeValueCache(const TemporalGraph& graph, const ValueConfig& cfg, unsigned threads = 1);

  /// Parallel to graph.edges().
  const std::vector<double>& values() const { return values_; }

  /// rho times the mean value of links incident to j or h established by
  /// `month`; the global mean by `month` when both endpoints have none.
  double cost(Node j, Node h, int month, double rho) const;

  /// Per-node incident sums for one month, for bulk cost evaluation.
  struct MonthTotals {
    std::vector<double> sum;
    std::vector<std::uint32_t> count;
    double global_mean = 0.0;
    bool any = false;
  };
  MonthTotals totals(int month) const;

 private:
  const TemporalGraph* graph_;
  std::vector<double> values_;
};

double link_cost(const TemporalGraph& graph, UserId j, UserId h, int month, const CostConfig& cost_cfg,
                 const ValueConfig& value_cfg);

double utility(double V, double C, bool established);

/// Features of all two-hop candidates of one snapshot. C is stored at rho = 1
/// so one computation serves every rho (cost is linear in rho).
struct MonthFeatures {
  int month = 0;
  std::vector<NodePair> pairs;
  std::vector<double> V, C1, S, N;
};

MonthFeatures compute_month_features(const TemporalGraph& graph, const ProfileStore& profiles, int month,
                                     const ValueConfig& value_cfg, const KatzConfig& katz_cfg,
                                     const EdgeValueCache& costs, unsigned threads = 1);

/// Labeled-or-not records at a given rho, features floored at kFeatureFloor.
std::vector<FeatureRecord> to_records(const TemporalGraph& graph, const MonthFeatures& f, double rho);

inline double floor_feature(double x) { return x < kFeatureFloor ? kFeatureFloor : x; }

}  // namespace linkrec
