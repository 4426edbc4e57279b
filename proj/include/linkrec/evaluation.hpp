#pragma once

#include <functional>
#include <string>
#include <vector>

#include "linkrec/em.hpp"
#include "linkrec/features.hpp"
#include "linkrec/graph.hpp"
#include "linkrec/proximity.hpp"

namespace linkrec {

/// Realized features and establishment of candidate pairs, sorted by pair.
class Outcomes {
 public:
  Outcomes(std::vector<UserPair> pairs, std::vector<double> V, std::vector<double> C,
           std::vector<std::uint8_t> established);

  const std::vector<UserPair>& pairs() const { return pairs_; }
  double utility(std::size_t i) const;
  /// Throws not-found for a pair outside the candidate set.
  double utility_of(const UserPair& p) const;
  std::size_t size() const { return pairs_.size(); }

 private:
  std::vector<UserPair> pairs_;
  std::vector<double> V_, C_;
  std::vector<std::uint8_t> I_;
};

std::vector<UserPair> true_topk(const Outcomes& outcomes, std::size_t K);
double precision_at_k(const std::vector<UserPair>& recommended, const std::vector<UserPair>& truth, std::size_t K);
double average_utility(const std::vector<UserPair>& recommended, const Outcomes& outcomes);

enum class Method { kOurs, kNB, kCN, kAA, kKatz, kJaccard, kTruth };
std::string method_name(Method m);
Method parse_method(const std::string& s);
std::vector<Method> default_methods();

struct MetricsRow {
  std::string method;
  /// Prediction month, or "mean" / "std" for summary rows.
  std::string month;
  double precision = 0.0;
  double avg_utility = 0.0;
};

struct ExperimentConfig {
  ValueConfig value;
  KatzConfig katz;
  EmConfig em;
  std::vector<double> rhos{1.0};
  std::vector<double> k_fractions{0.005};
  /// Current months t; prediction month is t + 1. 0 means "all feasible".
  int first_month = 0;
  int last_month = 0;
  std::vector<Method> methods = default_methods();
  unsigned threads = 1;
};

struct CellResult {
  double rho = 1.0;
  double k_fraction = 0.005;
  std::vector<MetricsRow> rows;
};

using ProgressFn = std::function<void(const std::string&)>;

/// One metrics table per (rho, k_fraction) cell: one row per (method,
/// prediction month) followed by per-method mean and population-std rows.
std::vector<CellResult> run_experiment(const TemporalGraph& graph, const ProfileStore& profiles,
                                       const ExperimentConfig& cfg, const ProgressFn& progress = {});

/// Appends mean/std rows computed from the per-month rows, method order preserved.
void append_summary(std::vector<MetricsRow>& rows);

}  // namespace linkrec
