#pragma once

#include <utility>

#include "linkrec/features.hpp"
#include "linkrec/rng.hpp"
#include "linkrec/theta.hpp"

namespace linkrec {

/// Draw from the Freund bivariate exponential: the first failure happens at
/// rate lx + ly; the survivor then continues at its primed rate.
std::pair<double, double> sample_freund(double lx, double ly, double lxp, double lyp, CounterRng& rng);

struct RecordSampler {
  explicit RecordSampler(const Theta& theta);

  /// Labeled record with V, C exponential and (S, N) from the latent joint;
  /// the latent L is returned through `latent` when non-null.
  FeatureRecord operator()(CounterRng& rng, double* latent = nullptr) const;

  /// Log envelope bound for class r (for tests).
  double log_bound(int r) const { return log_bound_[r]; }
  /// Exponential proposal rates for S, N, L.
  const double* proposal_rates(int r) const { return rate_[r]; }

  /// Proposals allowed per record before giving up.
  long max_proposals = 5'000'000;

 private:
  Theta theta_;
  double log_bound_[2];
  double rate_[2][3];
};

FeatureRecord sample_record(const Theta& theta, CounterRng& rng);

}  // namespace linkrec
