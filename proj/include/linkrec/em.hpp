#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linkrec/features.hpp"
#include "linkrec/rng.hpp"
#include "linkrec/theta.hpp"

namespace linkrec {

/// How each latent piece is weighted in the M-step.
///  - kPosterior: by its share of the posterior mass (exact EM).
///  - kUnit: unit mass on the tail and (0,y) pieces and on whichever middle
///    piece exists, giving the unweighted closed forms.
enum class PieceMass { kPosterior, kUnit };

struct EmConfig {
  double epsilon = 1e-6;
  int max_iter = 500;
  int restarts = 3;
  double init_sample_fraction = 1.0 / 3.0;
  std::uint64_t seed = 1;
  PieceMass piece_mass = PieceMass::kPosterior;
  int init_retries = 100;
  unsigned threads = 1;
};

void validate(const EmConfig& cfg);

/// Per-record E-step quantities under the previous estimate.
struct EStepCache {
  /// The estimate the cache was computed under.
  Theta theta;
  std::vector<std::uint8_t> R;
  std::vector<std::uint8_t> I;
  std::vector<double> Y, y;
  /// Gamma^1..Gamma^4: conditional mean of L on each piece (0 when empty).
  std::vector<double> G1, G2, G3, G4;
  /// Posterior mass of each piece.
  std::vector<double> W1, W2, W3, W4;
  /// Gamma^1 - Y, kept separately to avoid cancellation.
  std::vector<double> tail_excess;
  /// ln P(O_i | theta) per record, and the total.
  std::vector<double> loglik_terms;
  double loglik = 0.0;
};

Theta init_theta(const std::vector<FeatureRecord>& records, const EmConfig& cfg, CounterRng& rng);

/// Moment estimates on exactly the given records (no sampling).
Theta moment_estimate(const std::vector<FeatureRecord>& records);

EStepCache estep(const std::vector<FeatureRecord>& records, const Theta& theta, unsigned threads = 1);

/// Closed-form updates. A rate whose update is undefined because its
/// pieces carry no posterior mass keeps its value from cache.theta; a class
/// with no records is a degenerate-class error.
Theta mstep(const std::vector<FeatureRecord>& records, const EStepCache& cache,
            PieceMass mass = PieceMass::kPosterior);

double loglik(const std::vector<FeatureRecord>& records, const Theta& theta, unsigned threads = 1);

struct RunTrace {
  Theta theta;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
  std::string error;
};

struct FitResult {
  Theta theta;
  double loglik = 0.0;
  int best_restart = 0;
  std::vector<RunTrace> runs;
};

/// Single EM run from a given start.
RunTrace run_em(const std::vector<FeatureRecord>& records, Theta start, const EmConfig& cfg);

FitResult fit(const std::vector<FeatureRecord>& records, const EmConfig& cfg);

}  // namespace linkrec
