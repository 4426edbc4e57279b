#pragma once

#include <array>

#include "linkrec/features.hpp"
#include "linkrec/theta.hpp"

namespace linkrec::latent {

/// Mean of an exponential-tilted uniform on (0,1): the conditional mean of
/// a density proportional to exp(-t u) on (0,1). Equals 1/t - 1/expm1(t).
double mu(double t);

/// ln of the integral of exp(-c L) over (0, w), for w > 0 and any real c.
double log_phi(double c, double w);

/// Combined exponents of the three bounded pieces for class r.
struct Rates {
  double c2;  // (0, y)
  double c3;  // (N, S)
  double c4;  // (S, N)
};
Rates combined_rates(const Theta& theta, int r);

/// The four pieces of the latent-factor integral for one (S, N) and class.
/// Piece order: (Y, inf), (0, y), (N, S), (S, N).
struct Pieces {
  int I = 0;  // 1 iff S > N
  double Y = 0.0;
  double y = 0.0;
  /// ln of each piece's integral of the joint without the V/C/R factor;
  /// -inf for pieces whose interval is empty.
  std::array<double, 4> log_h{};
  /// Conditional mean of L on each piece; 0 for empty pieces.
  std::array<double, 4> mean{};
  /// Share of the posterior mass on each piece.
  std::array<double, 4> weight{};
  double log_total = 0.0;
};

Pieces pieces(double S, double N, const Theta& theta, int r, bool with_means = true);

/// Per-class quantities that do not depend on the record, for bulk use.
struct ClassTerms {
  double lS, lSp, lN, lNp, lL, lLp;
  double ln_lS, ln_lSp, ln_lN, ln_lNp, ln_lL;
  Rates c;
  /// ln|c2|, ln|c3|, ln|c4| (-inf when a rate is exactly zero).
  double ln_c2, ln_c3, ln_c4;
  /// ln(p_r lamV lamC) and the two rates of log_gamma.
  double ln_gamma0, lV, lC;
};
ClassTerms class_terms(const Theta& theta, int r);

/// Same as pieces(S, N, theta, r, with_means) for the class of `k`.
Pieces pieces(double S, double N, const ClassTerms& k, bool with_means = true);

/// ln[p_r lamV exp(-lamV V) lamC exp(-lamC C)].
double log_gamma(double V, double C, const Theta& theta, int r);

/// ln of the integral over L of the joint density at class r.
double log_int(const FeatureRecord& rec, const Theta& theta, int r);

/// Pointwise ln of the joint density of (V, C, S, N, L, R = r).
double log_joint(double V, double C, double S, double N, double L, const Theta& theta, int r);

/// Posterior density of L given the record (at its own label) evaluated at L.
double posterior_density(const FeatureRecord& rec, const Theta& theta, double L);

/// Index of the piece containing L (ties resolved toward the lower interval).
int piece_of(double S, double N, double L);

}  // namespace linkrec::latent
