#include "linkrec/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "linkrec/error.hpp"
#include "linkrec/latent.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "data_io";

/// Log target (without the V/C/R factor) on one ordering cone of (S, N, L):
/// k0 + kS S + kN N + kL L. `rays` are the cone's extreme rays.
struct Region {
  double k0, k[3];
  int n_rays;
  int rays[4][3];
};
}  // namespace

std::pair<double, double> sample_freund(double lx, double ly, double lxp, double lyp, CounterRng& rng) {
  for (double r : {lx, ly, lxp, lyp})
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::kInvalidArgument, kModule, "Freund rates must be > 0");
  const double first = rng.exponential(lx + ly);
  if (rng.uniform() * (lx + ly) < lx) return {first, first + rng.exponential(lyp)};
  return {first + rng.exponential(lxp), first};
}

RecordSampler::RecordSampler(const Theta& theta) : theta_(theta) {
  theta.validate();
  for (int r = 0; r < 2; ++r) {
    const double lS = theta.lamS[r], lSp = theta.lamSp[r], lN = theta.lamN[r], lNp = theta.lamNp[r];
    const double lL = theta.lamL[r], lLp = theta.lamLp[r];
    const auto c = latent::combined_rates(theta, r);
    const Region regions[4] = {
        {std::log(lS) + std::log(lN) + std::log(lLp), {-(lS + lL - lLp), -(lN + lL - lLp), -lLp},
         4, {{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}},
        {std::log(lL) + std::log(lSp) + std::log(lNp), {-lSp, -lNp, -c.c2},
         4, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 1, 1}}},
        {std::log(lL) + std::log(lSp) + std::log(lN), {-lSp, -(lN + lL - lLp), -c.c3},
         3, {{1, 0, 0}, {1, 0, 1}, {1, 1, 1}}},
        {std::log(lL) + std::log(lNp) + std::log(lS), {-(lS + lL - lLp), -lNp, -c.c4},
         3, {{0, 1, 0}, {0, 1, 1}, {1, 1, 1}}},
    };
    // An exponential proposal with rates a dominates exp(target - k0) on a
    // cone iff (k + a) . v <= 0 on each of its rays. Collect a . v <= m.
    struct Cut {
      int v[3];
      double m;
    };
    std::vector<Cut> cuts;
    double t = INFINITY;
    for (const Region& g : regions)
      for (int i = 0; i < g.n_rays; ++i) {
        Cut cut{{g.rays[i][0], g.rays[i][1], g.rays[i][2]}, 0.0};
        for (int d = 0; d < 3; ++d) cut.m -= g.k[d] * cut.v[d];
        if (!(cut.m > 0.0)) fail(ErrorKind::kSampler, kModule, "latent joint does not decay along every direction");
        t = std::min(t, cut.m / (cut.v[0] + cut.v[1] + cut.v[2]));
        cuts.push_back(cut);
      }
    // Acceptance is proportional to aS aN aL: start from an equal split of
    // the tightest cut, then raise each rate towards its own limit.
    double a[3] = {0.5 * t, 0.5 * t, 0.5 * t};
    for (int round = 0; round < 30; ++round)
      for (int d = 0; d < 3; ++d) {
        double room = INFINITY;
        for (const Cut& cut : cuts) {
          if (!cut.v[d]) continue;
          double used = 0.0;
          for (int e = 0; e < 3; ++e)
            if (e != d) used += a[e] * cut.v[e];
          room = std::min(room, cut.m - used);
        }
        a[d] = 0.5 * (a[d] + room);
      }
    double bound = -INFINITY;
    for (int d = 0; d < 3; ++d) rate_[r][d] = a[d];
    for (const Region& g : regions) bound = std::max(bound, g.k0);
    log_bound_[r] = bound;
  }
}

FeatureRecord RecordSampler::operator()(CounterRng& rng, double* latent) const {
  const Theta& th = theta_;
  FeatureRecord rec;
  rec.R = rng.uniform() < th.p[1] ? 1 : 0;
  const int r = rec.R;
  rec.V = rng.exponential(th.lamV[r]);
  rec.C = rng.exponential(th.lamC[r]);
  const double lg = latent::log_gamma(rec.V, rec.C, th, r);
  for (long tries = 0; tries < max_proposals; ++tries) {
    const double S = rng.exponential(rate_[r][0]);
    const double N = rng.exponential(rate_[r][1]);
    const double L = rng.exponential(rate_[r][2]);
    if (!(S > 0.0 && N > 0.0 && L > 0.0)) continue;
    const double log_target = latent::log_joint(rec.V, rec.C, S, N, L, th, r) - lg;
    const double log_proposal = -(rate_[r][0] * S + rate_[r][1] * N + rate_[r][2] * L);
    const double log_ratio = log_target - log_proposal - log_bound_[r];
    if (log_ratio > 1e-9)
      fail(ErrorKind::kSampler, kModule, "envelope bound violated");
    if (std::log(rng.uniform_open_low()) <= log_ratio) {
      rec.S = S;
      rec.N = N;
      if (latent) *latent = L;
      return rec;
    }
  }
  fail(ErrorKind::kSampler, kModule,
       "rejection acceptance collapsed after " + std::to_string(max_proposals) +
           " proposals");
}

FeatureRecord sample_record(const Theta& theta, CounterRng& rng) { return RecordSampler(theta)(rng); }

}  // namespace linkrec
