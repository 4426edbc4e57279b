#include "linkrec/latent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "linkrec/error.hpp"

namespace linkrec::latent {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln((1 - e^{-t}) / t)
double log_phi_unit(double t) {
  const double a = std::fabs(t);
  if (a < 1e-3) {
    const double t2 = t * t;
    return -0.5 * t + t2 / 24.0 - t2 * t2 / 2880.0;
  }
  if (t > 0.0) return std::log(-std::expm1(-t)) - std::log(t);
  // (e^{a} - 1) / a for a = -t > 0
  if (a < 30.0) return std::log(std::expm1(a)) - std::log(a);
  return a + std::log1p(-std::exp(-a)) - std::log(a);
}

int check_class(int r) {
  if (r != 0 && r != 1) fail(ErrorKind::kInvalidArgument, "bnlf_em", "class label must be 0 or 1");
  return r;
}
}  // namespace

double mu(double t) {
  if (std::fabs(t) < 1e-2) {
    const double t2 = t * t;
    return 0.5 - t / 12.0 + t * t2 / 720.0 - t * t2 * t2 / 30240.0 + t * t2 * t2 * t2 / 1209600.0;
  }
  return 1.0 / t - 1.0 / std::expm1(t);
}

double log_phi(double c, double w) { return std::log(w) + log_phi_unit(c * w); }

Rates combined_rates(const Theta& th, int r) {
  return {th.lamS[r] - th.lamSp[r] + th.lamN[r] - th.lamNp[r] + th.lamL[r],
          th.lamS[r] + th.lamL[r] - th.lamSp[r], th.lamN[r] + th.lamL[r] - th.lamNp[r]};
}

ClassTerms class_terms(const Theta& th, int r) {
  check_class(r);
  ClassTerms k;
  k.lS = th.lamS[r];
  k.lSp = th.lamSp[r];
  k.lN = th.lamN[r];
  k.lNp = th.lamNp[r];
  k.lL = th.lamL[r];
  k.lLp = th.lamLp[r];
  k.ln_lS = std::log(k.lS);
  k.ln_lSp = std::log(k.lSp);
  k.ln_lN = std::log(k.lN);
  k.ln_lNp = std::log(k.lNp);
  k.ln_lL = std::log(k.lL);
  k.c = combined_rates(th, r);
  k.ln_c2 = std::log(std::fabs(k.c.c2));
  k.ln_c3 = std::log(std::fabs(k.c.c3));
  k.ln_c4 = std::log(std::fabs(k.c.c4));
  k.ln_gamma0 = std::log(th.p[r]) + std::log(th.lamV[r]) + std::log(th.lamC[r]);
  k.lV = th.lamV[r];
  k.lC = th.lamC[r];
  return k;
}

namespace {
// log_phi(c, w) given ln|c|: away from the series region ln(w) - ln|t|
// reduces to -ln|c|, which saves two logarithms per call.
double log_phi_k(double c, double ln_abs_c, double w) {
  const double t = c * w;
  const double a = std::fabs(t);
  if (a < 1e-3) return std::log(w) + log_phi_unit(t);
  if (t > 0.0) return std::log(-std::expm1(-t)) - ln_abs_c;
  if (a < 30.0) return std::log(std::expm1(a)) - ln_abs_c;
  return a + std::log1p(-std::exp(-a)) - ln_abs_c;
}
}  // namespace

Pieces pieces(double S, double N, const ClassTerms& k, bool with_means) {
  Pieces p;
  p.I = S > N ? 1 : 0;
  p.Y = std::max(S, N);
  p.y = std::min(S, N);
  const double lS = k.lS, lSp = k.lSp, lN = k.lN, lNp = k.lNp, lL = k.lL, lLp = k.lLp;
  const Rates& c = k.c;

  p.log_h[0] = k.ln_lS + k.ln_lN - (lS + lL - lLp) * S - (lN + lL - lLp) * N - lLp * p.Y;
  p.log_h[1] = k.ln_lSp + k.ln_lL + k.ln_lNp - lSp * S - lNp * N + log_phi_k(c.c2, k.ln_c2, p.y);
  p.log_h[2] = kNegInf;
  p.log_h[3] = kNegInf;
  if (S > N) {
    p.log_h[2] = k.ln_lL + k.ln_lSp + k.ln_lN - lSp * S - (lN + lL - lLp) * N - c.c3 * N +
                 log_phi_k(c.c3, k.ln_c3, S - N);
  } else if (N > S) {
    p.log_h[3] = k.ln_lL + k.ln_lNp + k.ln_lS - lNp * N - (lS + lL - lLp) * S - c.c4 * S +
                 log_phi_k(c.c4, k.ln_c4, N - S);
  }
  double m = kNegInf;
  for (double x : p.log_h) m = std::max(m, x);
  std::array<double, 4> e{};
  double sum = 0.0;
  if (std::isfinite(m))
    for (int i = 0; i < 4; ++i) sum += e[i] = std::exp(p.log_h[i] - m);
  p.log_total = m + std::log(sum);
  if (!std::isfinite(p.log_total))
    fail(ErrorKind::kNumeric, "bnlf_em", "non-finite latent integral");
  for (int i = 0; i < 4; ++i) p.weight[i] = e[i] / sum;

  if (with_means) {
    p.mean[0] = p.Y + 1.0 / lLp;
    p.mean[1] = p.y * mu(c.c2 * p.y);
    if (S > N) p.mean[2] = N + (S - N) * mu(c.c3 * (S - N));
    if (N > S) p.mean[3] = S + (N - S) * mu(c.c4 * (N - S));
  }
  return p;
}

Pieces pieces(double S, double N, const Theta& th, int r, bool with_means) {
  return pieces(S, N, class_terms(th, r), with_means);
}

double log_gamma(double V, double C, const Theta& th, int r) {
  check_class(r);
  return std::log(th.p[r]) + std::log(th.lamV[r]) - th.lamV[r] * V + std::log(th.lamC[r]) - th.lamC[r] * C;
}

double log_int(const FeatureRecord& rec, const Theta& th, int r) {
  return log_gamma(rec.V, rec.C, th, r) + pieces(rec.S, rec.N, th, r, false).log_total;
}

namespace {
/// ln of the Freund density of (x, L) with x-rates (lx, lxp) and L-rates (lL, lLp).
double log_freund(double x, double L, double lx, double lxp, double lL, double lLp) {
  if (x < L) return std::log(lx) + std::log(lLp) - lLp * L - (lx + lL - lLp) * x;
  return std::log(lL) + std::log(lxp) - lxp * x - (lx + lL - lxp) * L;
}
}  // namespace

double log_joint(double V, double C, double S, double N, double L, const Theta& th, int r) {
  check_class(r);
  const double fS = log_freund(S, L, th.lamS[r], th.lamSp[r], th.lamL[r], th.lamLp[r]);
  const double fN = log_freund(N, L, th.lamN[r], th.lamNp[r], th.lamL[r], th.lamLp[r]);
  const double fL = L < std::min(S, N) ? std::log(th.lamL[r]) - th.lamL[r] * L
                                       : std::log(th.lamLp[r]) - th.lamLp[r] * L;
  return log_gamma(V, C, th, r) + fS + fN - fL;
}

double posterior_density(const FeatureRecord& rec, const Theta& th, double L) {
  if (rec.R != 0 && rec.R != 1) fail(ErrorKind::kInvalidArgument, "bnlf_em", "record has no label");
  if (!(L > 0.0)) return 0.0;
  const Pieces p = pieces(rec.S, rec.N, th, rec.R, false);
  const double lg = log_gamma(rec.V, rec.C, th, rec.R);
  return std::exp(log_joint(rec.V, rec.C, rec.S, rec.N, L, th, rec.R) - lg - p.log_total);
}

int piece_of(double S, double N, double L) {
  const double y = std::min(S, N), Y = std::max(S, N);
  if (L > Y) return 0;
  if (L <= y) return 1;
  return S > N ? 2 : 3;
}

}  // namespace linkrec::latent
