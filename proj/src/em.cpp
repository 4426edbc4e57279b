#include "linkrec/em.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "linkrec/error.hpp"
#include "linkrec/latent.hpp"
#include "linkrec/parallel.hpp"
#include "linkrec/simd/kernels.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "bnlf_em";

void check_records(const std::vector<FeatureRecord>& records) {
  if (records.empty()) fail(ErrorKind::kEmptySet, kModule, "no training records");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FeatureRecord& r = records[i];
    if (r.R != 0 && r.R != 1)
      fail(ErrorKind::kInvalidArgument, kModule, "record " + std::to_string(i) + " has no label");
    for (double v : {r.V, r.C, r.S, r.N})
      if (!(v > 0.0) || !std::isfinite(v))
        fail(ErrorKind::kInvalidArgument, kModule, "record " + std::to_string(i) + " has a non-positive feature");
  }
}

double positive_ratio(double num, double den, const char* what, int r) {
  const double v = num / den;
  if (!(num > 0.0) || !(den > 0.0) || !std::isfinite(v) || !(v > 0.0))
    fail(ErrorKind::kDegenerateClass, kModule,
         std::string("cannot update ") + what + std::to_string(r) + " (numerator " + std::to_string(num) +
             ", denominator " + std::to_string(den) + ")");
  return v;
}

// Q separates by coordinate, so leaving one rate unchanged when its pieces
// have lost all posterior mass is still a generalized EM step.
double rate_or_keep(double num, double den, double previous) {
  const double v = num / den;
  if (num > 0.0 && den > 0.0 && std::isfinite(v) && v > 0.0) return v;
  return previous;
}
}  // namespace

void validate(const EmConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) fail(ErrorKind::kInvalidArgument, kModule, "epsilon must be > 0");
  if (cfg.max_iter < 1) fail(ErrorKind::kInvalidArgument, kModule, "max_iter must be >= 1");
  if (cfg.restarts < 1) fail(ErrorKind::kInvalidArgument, kModule, "restarts must be >= 1");
  if (!(cfg.init_sample_fraction > 0.0 && cfg.init_sample_fraction <= 1.0))
    fail(ErrorKind::kInvalidArgument, kModule, "init sample fraction must be in (0,1]");
  if (cfg.init_retries < 1) fail(ErrorKind::kInvalidArgument, kModule, "init retries must be >= 1");
}

Theta moment_estimate(const std::vector<FeatureRecord>& records) {
  double n[2] = {0, 0}, sv[2] = {0, 0}, sc[2] = {0, 0}, ss[2] = {0, 0}, sn[2] = {0, 0};
  for (const FeatureRecord& r : records) {
    const int c = r.R;
    n[c] += 1;
    sv[c] += r.V;
    sc[c] += r.C;
    ss[c] += r.S;
    sn[c] += r.N;
  }
  if (n[0] == 0 || n[1] == 0)
    fail(ErrorKind::kInitialization, kModule, "sample contains a single class");
  Theta t;
  t.p[1] = n[1] / (n[0] + n[1]);
  t.p[0] = 1.0 - t.p[1];
  for (int c = 0; c < 2; ++c) {
    t.lamV[c] = n[c] / sv[c];
    t.lamC[c] = n[c] / sc[c];
    t.lamS[c] = t.lamSp[c] = n[c] / ss[c];
    t.lamN[c] = t.lamNp[c] = n[c] / sn[c];
    t.lamL[c] = t.lamLp[c] = 2.0 * n[c] / (ss[c] + sn[c]);
  }
  return t;
}

Theta init_theta(const std::vector<FeatureRecord>& records, const EmConfig& cfg, CounterRng& rng) {
  validate(cfg);
  check_records(records);
  const std::size_t M = records.size();
  const std::size_t m =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(cfg.init_sample_fraction * M - 1e-9)), 1, M);
  std::vector<std::size_t> idx(M);
  std::vector<FeatureRecord> sample;
  for (int attempt = 0; attempt < cfg.init_retries; ++attempt) {
    std::iota(idx.begin(), idx.end(), 0);
    // Partial Fisher-Yates: the first m slots are a uniform sample without replacement.
    for (std::size_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng.below(M - i)]);
    std::sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m));
    sample.clear();
    bool has[2] = {false, false};
    for (std::size_t i = 0; i < m; ++i) {
      sample.push_back(records[idx[i]]);
      has[records[idx[i]].R] = true;
    }
    if (has[0] && has[1]) return moment_estimate(sample);
    if (m == M) break;
  }
  fail(ErrorKind::kInitialization, kModule,
       "initialization sample contained a single class after " + std::to_string(cfg.init_retries) + " draws");
}

EStepCache estep(const std::vector<FeatureRecord>& records, const Theta& theta, unsigned threads) {
  theta.validate();
  const std::size_t M = records.size();
  EStepCache c;
  c.theta = theta;
  c.R.resize(M);
  c.I.resize(M);
  for (auto* v : {&c.Y, &c.y, &c.G1, &c.G2, &c.G3, &c.G4, &c.W1, &c.W2, &c.W3, &c.W4, &c.tail_excess,
                  &c.loglik_terms})
    v->assign(M, 0.0);
  const latent::ClassTerms terms[2] = {latent::class_terms(theta, 0), latent::class_terms(theta, 1)};
  parallel_for(M, threads, [&](std::size_t i, unsigned) {
    const FeatureRecord& rec = records[i];
    const int r = rec.R;
    const latent::ClassTerms& k = terms[r];
    latent::Pieces p;
    try {
      p = latent::pieces(rec.S, rec.N, k, true);
    } catch (const Error& e) {
      fail(ErrorKind::kNumeric, kModule, "record " + std::to_string(i) + ": " + e.what());
    }
    c.R[i] = static_cast<std::uint8_t>(r);
    c.I[i] = static_cast<std::uint8_t>(p.I);
    c.Y[i] = p.Y;
    c.y[i] = p.y;
    c.G1[i] = p.mean[0];
    c.G2[i] = p.mean[1];
    c.G3[i] = p.mean[2];
    c.G4[i] = p.mean[3];
    c.W1[i] = p.weight[0];
    c.W2[i] = p.weight[1];
    c.W3[i] = p.weight[2];
    c.W4[i] = p.weight[3];
    c.tail_excess[i] = 1.0 / k.lLp;
    const double ll = k.ln_gamma0 - k.lV * rec.V - k.lC * rec.C + p.log_total;
    if (!std::isfinite(ll))
      fail(ErrorKind::kNumeric, kModule, "record " + std::to_string(i) + ": likelihood underflow");
    c.loglik_terms[i] = ll;
  });
  double total = 0.0;
  for (double v : c.loglik_terms) total += v;
  c.loglik = total;
  return c;
}

Theta mstep(const std::vector<FeatureRecord>& records, const EStepCache& c, PieceMass mass) {
  const std::size_t M = records.size();
  if (c.R.size() != M) fail(ErrorKind::kInvalidArgument, kModule, "E-step cache does not match records");
  enum Sum { kOne, kV, kC, kNumS, kDenS, kNumSp, kDenSp, kNumN, kDenN, kNumNp, kDenNp, kNumL, kDenL, kDenLp, kCount };
  std::vector<std::vector<double>> col(kCount, std::vector<double>(M));
  for (std::size_t i = 0; i < M; ++i) {
    const FeatureRecord& r = records[i];
    const double S = r.S, N = r.N;
    double a, b, cc, d;
    if (mass == PieceMass::kPosterior) {
      a = c.W1[i];
      b = c.W2[i];
      cc = c.W3[i];
      d = c.W4[i];
    } else {
      a = 1.0;
      b = 1.0;
      cc = S > N ? 1.0 : 0.0;
      d = N > S ? 1.0 : 0.0;
    }
    const double G2 = c.G2[i], G3 = c.G3[i], G4 = c.G4[i];
    col[kOne][i] = 1.0;
    col[kV][i] = r.V;
    col[kC][i] = r.C;
    col[kNumS][i] = a + d;
    col[kDenS][i] = (a + d) * S + b * G2 + cc * G3;
    col[kNumSp][i] = b + cc;
    col[kDenSp][i] = b * (S - G2) + cc * (S - G3);
    col[kNumN][i] = a + cc;
    col[kDenN][i] = (a + cc) * N + b * G2 + d * G4;
    col[kNumNp][i] = b + d;
    col[kDenNp][i] = b * (N - G2) + d * (N - G4);
    col[kNumL][i] = b + cc + d;
    col[kDenL][i] = a * (S + N) + b * G2 + cc * (G3 + N) + d * (G4 + S);
    // Gamma^1 - (S+N) + I N + (1-I) S collapses to Gamma^1 - Y.
    col[kDenLp][i] = c.tail_excess[i];
  }
  double sums[kCount][2];
  for (int k = 0; k < kCount; ++k) simd::labeled_sums(col[k].data(), c.R.data(), M, sums[k]);

  Theta t;
  const double n0 = sums[kOne][0], n1 = sums[kOne][1];
  if (n0 == 0 || n1 == 0) fail(ErrorKind::kDegenerateClass, kModule, "a class has no records");
  t.p[1] = n1 / (n0 + n1);
  t.p[0] = 1.0 - t.p[1];
  for (int r = 0; r < 2; ++r) {
    const double n = sums[kOne][r];
    t.lamV[r] = positive_ratio(n, sums[kV][r], "lamV", r);
    t.lamC[r] = positive_ratio(n, sums[kC][r], "lamC", r);
    t.lamS[r] = rate_or_keep(sums[kNumS][r], sums[kDenS][r], c.theta.lamS[r]);
    t.lamSp[r] = rate_or_keep(sums[kNumSp][r], sums[kDenSp][r], c.theta.lamSp[r]);
    t.lamN[r] = rate_or_keep(sums[kNumN][r], sums[kDenN][r], c.theta.lamN[r]);
    t.lamNp[r] = rate_or_keep(sums[kNumNp][r], sums[kDenNp][r], c.theta.lamNp[r]);
    t.lamL[r] = rate_or_keep(sums[kNumL][r], sums[kDenL][r], c.theta.lamL[r]);
    t.lamLp[r] = positive_ratio(n, sums[kDenLp][r], "lamLp", r);
  }
  return t;
}

double loglik(const std::vector<FeatureRecord>& records, const Theta& theta, unsigned threads) {
  check_records(records);
  theta.validate();
  std::vector<double> terms(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i, unsigned) {
    const double v = latent::log_int(records[i], theta, records[i].R);
    if (!std::isfinite(v))
      fail(ErrorKind::kNumeric, kModule, "record " + std::to_string(i) + ": likelihood underflow");
    terms[i] = v;
  });
  double total = 0.0;
  for (double v : terms) total += v;
  return total;
}

RunTrace run_em(const std::vector<FeatureRecord>& records, Theta start, const EmConfig& cfg) {
  RunTrace run;
  run.theta = start;
  EStepCache cache = estep(records, start, cfg.threads);
  run.trace.push_back(cache.loglik);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const Theta next = mstep(records, cache, cfg.piece_mass);
    cache = estep(records, next, cfg.threads);
    run.theta = next;
    run.iterations = it;
    run.trace.push_back(cache.loglik);
    if (std::fabs(run.trace[it] - run.trace[it - 1]) <= cfg.epsilon) {
      run.converged = true;
      break;
    }
  }
  return run;
}

FitResult fit(const std::vector<FeatureRecord>& records, const EmConfig& cfg) {
  validate(cfg);
  check_records(records);
  bool has[2] = {false, false};
  for (const auto& r : records) has[r.R] = true;
  if (!has[0] || !has[1]) fail(ErrorKind::kLearning, kModule, "training data must contain both classes");

  FitResult out;
  out.runs.resize(static_cast<std::size_t>(cfg.restarts));
  for (int k = 0; k < cfg.restarts; ++k) {
    RunTrace& run = out.runs[static_cast<std::size_t>(k)];
    try {
      CounterRng rng(cfg.seed, static_cast<std::uint64_t>(k));
      run = run_em(records, init_theta(records, cfg, rng), cfg);
    } catch (const Error& e) {
      run.error = e.what();
    }
  }
  int best = -1;
  std::string causes;
  for (int k = 0; k < cfg.restarts; ++k) {
    const RunTrace& run = out.runs[static_cast<std::size_t>(k)];
    if (!run.error.empty()) {
      causes += " [restart " + std::to_string(k) + "] " + run.error;
      continue;
    }
    if (best < 0 || run.trace.back() > out.runs[static_cast<std::size_t>(best)].trace.back()) best = k;
  }
  if (best < 0) fail(ErrorKind::kLearning, kModule, "all restarts failed:" + causes);
  out.best_restart = best;
  out.theta = out.runs[static_cast<std::size_t>(best)].theta;
  out.loglik = out.runs[static_cast<std::size_t>(best)].trace.back();
  return out;
}

}  // namespace linkrec
