#include "linkrec/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

#include "linkrec/baselines.hpp"
#include "linkrec/error.hpp"
#include "linkrec/inference.hpp"
#include "linkrec/ranking.hpp"
#include "linkrec/training.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "evaluation";

std::vector<UserPair> pairs_of(const RecommendationList& list) {
  std::vector<UserPair> out;
  for (const auto& r : list.items) out.push_back({r.j, r.h});
  return out;
}
}  // namespace

Outcomes::Outcomes(std::vector<UserPair> pairs, std::vector<double> V, std::vector<double> C,
                   std::vector<std::uint8_t> established) {
  const std::size_t n = pairs.size();
  if (V.size() != n || C.size() != n || established.size() != n)
    fail(ErrorKind::kInvalidArgument, kModule, "outcome arrays differ in length");
  for (auto& p : pairs)
    if (p.j > p.h) std::swap(p.j, p.h);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs[a] < pairs[b]; });
  for (std::size_t i : order) {
    pairs_.push_back(pairs[i]);
    V_.push_back(V[i]);
    C_.push_back(C[i]);
    I_.push_back(established[i]);
  }
}

double Outcomes::utility(std::size_t i) const { return linkrec::utility(V_[i], C_[i], I_[i] != 0); }

double Outcomes::utility_of(const UserPair& p) const {
  const UserPair q{std::min(p.j, p.h), std::max(p.j, p.h)};
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), q);
  if (it == pairs_.end() || *it != q)
    fail(ErrorKind::kNotFound, kModule, "pair (" + std::to_string(p.j) + "," + std::to_string(p.h) + ") is not a candidate");
  return utility(static_cast<std::size_t>(it - pairs_.begin()));
}

std::vector<UserPair> true_topk(const Outcomes& outcomes, std::size_t K) {
  std::vector<double> u(outcomes.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = outcomes.utility(i);
  std::vector<UserPair> out;
  for (std::size_t i : top_k_indices(u, outcomes.pairs(), K)) out.push_back(outcomes.pairs()[i]);
  return out;
}

double precision_at_k(const std::vector<UserPair>& recommended, const std::vector<UserPair>& truth, std::size_t K) {
  if (K == 0) fail(ErrorKind::kInvalidArgument, kModule, "K must be >= 1");
  std::vector<UserPair> a = recommended, b = truth;
  for (auto* v : {&a, &b}) {
    for (auto& p : *v)
      if (p.j > p.h) std::swap(p.j, p.h);
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  std::vector<UserPair> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return static_cast<double>(both.size()) / static_cast<double>(K);
}

double average_utility(const std::vector<UserPair>& recommended, const Outcomes& outcomes) {
  if (recommended.empty()) fail(ErrorKind::kEmptySet, kModule, "average utility of an empty recommendation");
  double s = 0.0;
  for (const auto& p : recommended) s += outcomes.utility_of(p);
  return s / static_cast<double>(recommended.size());
}

std::string method_name(Method m) {
  switch (m) {
    case Method::kOurs: return "ours";
    case Method::kNB: return "NB";
    case Method::kCN: return "CN";
    case Method::kAA: return "AA";
    case Method::kKatz: return "Katz";
    case Method::kJaccard: return "Jaccard";
    case Method::kTruth: return "truth";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  std::string l;
  for (char c : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (l == "ours") return Method::kOurs;
  if (l == "nb") return Method::kNB;
  if (l == "cn") return Method::kCN;
  if (l == "aa") return Method::kAA;
  if (l == "katz") return Method::kKatz;
  if (l == "jaccard") return Method::kJaccard;
  if (l == "truth") return Method::kTruth;
  fail(ErrorKind::kInvalidArgument, kModule, "unknown method '" + s + "'");
}

std::vector<Method> default_methods() {
  return {Method::kOurs, Method::kNB, Method::kCN, Method::kAA, Method::kKatz, Method::kJaccard};
}

void append_summary(std::vector<MetricsRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const MetricsRow*>> by;
  for (const auto& r : rows) {
    if (r.month == "mean" || r.month == "std") continue;
    if (!by.count(r.method)) order.push_back(r.method);
    by[r.method].push_back(&r);
  }
  std::vector<MetricsRow> extra;
  for (const auto& m : order) {
    const auto& v = by[m];
    const double n = static_cast<double>(v.size());
    double mp = 0, mu = 0;
    for (const auto* r : v) {
      mp += r->precision;
      mu += r->avg_utility;
    }
    mp /= n;
    mu /= n;
    double vp = 0, vu = 0;
    for (const auto* r : v) {
      vp += (r->precision - mp) * (r->precision - mp);
      vu += (r->avg_utility - mu) * (r->avg_utility - mu);
    }
    extra.push_back({m, "mean", mp, mu});
    extra.push_back({m, "std", std::sqrt(vp / n), std::sqrt(vu / n)});
  }
  rows.insert(rows.end(), extra.begin(), extra.end());
}

std::vector<CellResult> run_experiment(const TemporalGraph& graph, const ProfileStore& profiles,
                                       const ExperimentConfig& cfg, const ProgressFn& progress) {
  validate(cfg.value);
  validate(cfg.katz);
  validate(cfg.em);
  if (cfg.methods.empty()) fail(ErrorKind::kInvalidArgument, kModule, "no methods selected");
  if (cfg.rhos.empty() || cfg.k_fractions.empty()) fail(ErrorKind::kInvalidArgument, kModule, "empty parameter grid");
  for (double rho : cfg.rhos) validate(CostConfig{rho});
  for (double k : cfg.k_fractions)
    if (!(k > 0.0 && k <= 1.0)) fail(ErrorKind::kInvalidArgument, kModule, "k fraction must be in (0,1]");

  const int T = graph.max_month();
  const int first = cfg.first_month == 0 ? 2 : cfg.first_month;
  const int last = cfg.last_month == 0 ? T - 1 : cfg.last_month;
  if (first < 2 || last < first || last + 1 > T)
    fail(ErrorKind::kInvalidArgument, kModule,
         "month range [" + std::to_string(first) + "," + std::to_string(last) + "] needs 2 <= t and t+1 <= " +
             std::to_string(T));

  auto say = [&](const std::string& s) {
    if (progress) progress(s);
  };
  say("valuing historical links");
  const EdgeValueCache costs(graph, cfg.value, cfg.threads);
  std::map<int, MonthFeatures> feats;
  for (int m = first - 1; m <= last; ++m) {
    say("features for month " + std::to_string(m));
    feats.emplace(m, compute_month_features(graph, profiles, m, cfg.value, cfg.katz, costs, cfg.threads));
  }

  // Proximity scores do not depend on the grid cell.
  std::map<int, std::map<Method, std::vector<double>>> prox;
  for (int t = first; t <= last; ++t) {
    const MonthFeatures& f = feats.at(t);
    const GraphSnapshot view = snapshot(graph, t);
    auto& slot = prox[t];
    for (Method m : cfg.methods) {
      std::vector<double> s(f.pairs.size());
      for (std::size_t k = 0; k < f.pairs.size(); ++k) {
        switch (m) {
          case Method::kCN: s[k] = static_cast<double>(common_neighbors_node(view, f.pairs[k].j, f.pairs[k].h)); break;
          case Method::kAA: s[k] = adamic_adar_node(view, f.pairs[k].j, f.pairs[k].h); break;
          case Method::kKatz: s[k] = f.S[k]; break;
          case Method::kJaccard: s[k] = f.N[k]; break;
          default: break;
        }
      }
      slot[m] = std::move(s);
    }
  }

  std::vector<CellResult> cells;
  for (double rho : cfg.rhos) {
    for (double kf : cfg.k_fractions) {
      CellResult cell;
      cell.rho = rho;
      cell.k_fraction = kf;
      std::vector<MetricsRow> month_rows;
      for (int t = first; t <= last; ++t) {
        say("rho " + std::to_string(rho) + " k " + std::to_string(kf) + " month " + std::to_string(t));
        const MonthFeatures& f = feats.at(t);
        if (f.pairs.empty()) fail(ErrorKind::kEmptySet, kModule, "no candidates at month " + std::to_string(t));
        const std::vector<FeatureRecord> cands = to_records(graph, f, rho);
        std::vector<UserPair> pairs;
        std::vector<double> V, C;
        for (std::size_t k = 0; k < cands.size(); ++k) {
          pairs.push_back({cands[k].j, cands[k].h});
          V.push_back(f.V[k]);
          C.push_back(rho * f.C1[k]);
        }
        const Outcomes outcomes(pairs, V, C, established_at(graph, f.pairs, t + 1));
        const std::size_t K = k_from_fraction(kf, cands.size());
        const std::vector<UserPair> truth = true_topk(outcomes, K);

        std::vector<FeatureRecord> train;
        auto training = [&]() -> const std::vector<FeatureRecord>& {
          if (train.empty()) train = build_training_from(graph, feats.at(t - 1), t, rho, kf);
          return train;
        };
        for (Method m : cfg.methods) {
          std::vector<UserPair> rec;
          switch (m) {
            case Method::kOurs: {
              const FitResult fr = fit(training(), cfg.em);
              rec = pairs_of(recommend_topk(cands, fr.theta, K, cfg.threads));
              break;
            }
            case Method::kNB:
              rec = pairs_of(nb_recommend(cands, nb_fit(training()), K));
              break;
            case Method::kTruth:
              rec = truth;
              break;
            default:
              rec = pairs_of(rank_by_scores(pairs, prox.at(t).at(m), K));
              break;
          }
          month_rows.push_back(
              {method_name(m), std::to_string(t + 1), precision_at_k(rec, truth, K), average_utility(rec, outcomes)});
        }
      }
      // Group rows by method, months ascending.
      for (Method m : cfg.methods)
        for (const auto& r : month_rows)
          if (r.method == method_name(m)) cell.rows.push_back(r);
      append_summary(cell.rows);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

}  // namespace linkrec
