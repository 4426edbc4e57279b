#include "linkrec/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linkrec/error.hpp"
#include "linkrec/parallel.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "features";

/// Truncated BFS, optionally treating (ea, eb) as an extra edge. Returns
/// sum_x alpha^x |N_x| accumulated layer by layer.
double impact_bfs(const GraphSnapshot& view, Node src, const std::vector<double>& apow, int X,
                  std::vector<std::uint8_t>& seen, Node ea, Node eb, bool extra) {
  std::vector<Node> frontier{src}, next, visited{src};
  seen[src] = 1;
  double impact = 0.0;
  for (int x = 1; x <= X && !frontier.empty(); ++x) {
    next.clear();
    auto visit = [&](Node w) {
      if (!seen[w]) {
        seen[w] = 1;
        next.push_back(w);
        visited.push_back(w);
      }
    };
    for (Node u : frontier) {
      for (const Node* p = view.begin(u); p != view.end(u); ++p) visit(*p);
      if (extra) {
        if (u == ea) visit(eb);
        if (u == eb) visit(ea);
      }
    }
    impact += apow[x] * static_cast<double>(next.size());
    frontier.swap(next);
  }
  for (Node w : visited) seen[w] = 0;
  return impact;
}

}  // namespace

void validate(const ValueConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    fail(ErrorKind::kInvalidArgument, kModule, "alpha must be in (0,1)");
  if (cfg.locality < 1 || cfg.locality > 250)
    fail(ErrorKind::kInvalidArgument, kModule, "locality X must be in [1, 250]");
  for (const auto& [id, o] : cfg.overrides) {
    if (!(o.m > 0.0)) fail(ErrorKind::kInvalidArgument, kModule, "m must be > 0 for user " + std::to_string(id));
    if (!(o.intrinsic >= 0.0))
      fail(ErrorKind::kInvalidArgument, kModule, "intrinsic value must be >= 0 for user " + std::to_string(id));
  }
}

void validate(const CostConfig& cfg) {
  if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho))
    fail(ErrorKind::kInvalidArgument, kModule, "rho must be > 0");
}

UserWeights resolve_weights(const TemporalGraph& graph, const ValueConfig& cfg) {
  UserWeights w;
  w.m.reserve(graph.num_users());
  w.intrinsic.reserve(graph.num_users());
  for (const UserInfo& u : graph.users()) {
    auto it = cfg.overrides.find(u.id);
    w.m.push_back(it == cfg.overrides.end() ? u.m : it->second.m);
    w.intrinsic.push_back(it == cfg.overrides.end() ? u.intrinsic : it->second.intrinsic);
  }
  return w;
}

std::vector<double> alpha_powers(double alpha, int X) {
  std::vector<double> p(static_cast<std::size_t>(X) + 1, 1.0);
  for (int x = 1; x <= X; ++x) p[x] = p[x - 1] * alpha;
  return p;
}

double network_impact(const GraphSnapshot& view, UserId user, const ValueConfig& cfg) {
  validate(cfg);
  const Node n = view.require(user);
  const auto apow = alpha_powers(cfg.alpha, cfg.locality);
  const NeighborhoodCounts c = neighborhood_counts_node(view, n, cfg.locality);
  double impact = 0.0;
  for (int x = 1; x <= cfg.locality; ++x) impact += apow[x] * static_cast<double>(c[x - 1]);
  return impact;
}

double user_value(const GraphSnapshot& view, UserId user, const ValueConfig& cfg) {
  const double impact = network_impact(view, user, cfg);
  const Node n = view.require(user);
  const UserInfo& info = view.graph().users()[n];
  auto it = cfg.overrides.find(user);
  const double m = it == cfg.overrides.end() ? info.m : it->second.m;
  const double vi = it == cfg.overrides.end() ? info.intrinsic : it->second.intrinsic;
  return vi + m * impact;
}

double total_value(const GraphSnapshot& view, const ValueConfig& cfg) {
  validate(cfg);
  const auto w = resolve_weights(view.graph(), cfg);
  const auto apow = alpha_powers(cfg.alpha, cfg.locality);
  std::vector<std::uint8_t> seen(view.size(), 0);
  double tv = 0.0;
  for (Node u = 0; u < view.size(); ++u) {
    if (!view.present(u)) continue;
    tv += w.intrinsic[u] + w.m[u] * impact_bfs(view, u, apow, cfg.locality, seen, 0, 0, false);
  }
  return tv;
}

double link_value(const GraphSnapshot& view, UserId j, UserId h, const ValueConfig& cfg) {
  validate(cfg);
  if (j == h) fail(ErrorKind::kInvalidArgument, kModule, "pair endpoints must differ");
  Node a = view.require(j);
  Node b = view.require(h);
  if (view.adjacent(a, b))
    fail(ErrorKind::kInvalidArgument, kModule,
         "pair (" + std::to_string(j) + "," + std::to_string(h) + ") is already linked");
  if (a > b) std::swap(a, b);
  const int X = cfg.locality;
  const auto w = resolve_weights(view.graph(), cfg);
  const auto apow = alpha_powers(cfg.alpha, X);
  // Only users within X-1 hops of an endpoint can gain a neighbor within X.
  std::vector<std::uint8_t> seen(view.size(), 0);
  std::vector<Node> affected;
  for (Node src : {a, b}) {
    std::vector<Node> frontier{src}, next;
    std::vector<std::uint8_t> local(view.size(), 0);
    local[src] = 1;
    affected.push_back(src);
    for (int x = 1; x <= X - 1 && !frontier.empty(); ++x) {
      next.clear();
      for (Node u : frontier)
        for (const Node* p = view.begin(u); p != view.end(u); ++p)
          if (!local[*p]) {
            local[*p] = 1;
            next.push_back(*p);
            affected.push_back(*p);
          }
      frontier.swap(next);
    }
  }
  std::sort(affected.begin(), affected.end());
  affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
  double delta = 0.0;
  for (Node u : affected) {
    const double after = impact_bfs(view, u, apow, X, seen, a, b, true);
    const double before = impact_bfs(view, u, apow, X, seen, a, b, false);
    delta += w.m[u] * (after - before);
  }
  return delta;
}

LinkValueEngine::LinkValueEngine(const GraphSnapshot& view, const ValueConfig& cfg, unsigned threads)
    : view_(&view),
      X_(cfg.locality),
      apow_(alpha_powers(cfg.alpha, cfg.locality)),
      weights_(resolve_weights(view.graph(), cfg)),
      dist_((validate(cfg), view), cfg.locality, threads) {}

double LinkValueEngine::value(Node j, Node h) const {
  const int X = X_;
  const DistanceTable& d = dist_;
  // new d(u,v) = min(d(u,v), d(u,j)+1+d(h,v), d(u,h)+1+d(j,v)). When
  // d(u,j) <= d(u,h) the route through h then j is never shorter than the
  // old distance (triangle inequality), so each u only needs the route that
  // leaves from its nearer endpoint. Since d(u,v) <= d(u,far) + d(far,v),
  // that route only helps when d(u,far) >= d(u,near) + 2.
  //
  // Work is split into blocks (u at distance du from near, v at distance r
  // from far), new distance nd = du + 1 + r. The table is symmetric, so the
  // smaller side of a block picks the rows and the inner loop reads one row
  // in index order.
  std::vector<Node> us;
  auto sweep = [&](Node near, Node far) {
    double total = 0.0;
    const auto& bn = d.ball(near);
    const auto& bf = d.ball(far);
    const std::uint8_t* far_row = d.row(far);
    for (int du = 0; du <= X - 1; ++du) {
      us.clear();
      for (std::size_t k = du == 0 ? 0 : d.ball_end(near, du - 1), e = d.ball_end(near, du); k < e; ++k)
        if (far_row[bn[k]] > du + 1) us.push_back(bn[k]);
      if (us.empty()) continue;
      for (int r = 0; du + 1 + r <= X; ++r) {
        const int nd = du + 1 + r;
        const double a_nd = apow_[nd];
        const Node* vs = bf.data() + (r == 0 ? 0 : d.ball_end(far, r - 1));
        const std::size_t nv = bf.data() + d.ball_end(far, r) - vs;
        auto gain = [&](int od) { return nd < od ? a_nd - (od <= X ? apow_[od] : 0.0) : 0.0; };
        if (us.size() <= nv) {
          for (Node u : us) {
            const std::uint8_t* row = d.row(u);
            double g = 0.0;
            for (std::size_t i = 0; i < nv; ++i) g += gain(row[vs[i]]);
            total += weights_.m[u] * g;
          }
        } else {
          for (std::size_t i = 0; i < nv; ++i) {
            const std::uint8_t* row = d.row(vs[i]);
            for (Node u : us) total += weights_.m[u] * gain(row[u]);
          }
        }
      }
    }
    return total;
  };
  return sweep(j, h) + sweep(h, j);
}

EdgeValueCache::EdgeValueCache(const TemporalGraph& graph, const ValueConfig& cfg, unsigned threads)
    : graph_(&graph) {
  validate(cfg);
  const auto& edges = graph.edges();
  const auto& en = graph.edge_nodes();
  values_.assign(edges.size(), 0.0);
  std::size_t start = 0;
  while (start < edges.size()) {
    const int month = edges[start].month;
    std::size_t stop = start;
    while (stop < edges.size() && edges[stop].month == month) ++stop;
    const GraphSnapshot before = pre_view(graph, month);
    const LinkValueEngine engine(before, cfg, threads);
    parallel_for(stop - start, threads, [&](std::size_t k, unsigned) {
      values_[start + k] = engine.value(en[start + k].first, en[start + k].second);
    });
    start = stop;
  }
}

EdgeValueCache::MonthTotals EdgeValueCache::totals(int month) const {
  MonthTotals t;
  t.sum.assign(graph_->num_users(), 0.0);
  t.count.assign(graph_->num_users(), 0);
  double global = 0.0;
  std::size_t n = 0;
  const auto& edges = graph_->edges();
  const auto& en = graph_->edge_nodes();
  for (std::size_t k = 0; k < edges.size() && edges[k].month <= month; ++k) {
    t.sum[en[k].first] += values_[k];
    t.sum[en[k].second] += values_[k];
    ++t.count[en[k].first];
    ++t.count[en[k].second];
    global += values_[k];
    ++n;
  }
  t.any = n > 0;
  t.global_mean = n > 0 ? global / static_cast<double>(n) : 0.0;
  return t;
}

namespace {
double cost_from_totals(const EdgeValueCache::MonthTotals& t, Node j, Node h, double rho, int month) {
  const std::uint32_t cnt = t.count[j] + t.count[h];
  if (cnt > 0) return rho * ((t.sum[j] + t.sum[h]) / static_cast<double>(cnt));
  if (!t.any)
    fail(ErrorKind::kConfiguration, kModule,
         "no established links by month " + std::to_string(month) + "; cost fallback undefined");
  return rho * t.global_mean;
}
}  // namespace

double EdgeValueCache::cost(Node j, Node h, int month, double rho) const {
  return cost_from_totals(totals(month), j, h, rho, month);
}

double link_cost(const TemporalGraph& graph, UserId j, UserId h, int month, const CostConfig& cost_cfg,
                 const ValueConfig& value_cfg) {
  validate(cost_cfg);
  const GraphSnapshot view = snapshot(graph, month);
  const Node a = view.require(j);
  const Node b = view.require(h);
  const EdgeValueCache cache(graph, value_cfg);
  return cache.cost(a, b, month, cost_cfg.rho);
}

double utility(double V, double C, bool established) { return established ? V : -C; }

MonthFeatures compute_month_features(const TemporalGraph& graph, const ProfileStore& profiles, int month,
                                     const ValueConfig& value_cfg, const KatzConfig& katz_cfg,
                                     const EdgeValueCache& costs, unsigned threads) {
  validate(katz_cfg);
  const unsigned workers = threads == 0 ? default_threads() : threads;
  MonthFeatures f;
  f.month = month;
  const GraphSnapshot view = snapshot(graph, month);
  f.pairs = two_hop_candidates_nodes(view);
  const std::size_t n = f.pairs.size();
  f.V.assign(n, 0.0);
  f.C1.assign(n, 0.0);
  f.S.assign(n, 0.0);
  f.N.assign(n, 0.0);
  if (n == 0) return f;

  const LinkValueEngine engine(view, value_cfg, workers);
  const auto totals = costs.totals(month);

  // Candidates are grouped by their first endpoint; one Katz propagation per group.
  std::vector<std::size_t> group_start;
  for (std::size_t k = 0; k < n; ++k)
    if (k == 0 || f.pairs[k].j != f.pairs[k - 1].j) group_start.push_back(k);
  group_start.push_back(n);

  std::vector<std::unique_ptr<KatzWalker>> walkers;
  for (unsigned w = 0; w < workers; ++w) walkers.push_back(std::make_unique<KatzWalker>(view, katz_cfg));
  parallel_for(group_start.size() - 1, workers, [&](std::size_t g, unsigned w) {
    const std::size_t b = group_start[g], e = group_start[g + 1];
    const Node j = f.pairs[b].j;
    std::vector<Node> targets;
    for (std::size_t k = b; k < e; ++k) targets.push_back(f.pairs[k].h);
    const auto katz_scores = walkers[w]->from(j, targets);
    const auto& tj = profiles.terms(graph.id_of(j));
    for (std::size_t k = b; k < e; ++k) {
      const Node h = f.pairs[k].h;
      f.V[k] = engine.value(j, h);
      f.C1[k] = cost_from_totals(totals, j, h, 1.0, month);
      f.S[k] = katz_scores[k - b];
      f.N[k] = jaccard_sorted(tj, profiles.terms(graph.id_of(h)));
    }
  });
  return f;
}

std::vector<FeatureRecord> to_records(const TemporalGraph& graph, const MonthFeatures& f, double rho) {
  std::vector<FeatureRecord> out;
  out.reserve(f.pairs.size());
  for (std::size_t k = 0; k < f.pairs.size(); ++k) {
    FeatureRecord r;
    r.j = graph.id_of(f.pairs[k].j);
    r.h = graph.id_of(f.pairs[k].h);
    r.V = floor_feature(f.V[k]);
    r.C = floor_feature(rho * f.C1[k]);
    r.S = floor_feature(f.S[k]);
    r.N = floor_feature(f.N[k]);
    out.push_back(r);
  }
  return out;
}

}  // namespace linkrec
