#include "linkrec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "linkrec/error.hpp"
#include "linkrec/rng.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "data_io";

/// Weighted sampling of k items without replacement (exponential-key method).
/// Deterministic for a given rng state; ties resolve toward lower indices.
std::vector<std::size_t> weighted_sample(const std::vector<double>& w, std::size_t k, CounterRng& rng) {
  using Item = std::pair<double, std::size_t>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double u = rng.uniform_open_low();
    if (!(w[i] > 0.0)) continue;
    const double key = std::log(u) / w[i];
    if (heap.size() < k) {
      heap.push({key, i});
    } else if (key > heap.top().first) {
      heap.pop();
      heap.push({key, i});
    }
  }
  std::vector<std::size_t> out;
  while (!heap.empty()) {
    out.push_back(heap.top().second);
    heap.pop();
  }
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

void validate(const SynthConfig& cfg) {
  auto bad = [](const char* what) { fail(ErrorKind::kInvalidArgument, kModule, what); };
  if (cfg.arrivals.empty()) {
    if (cfg.months < 2) bad("months must be >= 2");
    if (cfg.total_users < cfg.months) bad("need at least one user per month");
  } else {
    for (int a : cfg.arrivals)
      if (a < 1) bad("every month needs at least one arrival");
  }
  if (cfg.links_per_user < 1) bad("links per user must be >= 1");
  if (!(cfg.closure_rate >= 0.0)) bad("closure rate must be >= 0");
  if (!(cfg.closure_exponent >= 0.0)) bad("closure exponent must be >= 0");
  if (!(cfg.attachment_exponent >= 0.0)) bad("attachment exponent must be >= 0");
  if (!(cfg.homophily >= 0.0)) bad("homophily weight must be >= 0");
  if (cfg.vocabulary < 1 || cfg.communities < 1 || cfg.communities > cfg.vocabulary) bad("invalid vocabulary/communities");
  if (cfg.terms_per_user < 1 || cfg.terms_per_user > cfg.vocabulary) bad("terms per user must be in [1, vocabulary]");
  if (!(cfg.community_affinity >= 0.0 && cfg.community_affinity <= 1.0)) bad("community affinity must be in [0,1]");
  if (!(cfg.term_skew >= 0.0)) bad("term skew must be >= 0");
}

std::pair<TemporalGraph, ProfileStore> gen_network(const SynthConfig& cfg) {
  validate(cfg);
  std::vector<int> arrivals = cfg.arrivals;
  if (arrivals.empty()) {
    for (int m = 0; m < cfg.months; ++m)
      arrivals.push_back(cfg.total_users / cfg.months + (m < cfg.total_users % cfg.months ? 1 : 0));
  }
  CounterRng profile_rng(cfg.seed, 1), link_rng(cfg.seed, 2);

  std::vector<UserInfo> users;
  std::vector<std::vector<std::int64_t>> terms;
  std::vector<std::vector<Node>> adj;
  std::vector<Edge> edges;
  const int slice = cfg.vocabulary / cfg.communities;
  std::vector<double> popularity(static_cast<std::size_t>(cfg.vocabulary));
  for (int r = 0; r < cfg.vocabulary; ++r) popularity[r] = std::pow(r + 1.0, -cfg.term_skew);
  std::partial_sum(popularity.begin(), popularity.end(), popularity.begin());
  auto popular_term = [&]() {
    const double u = profile_rng.uniform() * popularity.back();
    return static_cast<std::int64_t>(std::upper_bound(popularity.begin(), popularity.end(), u) - popularity.begin());
  };

  auto draw_terms = [&]() {
    const int community = static_cast<int>(profile_rng.below(static_cast<std::uint64_t>(cfg.communities)));
    std::vector<std::int64_t> t;
    while (static_cast<int>(t.size()) < cfg.terms_per_user) {
      std::int64_t term;
      if (profile_rng.uniform() < cfg.community_affinity)
        term = community * slice + static_cast<std::int64_t>(profile_rng.below(static_cast<std::uint64_t>(slice)));
      else
        term = std::min<std::int64_t>(popular_term(), cfg.vocabulary - 1);
      if (std::find(t.begin(), t.end(), term) == t.end()) t.push_back(term);
    }
    std::sort(t.begin(), t.end());
    return t;
  };
  auto link = [&](Node a, Node b, int month) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    edges.push_back({static_cast<UserId>(std::min(a, b)), static_cast<UserId>(std::max(a, b)), month});
  };

  std::vector<Node> mark;
  for (int m = 1; m <= static_cast<int>(arrivals.size()); ++m) {
    // Triadic closure among users already present.
    const std::size_t n = users.size();
    if (n > 0 && cfg.closure_rate > 0.0 && !edges.empty()) {
      mark.assign(n, static_cast<Node>(-1));
      std::vector<std::pair<Node, Node>> cands;
      std::vector<double> weight;
      std::vector<std::uint32_t> cn(n, 0);
      std::vector<Node> touched;
      for (Node j = 0; j < n; ++j) {
        touched.clear();
        for (Node z : adj[j])
          for (Node h : adj[z])
            if (h > j) {
              if (cn[h] == 0) touched.push_back(h);
              ++cn[h];
            }
        for (Node z : adj[j]) cn[z] = 0;  // adjacent pairs are not candidates
        std::sort(touched.begin(), touched.end());
        for (Node h : touched) {
          if (cn[h] == 0) continue;
          cands.emplace_back(j, h);
          weight.push_back(std::pow(static_cast<double>(cn[h]), cfg.closure_exponent) * (1.0 + cfg.homophily * jaccard_sorted(terms[j], terms[h])));
        }
        for (Node h : touched) cn[h] = 0;
      }
      const auto k = static_cast<std::size_t>(std::llround(cfg.closure_rate * static_cast<double>(edges.size())));
      for (std::size_t i : weighted_sample(weight, std::min(k, cands.size()), link_rng))
        link(cands[i].first, cands[i].second, m);
    }

    for (int a = 0; a < arrivals[static_cast<std::size_t>(m - 1)]; ++a) {
      const Node me = static_cast<Node>(users.size());
      users.push_back({static_cast<UserId>(me), m, 1.0, 0.0});
      terms.push_back(draw_terms());
      adj.emplace_back();
      if (me == 0) continue;
      std::vector<double> weight(me);
      for (Node v = 0; v < me; ++v)
        weight[v] = std::pow(static_cast<double>(adj[v].size()) + 1.0, cfg.attachment_exponent) *
                    (1.0 + cfg.homophily * jaccard_sorted(terms[me], terms[v]));
      const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(cfg.links_per_user), me);
      for (std::size_t v : weighted_sample(weight, k, link_rng)) link(me, static_cast<Node>(v), m);
    }
  }

  ProfileStore profiles;
  for (std::size_t i = 0; i < users.size(); ++i) profiles.set(users[i].id, terms[i]);
  return {TemporalGraph(std::move(users), std::move(edges)), std::move(profiles)};
}

}  // namespace linkrec
