#include <doctest.h>

#include <cmath>
#include <map>

#include "../support/brute.hpp"
#include "helpers.hpp"
#include "linkrec/features.hpp"

using namespace linkrec;

namespace {
ValueConfig vcfg(double alpha, int X) {
  ValueConfig c;
  c.alpha = alpha;
  c.locality = X;
  return c;
}
}  // namespace

TEST_CASE("network impact and user value examples") {
  const auto g = th::make_graph(4, {{0, 1}, {1, 2}});
  const auto s = snapshot(g, 1);
  const auto cfg = vcfg(0.5, 2);
  CHECK(network_impact(s, 1, cfg) == 1.0);
  CHECK(network_impact(s, 0, cfg) == 0.75);
  CHECK(network_impact(s, 3, cfg) == 0.0);
  CHECK(th::error_kind([&] { network_impact(s, 9, cfg); }) == ErrorKind::kNotFound);

  auto with = cfg;
  with.overrides[0] = {1.0, 2.0};
  with.overrides[1] = {0.5, 0.0};
  with.overrides[3] = {1.0, 3.0};
  CHECK(user_value(s, 0, with) == 2.75);
  CHECK(user_value(s, 1, with) == 0.5);
  CHECK(user_value(s, 3, with) == 3.0);
}

TEST_CASE("total value examples") {
  const auto s_graph = th::make_graph(3, {{0, 1}, {1, 2}});
  const auto s = snapshot(s_graph, 1);
  CHECK(total_value(s, vcfg(0.5, 2)) == 2.5);
  const TemporalGraph empty;
  CHECK(total_value(snapshot(empty, 1), vcfg(0.5, 2)) == 0.0);
}

TEST_CASE("link value examples") {
  const auto iso_graph = th::make_graph(2, {});
  const auto iso = snapshot(iso_graph, 1);
  CHECK(link_value(iso, 0, 1, vcfg(0.5, 4)) == 1.0);
  const auto path_graph = th::make_graph(3, {{0, 1}, {1, 2}});
  const auto path = snapshot(path_graph, 1);
  CHECK(link_value(path, 0, 2, vcfg(0.5, 2)) == 0.5);
  CHECK(th::error_kind([&] { link_value(path, 0, 1, vcfg(0.5, 2)); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("value config validation") {
  CHECK(th::error_kind([] { validate(vcfg(0.0, 2)); }) == ErrorKind::kInvalidArgument);
  CHECK(th::error_kind([] { validate(vcfg(1.0, 2)); }) == ErrorKind::kInvalidArgument);
  CHECK(th::error_kind([] { validate(vcfg(0.5, 0)); }) == ErrorKind::kInvalidArgument);
  auto c = vcfg(0.5, 2);
  c.overrides[1] = {0.0, 0.0};
  CHECK(th::error_kind([&] { validate(c); }) == ErrorKind::kInvalidArgument);
  CHECK(th::error_kind([] { validate(CostConfig{0.0}); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("utility") {
  CHECK(utility(2, 1, true) == 2);
  CHECK(utility(2, 1, false) == -1);
  CHECK(utility(0, 0, true) == 0);
  CHECK(utility(0, 0, false) == 0);
}

TEST_CASE("link value matches full recomputation and is positive") {
  CounterRng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const auto g = brute::random_graph(rng, n, 0.3);
    const auto cfg = vcfg(0.3 + 0.4 * rng.uniform(), 1 + static_cast<int>(rng.below(4)));
    for (int month = 1; month <= 4; ++month) {
      const auto s = snapshot(g, month);
      const LinkValueEngine engine(s, cfg);
      for (Node a = 0; a < s.size(); ++a)
        for (Node b = 0; b < s.size(); ++b) {
          if (a == b || !s.present(a) || !s.present(b) || s.adjacent(a, b)) continue;
          const double want = brute::link_value(s, a, b, cfg);
          const double single = link_value(s, g.id_of(a), g.id_of(b), cfg);
          const double bulk = engine.value(a, b);
          REQUIRE(std::fabs(single - want) <= 1e-12);
          REQUIRE(std::fabs(bulk - want) <= 1e-12);
          CHECK(single > 0.0);
          CHECK(single == link_value(s, g.id_of(b), g.id_of(a), cfg));
        }
    }
  }
}

TEST_CASE("cost averages values of both endpoints' links") {
  CounterRng rng(32);
  const auto cfg = vcfg(0.5, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = brute::random_graph(rng, 10, 0.25);
    if (g.num_edges() == 0) continue;
    // Historical values by full recomputation on the network each link joined.
    std::vector<double> hist;
    for (std::size_t k = 0; k < g.num_edges(); ++k) {
      const auto& e = g.edges()[k];
      const auto pv = pre_view(g, e.month);
      hist.push_back(brute::link_value(pv, g.index_of(e.u), g.index_of(e.v), cfg));
    }
    const EdgeValueCache cache(g, cfg);
    for (std::size_t k = 0; k < hist.size(); ++k) CHECK(std::fabs(cache.values()[k] - hist[k]) <= 1e-12);

    for (int month = 1; month <= 4; ++month) {
      double gsum = 0.0;
      int gcnt = 0;
      for (std::size_t k = 0; k < hist.size(); ++k)
        if (g.edges()[k].month <= month) gsum += hist[k], ++gcnt;
      const auto s = snapshot(g, month);
      for (Node a = 0; a < s.size(); ++a)
        for (Node b = a + 1; b < s.size(); ++b) {
          if (!s.present(a) || !s.present(b) || s.adjacent(a, b)) continue;
          double sum = 0.0;
          int cnt = 0;
          for (std::size_t k = 0; k < hist.size(); ++k) {
            const auto& e = g.edges()[k];
            if (e.month > month) continue;
            const UserId ia = g.id_of(a), ib = g.id_of(b);
            if (e.u == ia || e.v == ia || e.u == ib || e.v == ib) sum += hist[k], ++cnt;
          }
          if (cnt == 0 && gcnt == 0) {
            CHECK(th::error_kind([&] { cache.cost(a, b, month, 1.0); }) == ErrorKind::kConfiguration);
            continue;
          }
          const double want = cnt > 0 ? sum / cnt : gsum / gcnt;
          CHECK(cache.cost(a, b, month, 1.0) == doctest::Approx(want).epsilon(1e-12));
          CHECK(cache.cost(a, b, month, 0.5) == doctest::Approx(0.5 * want).epsilon(1e-12));
          CHECK(link_cost(g, g.id_of(a), g.id_of(b), month, CostConfig{2.0}, cfg) ==
                doctest::Approx(2 * want).epsilon(1e-12));
        }
    }
  }
}

TEST_CASE("cost example: union mean and fallback") {
  // Links 0-1 and 2-3 have value 1 each (isolated pairs joining), 0-4 joins a
  // pair and is worth more. Candidate (1, 2) averages 0-1 and 2-3; candidate
  // (5, 6) has no links and falls back to the global mean.
  const TemporalGraph g({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}},
                        {{0, 1, 1}, {2, 3, 1}, {0, 4, 2}});
  const auto cfg = vcfg(0.5, 2);
  const EdgeValueCache cache(g, cfg);
  CHECK(cache.values()[0] == 1.0);
  CHECK(cache.values()[1] == 1.0);
  const double v04 = cache.values()[2];
  CHECK(v04 == 1.0 + 0.5);  // 0 and 4 meet, 4 reaches 1 at distance 2
  CHECK(cache.cost(g.index_of(1), g.index_of(2), 2, 1.0) == 1.0);
  CHECK(cache.cost(g.index_of(5), g.index_of(6), 2, 1.0) == doctest::Approx((1.0 + 1.0 + v04) / 3));
  CHECK(cache.cost(g.index_of(5), g.index_of(6), 2, 0.5) == doctest::Approx((1.0 + 1.0 + v04) / 6));
}

TEST_CASE("month features match the single-pair functions") {
  CounterRng rng(33);
  const auto g = brute::random_graph(rng, 12, 0.2);
  ProfileStore profiles;
  for (const auto& u : g.users()) {
    std::vector<std::int64_t> t;
    for (int i = 0; i < 3; ++i) t.push_back(static_cast<std::int64_t>(rng.below(6)));
    profiles.set(u.id, t);
  }
  const auto cfg = vcfg(0.5, 3);
  const KatzConfig kc{0.05, 4};
  const EdgeValueCache cache(g, cfg);
  for (int month = 2; month <= 4; ++month) {
    const auto f1 = compute_month_features(g, profiles, month, cfg, kc, cache, 1);
    const auto f3 = compute_month_features(g, profiles, month, cfg, kc, cache, 3);
    CHECK(f1.V == f3.V);
    CHECK(f1.S == f3.S);
    const auto s = snapshot(g, month);
    for (std::size_t k = 0; k < f1.pairs.size(); ++k) {
      const UserId j = g.id_of(f1.pairs[k].j), h = g.id_of(f1.pairs[k].h);
      CHECK(f1.V[k] == doctest::Approx(link_value(s, j, h, cfg)).epsilon(1e-12));
      CHECK(f1.S[k] == doctest::Approx(katz(s, j, h, kc)).epsilon(1e-12));
      CHECK(f1.N[k] == jaccard(profiles, j, h));
      CHECK(f1.C1[k] == doctest::Approx(cache.cost(f1.pairs[k].j, f1.pairs[k].h, month, 1.0)).epsilon(1e-14));
    }
    const auto recs = to_records(g, f1, 2.0);
    for (std::size_t k = 0; k < recs.size(); ++k) {
      CHECK(recs[k].V >= kFeatureFloor);
      CHECK(recs[k].C == doctest::Approx(floor_feature(2.0 * f1.C1[k])));
      CHECK(recs[k].N >= kFeatureFloor);
      CHECK(recs[k].R == -1);
    }
  }
}
