#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "../support/brute.hpp"
#include "helpers.hpp"
#include "linkrec/graph.hpp"

using namespace linkrec;

TEST_CASE("graph rejects bad input") {
  std::vector<UserInfo> users{{1, 1}, {2, 2}};
  CHECK(th::error_kind([&] { TemporalGraph(users, {{1, 1, 2}}); }) == ErrorKind::kIntegrity);
  CHECK(th::error_kind([&] { TemporalGraph(users, {{1, 2, 2}, {2, 1, 3}}); }) == ErrorKind::kIntegrity);
  CHECK(th::error_kind([&] { TemporalGraph(users, {{1, 3, 2}}); }) == ErrorKind::kIntegrity);
  CHECK(th::error_kind([&] { TemporalGraph(users, {{1, 2, 1}}); }) == ErrorKind::kIntegrity);
  CHECK_NOTHROW(TemporalGraph(users, {{2, 1, 2}}));
}

TEST_CASE("snapshot filters by month") {
  const auto g = th::make_graph(3, {});
  const TemporalGraph g2({{0, 1}, {1, 1}, {2, 1}}, {{0, 1, 1}, {1, 2, 2}});
  CHECK(snapshot(g2, 1).num_edges() == 1);
  CHECK(snapshot(g2, 1).adjacent(0, 1));
  CHECK(snapshot(g2, 2).num_edges() == 2);
  CHECK(th::error_kind([&] { snapshot(g2, 0); }) == ErrorKind::kInvalidArgument);
  CHECK(g.num_edges() == 0);
}

TEST_CASE("snapshot hides unregistered users") {
  const TemporalGraph g({{0, 1}, {1, 1}, {2, 3}}, {{0, 1, 1}, {1, 2, 3}});
  const auto s = snapshot(g, 2);
  CHECK(s.present(0));
  CHECK_FALSE(s.present(2));
  CHECK(s.num_present() == 2);
  CHECK(th::error_kind([&] { s.require(2); }) == ErrorKind::kNotFound);
  CHECK(th::error_kind([&] { s.require(99); }) == ErrorKind::kNotFound);
}

TEST_CASE("pre_view excludes links of the month itself") {
  const TemporalGraph g({{0, 1}, {1, 1}, {2, 2}}, {{0, 1, 1}, {1, 2, 2}});
  const auto v = pre_view(g, 2);
  CHECK(v.present(2));
  CHECK(v.num_edges() == 1);
}

TEST_CASE("neighborhood counts on a path") {
  const auto g = th::make_graph(3, {{0, 1}, {1, 2}});
  const auto s = snapshot(g, 1);
  CHECK(neighborhood_counts(s, 1, 2) == NeighborhoodCounts{2, 0});
  CHECK(neighborhood_counts(s, 0, 2) == NeighborhoodCounts{1, 1});
  CHECK(th::error_kind([&] { neighborhood_counts(s, 7, 2); }) == ErrorKind::kNotFound);
}

TEST_CASE("two-hop candidates") {
  SUBCASE("path") {
    const auto s_graph = th::make_graph(3, {{0, 1}, {1, 2}});
  const auto s = snapshot(s_graph, 1);
    CHECK(two_hop_candidates(s) == std::vector<UserPair>{{0, 2}});
  }
  SUBCASE("triangle") {
    const auto s_graph = th::make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto s = snapshot(s_graph, 1);
    CHECK(two_hop_candidates(s).empty());
  }
  SUBCASE("star") {
    const auto s_graph = th::make_graph(4, {{3, 0}, {3, 1}, {3, 2}});
  const auto s = snapshot(s_graph, 1);
    CHECK(two_hop_candidates(s) == std::vector<UserPair>{{0, 1}, {0, 2}, {1, 2}});
  }
}

TEST_CASE("random graphs agree with brute-force distances") {
  CounterRng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(11));
    const auto g = brute::random_graph(rng, n, 0.3);
    for (int month = 1; month <= 4; ++month) {
      const auto s = snapshot(g, month);
      const auto A = brute::adjacency(s);
      const auto d = brute::distances(A);
      for (int X = 1; X <= 4; ++X) {
        const DistanceTable dt(s, X);
        for (Node u = 0; u < s.size(); ++u) {
          if (!s.present(u)) continue;
          const auto c = neighborhood_counts_node(s, u, X);
          REQUIRE(c == brute::counts(A, u, X));
          CHECK(std::accumulate(c.begin(), c.end(), std::uint64_t{0}) <= s.num_present() - 1);
          for (Node v = 0; v < s.size(); ++v) {
            const int want = d[u][v] <= X && s.present(v) ? d[u][v] : DistanceTable::kFar;
            REQUIRE(int(dt(u, v)) == want);
          }
          const auto& ball = dt.ball(u);
          CHECK(std::is_sorted(ball.begin(), ball.end(), [&](Node a, Node b) {
            return std::pair(dt(u, a), a) < std::pair(dt(u, b), b);
          }));
        }
      }
      // Two-hop candidates are exactly the distance-2 pairs.
      std::vector<NodePair> want;
      for (Node a = 0; a < s.size(); ++a)
        for (Node b = a + 1; b < s.size(); ++b)
          if (s.present(a) && s.present(b) && d[a][b] == 2) want.push_back({a, b});
      const auto got = two_hop_candidates_nodes(s);
      REQUIRE(got == want);
      for (auto p : got) {
        CHECK_FALSE(s.adjacent(p.j, p.h));
        CHECK(brute::common_neighbors(A, p.j, p.h) >= 1);
      }
    }
  }
}

TEST_CASE("adjacency is symmetric and snapshots are monotone") {
  CounterRng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = brute::random_graph(rng, 10, 0.3);
    for (int m = 1; m < 4; ++m) {
      const auto a = snapshot(g, m), b = snapshot(g, m + 1);
      const auto da = brute::distances(brute::adjacency(a)), db = brute::distances(brute::adjacency(b));
      for (Node u = 0; u < a.size(); ++u)
        for (Node v = 0; v < a.size(); ++v) {
          CHECK(a.adjacent(u, v) == a.adjacent(v, u));
          if (a.adjacent(u, v)) CHECK(b.adjacent(u, v));
          if (a.present(u) && a.present(v)) CHECK(db[u][v] <= da[u][v]);
        }
    }
  }
}

TEST_CASE("neighborhood counts are invariant under relabeling") {
  CounterRng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = brute::random_graph(rng, 10, 0.3);
    // Reverse the id order: node i becomes node n-1-i.
    std::vector<UserInfo> users = g.users();
    const UserId top = users.back().id;
    for (auto& u : users) u.id = top - u.id;
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e = {top - e.u, top - e.v, e.month};
    const TemporalGraph r(users, edges);
    const auto s = snapshot(g, 4), t = snapshot(r, 4);
    for (const auto& u : g.users())
      if (s.present(g.index_of(u.id))) CHECK(neighborhood_counts(s, u.id, 3) == neighborhood_counts(t, top - u.id, 3));
  }
}

TEST_CASE("distance table is identical across thread counts") {
  CounterRng rng(14);
  const auto g = brute::random_graph(rng, 12, 0.25);
  const auto s = snapshot(g, 4);
  const DistanceTable a(s, 3, 1), b(s, 3, 4);
  for (Node u = 0; u < s.size(); ++u) {
    CHECK(a.ball(u) == b.ball(u));
    for (int r = 0; r <= 3; ++r) CHECK(a.ball_end(u, r) == b.ball_end(u, r));
  }
}
