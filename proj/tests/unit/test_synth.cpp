#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "linkrec/io.hpp"
#include "linkrec/synth.hpp"
#include "linkrec/training.hpp"

using namespace linkrec;

namespace {
// Jaccard of two-hop candidates at month t against establishment at t+1.
void pairs_stats(const TemporalGraph& g, const ProfileStore& p, int t, std::vector<double>& jac,
                 std::vector<double>& est) {
  const auto view = snapshot(g, t);
  const auto pairs = two_hop_candidates_nodes(view);
  const auto e = established_at(g, pairs, t + 1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    jac.push_back(jaccard(p, g.id_of(pairs[k].j), g.id_of(pairs[k].h)));
    est.push_back(e[k]);
  }
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}
}  // namespace

TEST_CASE("generator is deterministic and well formed") {
  SynthConfig c;
  c.total_users = 600;
  c.months = 5;
  const auto [g1, p1] = gen_network(c);
  const auto [g2, p2] = gen_network(c);
  CHECK(io::format_edges(g1) == io::format_edges(g2));
  CHECK(io::format_profiles(p1) == io::format_profiles(p2));
  CHECK(g1.num_users() == 600);
  CHECK(g1.max_month() == 5);
  for (const auto& u : g1.users()) CHECK(p1.contains(u.id));
  c.seed = 2;
  CHECK(io::format_edges(gen_network(c).first) != io::format_edges(g1));
}

TEST_CASE("explicit arrivals and validation") {
  SynthConfig c;
  c.arrivals = {10, 20, 30};
  const auto g = gen_network(c).first;
  CHECK(g.num_users() == 60);
  int m2 = 0;
  for (const auto& u : g.users()) m2 += u.reg_month == 2;
  CHECK(m2 == 20);
  c.arrivals = {0, 5};
  CHECK(th::error_kind([&] { gen_network(c); }) == ErrorKind::kInvalidArgument);
  SynthConfig d;
  d.homophily = -1;
  CHECK(th::error_kind([&] { gen_network(d); }) == ErrorKind::kInvalidArgument);
  d = {};
  d.total_users = 3;
  CHECK(th::error_kind([&] { gen_network(d); }) == ErrorKind::kInvalidArgument);
  d = {};
  d.term_skew = -0.5;
  CHECK(th::error_kind([&] { gen_network(d); }) == ErrorKind::kInvalidArgument);
  d = {};
  d.closure_exponent = -1;
  CHECK(th::error_kind([&] { gen_network(d); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("term skew makes low-rank terms popular") {
  SynthConfig c;
  c.total_users = 2000;
  c.months = 2;
  c.community_affinity = 0.0;
  c.terms_per_user = 5;
  auto share_of_term0 = [&](double skew) {
    c.term_skew = skew;
    const auto p = gen_network(c).second;
    double n = 0;
    for (const auto& [user, terms] : p.all()) n += std::count(terms.begin(), terms.end(), 0);
    return n / static_cast<double>(p.size());
  };
  // Uniform: each of 5 distinct terms out of 200.
  CHECK(share_of_term0(0.0) == doctest::Approx(5.0 / 200.0).epsilon(0.3));
  // Zipf(2) puts 1/zeta(2) ~ 0.61 of each draw on term 0.
  CHECK(share_of_term0(2.0) > 0.9);
}

TEST_CASE("closure exponent favors pairs with many common neighbors") {
  auto mean_cn_of_new_links = [](double exponent) {
    SynthConfig c;
    c.total_users = 1500;
    c.months = 5;
    c.closure_exponent = exponent;
    const auto [g, p] = gen_network(c);
    double s = 0, n = 0;
    for (int t = 2; t < 5; ++t) {
      const auto view = snapshot(g, t);
      const auto pairs = two_hop_candidates_nodes(view);
      const auto e = established_at(g, pairs, t + 1);
      for (std::size_t k = 0; k < pairs.size(); ++k)
        if (e[k]) s += static_cast<double>(common_neighbors_node(view, pairs[k].j, pairs[k].h)), n += 1;
    }
    return s / n;
  };
  CHECK(mean_cn_of_new_links(3.0) > mean_cn_of_new_links(1.0));
}

TEST_CASE("no homophily means jaccard does not predict links") {
  SynthConfig c;
  c.homophily = 0.0;
  c.total_users = 3000;
  c.months = 6;
  std::vector<double> jac, est;
  for (std::uint64_t seed = 1; jac.size() < 10000; ++seed) {
    c.seed = seed;
    const auto [g, p] = gen_network(c);
    for (int t = 2; t < 6; ++t) pairs_stats(g, p, t, jac, est);
  }
  CHECK(std::fabs(correlation(jac, est)) < 0.05);
}

TEST_CASE("homophily raises jaccard of new links") {
  SynthConfig c;
  c.total_users = 2000;
  c.months = 6;
  double gap = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    c.seed = seed;
    const auto [g, p] = gen_network(c);
    std::vector<double> jac, est;
    for (int t = 2; t < 6; ++t) pairs_stats(g, p, t, jac, est);
    double s[2] = {0, 0}, n[2] = {0, 0};
    for (std::size_t i = 0; i < jac.size(); ++i) s[int(est[i])] += jac[i], n[int(est[i])] += 1;
    gap += s[1] / n[1] - s[0] / n[0];
  }
  CHECK(gap / 3 > 0.0);
}
