#pragma once
// Brute-force reference implementations used as test oracles. Everything here
// works on dense matrices and recomputes from scratch.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "linkrec/features.hpp"
#include "linkrec/graph.hpp"
#include "linkrec/rng.hpp"

namespace brute {

using Matrix = std::vector<std::vector<double>>;
using Adjacency = std::vector<std::vector<int>>;

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

/// Random small temporal graph: registration months in 1..3, edges in the
/// later of the endpoints' months up to 4.
inline linkrec::TemporalGraph random_graph(linkrec::CounterRng& rng, int n, double p) {
  std::vector<linkrec::UserInfo> users;
  for (int i = 0; i < n; ++i) {
    linkrec::UserInfo u;
    u.id = 100 + 3 * i;
    u.reg_month = 1 + static_cast<int>(rng.below(3));
    u.m = 0.5 + rng.uniform();
    u.intrinsic = rng.uniform();
    users.push_back(u);
  }
  std::vector<linkrec::Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng.bernoulli(p)) {
        const int lo = std::max(users[a].reg_month, users[b].reg_month);
        edges.push_back({users[a].id, users[b].id, lo + static_cast<int>(rng.below(5 - lo))});
      }
  return linkrec::TemporalGraph(users, edges);
}

inline Adjacency adjacency(const linkrec::GraphSnapshot& view) {
  const std::size_t n = view.size();
  Adjacency A(n, std::vector<int>(n, 0));
  for (linkrec::Node a = 0; a < n; ++a)
    for (const linkrec::Node* it = view.begin(a); it != view.end(a); ++it) A[a][*it] = 1;
  return A;
}

/// Floyd-Warshall shortest path lengths.
inline std::vector<std::vector<int>> distances(const Adjacency& A) {
  const std::size_t n = A.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (A[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline std::vector<std::uint64_t> counts(const Adjacency& A, std::size_t u, int X) {
  const auto d = distances(A);
  std::vector<std::uint64_t> c(X, 0);
  for (std::size_t v = 0; v < A.size(); ++v)
    if (d[u][v] >= 1 && d[u][v] <= X) ++c[d[u][v] - 1];
  return c;
}

inline double katz(const Adjacency& A, std::size_t a, std::size_t b, double beta, int k_max) {
  const std::size_t n = A.size();
  Matrix P(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) P[i][i] = 1.0;
  double score = 0.0, bk = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    Matrix Q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (P[i][l] != 0.0)
          for (std::size_t j = 0; j < n; ++j) Q[i][j] += P[i][l] * A[l][j];
    P = Q;
    bk *= beta;
    score += bk * P[a][b];
  }
  return score;
}

inline std::uint64_t common_neighbors(const Adjacency& A, std::size_t a, std::size_t b) {
  std::uint64_t c = 0;
  for (std::size_t z = 0; z < A.size(); ++z) c += A[a][z] && A[b][z];
  return c;
}

inline double adamic_adar(const Adjacency& A, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t z = 0; z < A.size(); ++z)
    if (A[a][z] && A[b][z]) {
      int deg = 0;
      for (int x : A[z]) deg += x;
      s += 1.0 / std::log(static_cast<double>(deg));
    }
  return s;
}

/// Total value of the present users of an adjacency.
inline double total_value(const Adjacency& A, const std::vector<std::uint8_t>& present,
                          const linkrec::UserWeights& w, double alpha, int X) {
  const auto d = distances(A);
  double tv = 0.0;
  for (std::size_t u = 0; u < A.size(); ++u) {
    if (!present[u]) continue;
    double impact = 0.0;
    for (std::size_t v = 0; v < A.size(); ++v)
      if (d[u][v] >= 1 && d[u][v] <= X) impact += std::pow(alpha, d[u][v]);
    tv += w.intrinsic[u] + w.m[u] * impact;
  }
  return tv;
}

/// Total value with the extra edge minus without it, both recomputed in full.
inline double link_value(const linkrec::GraphSnapshot& view, linkrec::Node a, linkrec::Node b,
                         const linkrec::ValueConfig& cfg) {
  const auto w = linkrec::resolve_weights(view.graph(), cfg);
  std::vector<std::uint8_t> present(view.size());
  for (linkrec::Node u = 0; u < view.size(); ++u) present[u] = view.present(u);
  Adjacency A = adjacency(view);
  const double before = total_value(A, present, w, cfg.alpha, cfg.locality);
  A[a][b] = A[b][a] = 1;
  return total_value(A, present, w, cfg.alpha, cfg.locality) - before;
}

}  // namespace brute
