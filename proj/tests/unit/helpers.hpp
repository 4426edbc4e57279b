#pragma once

#include <vector>

#include "linkrec/error.hpp"
#include "linkrec/graph.hpp"
#include "linkrec/proximity.hpp"

namespace th {

/// Graph with every user registered in month 1 and all edges in month 1
/// unless given.
inline linkrec::TemporalGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges, int month = 1) {
  std::vector<linkrec::UserInfo> users;
  for (int i = 0; i < n; ++i) users.push_back({i, 1, 1.0, 0.0});
  std::vector<linkrec::Edge> es;
  for (auto [a, b] : edges) es.push_back({a, b, month});
  return linkrec::TemporalGraph(users, es);
}

template <class F>
linkrec::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const linkrec::Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected linkrec::Error");
}

}  // namespace th
