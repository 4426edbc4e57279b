#include "linkrec/graph.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "linkrec/error.hpp"
#include "linkrec/parallel.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "graph_core";
}

TemporalGraph::TemporalGraph(std::vector<UserInfo> users, std::vector<Edge> edges)
    : users_(std::move(users)) {
  std::sort(users_.begin(), users_.end(),
            [](const UserInfo& a, const UserInfo& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < users_.size(); ++i) {
    const UserInfo& u = users_[i];
    if (u.reg_month < 1)
      fail(ErrorKind::kInvalidArgument, kModule,
           "user " + std::to_string(u.id) + " has reg_month < 1");
    if (!index_.emplace(u.id, static_cast<Node>(i)).second)
      fail(ErrorKind::kIntegrity, kModule, "duplicate user " + std::to_string(u.id));
  }

  std::set<std::pair<UserId, UserId>> seen;
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v) fail(ErrorKind::kIntegrity, kModule, "self-loop on user " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    auto iu = index_.find(e.u);
    auto iv = index_.find(e.v);
    if (iu == index_.end() || iv == index_.end())
      fail(ErrorKind::kIntegrity, kModule,
           "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") references an unknown user");
    if (e.month < 1) fail(ErrorKind::kInvalidArgument, kModule, "edge month < 1");
    if (e.month < users_[iu->second].reg_month || e.month < users_[iv->second].reg_month)
      fail(ErrorKind::kIntegrity, kModule,
           "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
               ") predates an endpoint's registration");
    if (!seen.emplace(e.u, e.v).second)
      fail(ErrorKind::kIntegrity, kModule,
           "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    edges_.push_back(e);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.month, a.u, a.v) < std::tie(b.month, b.u, b.v);
  });
  edge_nodes_.reserve(edges_.size());
  for (const Edge& e : edges_) edge_nodes_.emplace_back(index_.at(e.u), index_.at(e.v));
}

Node TemporalGraph::index_of(UserId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) fail(ErrorKind::kNotFound, kModule, "unknown user " + std::to_string(id));
  return it->second;
}

int TemporalGraph::max_month() const {
  int m = 0;
  for (const auto& u : users_) m = std::max(m, u.reg_month);
  for (const auto& e : edges_) m = std::max(m, e.month);
  return m;
}

GraphSnapshot::GraphSnapshot(const TemporalGraph& graph, int month, int user_month, int edge_month)
    : graph_(&graph), month_(month) {
  const std::size_t n = graph.num_users();
  present_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (graph.users()[i].reg_month <= user_month) {
      present_[i] = 1;
      ++num_present_;
    }
  }
  std::vector<std::size_t> deg(n + 1, 0);
  const auto& en = graph.edge_nodes();
  const auto& ev = graph.edges();
  std::size_t used = 0;
  // Edges are sorted by month, so the admitted ones form a prefix.
  while (used < ev.size() && ev[used].month <= edge_month) {
    ++deg[en[used].first];
    ++deg[en[used].second];
    ++used;
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < used; ++k) {
    neighbors_[fill[en[k].first]++] = en[k].second;
    neighbors_[fill[en[k].second]++] = en[k].first;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(neighbors_.begin() + offsets_[i], neighbors_.begin() + offsets_[i + 1]);
}

bool GraphSnapshot::adjacent(Node a, Node b) const {
  if (degree(a) > degree(b)) std::swap(a, b);
  return std::binary_search(begin(a), end(a), b);
}

Node GraphSnapshot::require(UserId id) const {
  if (!graph_->has_user(id))
    fail(ErrorKind::kNotFound, kModule, "unknown user " + std::to_string(id));
  const Node n = graph_->index_of(id);
  if (!present(n))
    fail(ErrorKind::kNotFound, kModule,
         "user " + std::to_string(id) + " not registered by month " + std::to_string(month_));
  return n;
}

GraphSnapshot snapshot(const TemporalGraph& graph, int month) {
  if (month < 1) fail(ErrorKind::kInvalidArgument, kModule, "snapshot month must be >= 1");
  return GraphSnapshot(graph, month, month, month);
}

GraphSnapshot pre_view(const TemporalGraph& graph, int month) {
  if (month < 1) fail(ErrorKind::kInvalidArgument, kModule, "month must be >= 1");
  return GraphSnapshot(graph, month, month, month - 1);
}

NeighborhoodCounts neighborhood_counts_node(const GraphSnapshot& view, Node user, int X) {
  if (X < 1) fail(ErrorKind::kInvalidArgument, kModule, "locality X must be >= 1");
  NeighborhoodCounts counts(static_cast<std::size_t>(X), 0);
  std::vector<std::uint8_t> seen(view.size(), 0);
  std::vector<Node> frontier{user}, next;
  seen[user] = 1;
  for (int x = 1; x <= X && !frontier.empty(); ++x) {
    next.clear();
    for (Node u : frontier) {
      for (const Node* p = view.begin(u); p != view.end(u); ++p) {
        if (!seen[*p]) {
          seen[*p] = 1;
          next.push_back(*p);
        }
      }
    }
    counts[x - 1] = next.size();
    frontier.swap(next);
  }
  return counts;
}

NeighborhoodCounts neighborhood_counts(const GraphSnapshot& view, UserId user, int X) {
  return neighborhood_counts_node(view, view.require(user), X);
}

std::vector<NodePair> two_hop_candidates_nodes(const GraphSnapshot& view) {
  std::vector<NodePair> out;
  const std::size_t n = view.size();
  std::vector<Node> mark(n, static_cast<Node>(-1));
  std::vector<Node> found;
  for (Node j = 0; j < n; ++j) {
    if (!view.present(j)) continue;
    mark[j] = j;
    for (const Node* p = view.begin(j); p != view.end(j); ++p) mark[*p] = j;
    found.clear();
    for (const Node* p = view.begin(j); p != view.end(j); ++p) {
      for (const Node* q = view.begin(*p); q != view.end(*p); ++q) {
        if (*q > j && mark[*q] != j) {
          mark[*q] = j;
          found.push_back(*q);
        }
      }
    }
    std::sort(found.begin(), found.end());
    for (Node h : found) out.push_back({j, h});
  }
  return out;
}

std::vector<UserPair> two_hop_candidates(const GraphSnapshot& view) {
  std::vector<UserPair> out;
  for (const NodePair& p : two_hop_candidates_nodes(view))
    out.push_back({view.graph().id_of(p.j), view.graph().id_of(p.h)});
  return out;
}

DistanceTable::DistanceTable(const GraphSnapshot& view, int X, unsigned threads)
    : n_(view.size()), X_(X) {
  if (X < 1 || X > 250) fail(ErrorKind::kInvalidArgument, kModule, "locality X must be in [1, 250]");
  d_.assign(n_ * n_, kFar);
  balls_.resize(n_);
  ball_ends_.assign(n_ * (X_ + 1), 0);
  parallel_for(n_, threads, [&](std::size_t src, unsigned) {
    if (!view.present(static_cast<Node>(src))) return;
    std::uint8_t* row = d_.data() + src * n_;
    std::vector<Node>& ball = balls_[src];
    row[src] = 0;
    ball.push_back(static_cast<Node>(src));
    ball_ends_[src * (X_ + 1)] = 1;
    std::size_t layer_begin = 0;
    for (int x = 1; x <= X_; ++x) {
      const std::size_t layer_end = ball.size();
      for (std::size_t k = layer_begin; k < layer_end; ++k) {
        const Node u = ball[k];
        for (const Node* p = view.begin(u); p != view.end(u); ++p) {
          if (row[*p] == kFar) {
            row[*p] = static_cast<std::uint8_t>(x);
            ball.push_back(*p);
          }
        }
      }
      std::sort(ball.begin() + layer_end, ball.end());
      ball_ends_[src * (X_ + 1) + x] = ball.size();
      layer_begin = layer_end;
    }
  });
}

}  // namespace linkrec
