#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace linkrec {

using UserId = std::int64_t;
using Node = std::uint32_t;

struct UserInfo {
  UserId id = 0;
  int reg_month = 1;
  double m = 1.0;
  double intrinsic = 0.0;
};

struct Edge {
  UserId u = 0;
  UserId v = 0;
  int month = 1;
};

/// Users and undirected timestamped edges. Users are stored in ascending id
/// order, so dense node indices sort the same way as external ids.
class TemporalGraph {
 public:
  TemporalGraph() = default;
  TemporalGraph(std::vector<UserInfo> users, std::vector<Edge> edges);

  std::size_t num_users() const { return users_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<UserInfo>& users() const { return users_; }
  /// Edges with u < v, sorted by (month, u, v).
  const std::vector<Edge>& edges() const { return edges_; }
  /// Same edges as dense index pairs, parallel to edges().
  const std::vector<std::pair<Node, Node>>& edge_nodes() const { return edge_nodes_; }

  bool has_user(UserId id) const { return index_.count(id) != 0; }
  Node index_of(UserId id) const;
  UserId id_of(Node n) const { return users_[n].id; }
  int max_month() const;

 private:
  std::vector<UserInfo> users_;
  std::vector<Edge> edges_;
  std::vector<std::pair<Node, Node>> edge_nodes_;
  std::unordered_map<UserId, Node> index_;
};

/// Immutable adjacency of a graph at a given month. Node indices are shared
/// with the parent graph; users not yet registered are absent and isolated.
class GraphSnapshot {
 public:
  GraphSnapshot(const TemporalGraph& graph, int month, int user_month, int edge_month);

  const TemporalGraph& graph() const { return *graph_; }
  int month() const { return month_; }
  std::size_t size() const { return present_.size(); }
  bool present(Node n) const { return present_[n] != 0; }
  std::size_t num_present() const { return num_present_; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  /// Sorted neighbor list.
  const Node* begin(Node n) const { return neighbors_.data() + offsets_[n]; }
  const Node* end(Node n) const { return neighbors_.data() + offsets_[n + 1]; }
  std::size_t degree(Node n) const { return offsets_[n + 1] - offsets_[n]; }
  bool adjacent(Node a, Node b) const;

  /// Resolves an external id; throws not-found if unknown or not yet registered.
  Node require(UserId id) const;

 private:
  const TemporalGraph* graph_;
  int month_;
  std::vector<std::uint8_t> present_;
  std::size_t num_present_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Node> neighbors_;
};

/// Users with reg_month <= month and edges with est_month <= month.
GraphSnapshot snapshot(const TemporalGraph& graph, int month);
// A snapshot refers to its graph, so temporaries are rejected.
GraphSnapshot snapshot(const TemporalGraph&& graph, int month) = delete;

/// Users registered by `month` and edges established strictly before it: the
/// network a link formed in `month` was added to.
GraphSnapshot pre_view(const TemporalGraph& graph, int month);
GraphSnapshot pre_view(const TemporalGraph&& graph, int month) = delete;

/// counts[x-1] = number of users at shortest distance exactly x, x = 1..X.
using NeighborhoodCounts = std::vector<std::uint64_t>;

NeighborhoodCounts neighborhood_counts(const GraphSnapshot& view, UserId user, int X);
NeighborhoodCounts neighborhood_counts_node(const GraphSnapshot& view, Node user, int X);

struct NodePair {
  Node j;
  Node h;
  friend bool operator==(const NodePair&, const NodePair&) = default;
  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

struct UserPair {
  UserId j;
  UserId h;
  friend bool operator==(const UserPair&, const UserPair&) = default;
  friend auto operator<=>(const UserPair&, const UserPair&) = default;
};

/// Pairs at distance exactly two, j < h, in lexicographic order.
std::vector<NodePair> two_hop_candidates_nodes(const GraphSnapshot& view);
std::vector<UserPair> two_hop_candidates(const GraphSnapshot& view);

/// Truncated all-pairs distances (0..X, kFar beyond). Dense n*n bytes.
class DistanceTable {
 public:
  static constexpr std::uint8_t kFar = 0xff;

  DistanceTable(const GraphSnapshot& view, int X, unsigned threads = 1);

  int locality() const { return X_; }
  std::uint8_t operator()(Node a, Node b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::uint8_t* row(Node a) const { return d_.data() + static_cast<std::size_t>(a) * n_; }
  /// Nodes within distance <= r of `src`, ordered by (distance, index).
  const std::vector<Node>& ball(Node src) const { return balls_[src]; }
  /// balls_[src][0 .. ball_end(src, r)) are the nodes within distance r.
  std::size_t ball_end(Node src, int r) const { return ball_ends_[src * (X_ + 1) + r]; }

 private:
  std::size_t n_;
  int X_;
  std::vector<std::uint8_t> d_;
  std::vector<std::vector<Node>> balls_;
  std::vector<std::size_t> ball_ends_;
};

}  // namespace linkrec
