#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "linkrec/graph.hpp"

namespace linkrec {

struct KatzConfig {
  double beta = 0.05;
  int k_max = 4;
};

void validate(const KatzConfig& cfg);

/// Encoded profile terms per user. Term lists are kept sorted and unique.
class ProfileStore {
 public:
  void set(UserId user, std::vector<std::int64_t> terms);
  bool contains(UserId user) const { return terms_.count(user) != 0; }
  const std::vector<std::int64_t>& terms(UserId user) const;
  const std::unordered_map<UserId, std::vector<std::int64_t>>& all() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::unordered_map<UserId, std::vector<std::int64_t>> terms_;
};

/// Sum over k = 1..k_max of beta^k times the number of length-k walks.
double katz(const GraphSnapshot& view, UserId j, UserId h, const KatzConfig& cfg);
double jaccard(const ProfileStore& profiles, UserId j, UserId h);
std::uint64_t common_neighbors(const GraphSnapshot& view, UserId j, UserId h);
/// Sum over common neighbors z of 1 / ln(deg z).
double adamic_adar(const GraphSnapshot& view, UserId j, UserId h);

double jaccard_sorted(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);
std::uint64_t common_neighbors_node(const GraphSnapshot& view, Node j, Node h);
double adamic_adar_node(const GraphSnapshot& view, Node j, Node h);

/// Katz scores from one source to many targets, sharing a single sparse walk
/// propagation. Reusable per worker thread.
class KatzWalker {
 public:
  KatzWalker(const GraphSnapshot& view, const KatzConfig& cfg);
  /// Scores for `targets`, in the same order.
  std::vector<double> from(Node source, const std::vector<Node>& targets);

 private:
  const GraphSnapshot* view_;
  KatzConfig cfg_;
  std::vector<double> cur_, nxt_, acc_;
  std::vector<Node> cur_support_, nxt_support_, acc_support_;
  std::vector<std::uint8_t> in_next_, in_acc_;
};

}  // namespace linkrec
