#include "linkrec/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linkrec/error.hpp"

namespace linkrec {

namespace {
constexpr const char* kModule = "proximity";

void require_distinct(UserId j, UserId h) {
  if (j == h) fail(ErrorKind::kInvalidArgument, kModule, "pair endpoints must differ");
}
}  // namespace

void validate(const KatzConfig& cfg) {
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
    fail(ErrorKind::kInvalidArgument, kModule, "katz beta must be in (0,1)");
  if (cfg.k_max < 2) fail(ErrorKind::kInvalidArgument, kModule, "katz k_max must be >= 2");
}

void ProfileStore::set(UserId user, std::vector<std::int64_t> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  terms_[user] = std::move(terms);
}

const std::vector<std::int64_t>& ProfileStore::terms(UserId user) const {
  auto it = terms_.find(user);
  if (it == terms_.end())
    fail(ErrorKind::kNotFound, kModule, "no profile for user " + std::to_string(user));
  return it->second;
}

double jaccard_sorted(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::size_t inter = 0, i = 0, k = 0;
  while (i < a.size() && k < b.size()) {
    if (a[i] < b[k]) {
      ++i;
    } else if (b[k] < a[i]) {
      ++k;
    } else {
      ++inter;
      ++i;
      ++k;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double jaccard(const ProfileStore& profiles, UserId j, UserId h) {
  return jaccard_sorted(profiles.terms(j), profiles.terms(h));
}

std::uint64_t common_neighbors_node(const GraphSnapshot& view, Node j, Node h) {
  std::uint64_t count = 0;
  const Node *a = view.begin(j), *ae = view.end(j), *b = view.begin(h), *be = view.end(h);
  while (a != ae && b != be) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

double adamic_adar_node(const GraphSnapshot& view, Node j, Node h) {
  double sum = 0.0;
  const Node *a = view.begin(j), *ae = view.end(j), *b = view.begin(h), *be = view.end(h);
  while (a != ae && b != be) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      sum += 1.0 / std::log(static_cast<double>(view.degree(*a)));
      ++a;
      ++b;
    }
  }
  return sum;
}

std::uint64_t common_neighbors(const GraphSnapshot& view, UserId j, UserId h) {
  require_distinct(j, h);
  return common_neighbors_node(view, view.require(j), view.require(h));
}

double adamic_adar(const GraphSnapshot& view, UserId j, UserId h) {
  require_distinct(j, h);
  return adamic_adar_node(view, view.require(j), view.require(h));
}

KatzWalker::KatzWalker(const GraphSnapshot& view, const KatzConfig& cfg)
    : view_(&view), cfg_(cfg) {
  validate(cfg);
  const std::size_t n = view.size();
  cur_.assign(n, 0.0);
  nxt_.assign(n, 0.0);
  acc_.assign(n, 0.0);
  in_next_.assign(n, 0);
  in_acc_.assign(n, 0);
}

std::vector<double> KatzWalker::from(Node source, const std::vector<Node>& targets) {
  const GraphSnapshot& v = *view_;
  cur_support_.assign(1, source);
  cur_[source] = 1.0;
  double weight = 1.0;
  for (int k = 1; k <= cfg_.k_max; ++k) {
    weight *= cfg_.beta;
    nxt_support_.clear();
    for (Node u : cur_support_) {
      const double c = cur_[u];
      for (const Node* p = v.begin(u); p != v.end(u); ++p) {
        if (!in_next_[*p]) {
          in_next_[*p] = 1;
          nxt_support_.push_back(*p);
        }
        nxt_[*p] += c;
      }
    }
    for (Node u : cur_support_) cur_[u] = 0.0;
    for (Node u : nxt_support_) {
      in_next_[u] = 0;
      if (!in_acc_[u]) {
        in_acc_[u] = 1;
        acc_support_.push_back(u);
      }
      acc_[u] += weight * nxt_[u];
      cur_[u] = nxt_[u];
      nxt_[u] = 0.0;
    }
    cur_support_.swap(nxt_support_);
  }
  for (Node u : cur_support_) cur_[u] = 0.0;
  std::vector<double> out;
  out.reserve(targets.size());
  for (Node t : targets) out.push_back(acc_[t]);
  for (Node u : acc_support_) {
    acc_[u] = 0.0;
    in_acc_[u] = 0;
  }
  acc_support_.clear();
  return out;
}

double katz(const GraphSnapshot& view, UserId j, UserId h, const KatzConfig& cfg) {
  require_distinct(j, h);
  const Node a = view.require(j);
  const Node b = view.require(h);
  KatzWalker walker(view, cfg);
  // Walk from the smaller index so katz(j,h) and katz(h,j) share one arithmetic path.
  return walker.from(std::min(a, b), {std::max(a, b)})[0];
}

}  // namespace linkrec
