#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "treele/error.hpp"
#include "treele/tree.hpp"

namespace treele {

/// Streams one representative of every isomorphism class of free trees of
/// order n, in constant amortized time per tree.
///
/// Trees are produced as level sequences of rooted trees (vertex i at depth
/// L[i], preorder). A rooted sequence is emitted only when it is the canonical
/// center-rooted form of its free tree: the first subtree of the root must not
/// be higher than the rest, and on equal height must not be larger or
/// lexicographically later. Invalid candidates are skipped in one jump rather
/// than one successor at a time.
class FreeTreeGenerator {
 public:
  explicit FreeTreeGenerator(std::size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorCode::bad_param, "free trees need n >= 1");
    if (n <= 3) {
      small_pending_ = true;
      return;
    }
    // Path rooted at its center.
    for (std::size_t i = 0; i <= n / 2; ++i) level_.push_back(static_cast<int>(i));
    for (std::size_t i = 1; i < (n + 1) / 2; ++i) level_.push_back(static_cast<int>(i));
    active_ = true;
  }

  std::optional<Tree> next() {
    if (n_ <= 3) {
      if (!small_pending_) return std::nullopt;
      small_pending_ = false;
      return path_of(n_);
    }
    if (!active_) return std::nullopt;
    if (!make_valid()) {
      active_ = false;
      return std::nullopt;
    }
    Tree t = tree_from_levels(level_);
    if (!next_rooted(level_, std::nullopt)) active_ = false;
    return t;
  }

  static Tree tree_from_levels(const std::vector<int>& level) {
    std::vector<Edge> edges;
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < level.size(); ++i) {
      while (!stack.empty() && level[stack.back()] >= level[i]) stack.pop_back();
      if (!stack.empty()) edges.emplace_back(static_cast<Vertex>(stack.back()), static_cast<Vertex>(i));
      stack.push_back(i);
    }
    return from_edge_list(level.size(), edges);
  }

 private:
  static Tree path_of(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
    return from_edge_list(n, edges);
  }

  // Successor of a rooted level sequence; with p given, the successor that
  // changes position p first.
  static bool next_rooted(std::vector<int>& level, std::optional<std::size_t> from) {
    std::size_t p;
    if (from) {
      p = *from;
    } else {
      p = level.size() - 1;
      while (p > 0 && level[p] == 1) --p;
    }
    if (p == 0) return false;
    std::size_t q = p - 1;
    while (level[q] != level[p] - 1) --q;
    for (std::size_t i = p; i < level.size(); ++i) level[i] = level[i - p + q];
    return true;
  }

  struct Split {
    std::vector<int> left;  // first subtree of the root, depths reduced by 1
    std::vector<int> rest;  // the tree with that subtree removed
  };

  static Split split(const std::vector<int>& level) {
    std::size_t m = level.size();
    for (std::size_t i = 2; i < level.size(); ++i)
      if (level[i] == 1) {
        m = i;
        break;
      }
    Split s;
    for (std::size_t i = 1; i < m; ++i) s.left.push_back(level[i] - 1);
    s.rest.push_back(0);
    for (std::size_t i = m; i < level.size(); ++i) s.rest.push_back(level[i]);
    return s;
  }

  // Accepts the current candidate if canonical, otherwise jumps to the next
  // candidate that is.
  bool make_valid() {
    Split s = split(level_);
    int left_height = *std::max_element(s.left.begin(), s.left.end());
    int rest_height = *std::max_element(s.rest.begin(), s.rest.end());
    bool valid = rest_height >= left_height;
    if (valid && rest_height == left_height) {
      if (s.left.size() > s.rest.size())
        valid = false;
      else if (s.left.size() == s.rest.size() && s.left > s.rest)
        valid = false;
    }
    if (valid) return true;
    const std::size_t p = s.left.size();
    const std::vector<int> before = level_;
    if (!next_rooted(level_, p)) return false;
    if (before[p] > 2) {
      Split fresh = split(level_);
      int h = *std::max_element(fresh.left.begin(), fresh.left.end());
      const std::size_t tail = static_cast<std::size_t>(h) + 1;
      for (std::size_t i = 0; i < tail; ++i) level_[level_.size() - tail + i] = static_cast<int>(i) + 1;
    }
    return true;
  }

  std::size_t n_;
  std::vector<int> level_;
  bool active_ = false;
  bool small_pending_ = false;
};

struct EnumRange {
  std::size_t n = 1;
  std::size_t shard_index = 0;
  std::size_t shard_count = 1;
};

/// Deals the free trees of order n round-robin by generation index: tree i
/// belongs to shard i mod shard_count.
class ShardedFreeTrees {
 public:
  explicit ShardedFreeTrees(EnumRange range) : range_(range), gen_(range.n) {
    if (range.shard_count == 0 || range.shard_index >= range.shard_count)
      throw Error(ErrorCode::bad_param, "shard index must be below shard count");
  }

  std::optional<Tree> next() {
    while (auto t = gen_.next()) {
      std::size_t idx = index_++;
      if (idx % range_.shard_count == range_.shard_index) return t;
    }
    return std::nullopt;
  }

 private:
  EnumRange range_;
  FreeTreeGenerator gen_;
  std::size_t index_ = 0;
};

template <class F>
void for_each_free_tree(std::size_t n, F&& visit) {
  FreeTreeGenerator gen(n);
  while (auto t = gen.next()) visit(*t);
}

}  // namespace treele
