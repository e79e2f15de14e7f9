#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treele/error.hpp"
#include "treele/numeric.hpp"

namespace treele {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline std::string describe(const Edge& e) {
  return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

/// Immutable labeled tree on vertices 0..n-1.
///
/// Construction goes through from_edge_list (or a helper built on it), which
/// checks label range, duplicates, acyclicity and connectivity. Adjacency is
/// stored in compressed rows; neighbors of each vertex are sorted ascending.
class Tree {
 public:
  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offset_[v], adj_.data() + offset_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offset_[v + 1] - offset_[v]; }
  bool is_leaf(Vertex v) const { return degree(v) == 1; }
  bool has_edge(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ || static_cast<std::size_t>(v) >= n_)
      return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Rooted orientation, if one was requested.
  std::optional<Vertex> root() const { return root_; }
  const std::vector<Vertex>& parent() const { return parent_; }

  // Copy of this tree oriented away from `r`; parent[r] == -1.
  Tree rooted_at(Vertex r) const;

  friend Tree from_edge_list(std::size_t n, std::span<const Edge> edges);

 private:
  Tree() = default;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offset_;
  std::vector<Vertex> adj_;
  std::optional<Vertex> root_;
  std::vector<Vertex> parent_;
};

namespace detail {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  Vertex find(Vertex v) {
    while (up[v] != v) v = up[v] = up[up[v]];
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
  std::vector<Vertex> up;
};

}  // namespace detail

inline Tree from_edge_list(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw Error(ErrorCode::bad_param, "a tree needs at least one vertex");
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.first < 0 || e.second < 0 || static_cast<std::size_t>(e.first) >= n ||
        static_cast<std::size_t>(e.second) >= n)
      throw Error(ErrorCode::bad_label, "edge " + describe(e) + " outside 0.." + std::to_string(n - 1));
    if (e.first == e.second) throw Error(ErrorCode::cycle_detected, "self-loop " + describe(e));
    normalized.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
  }
  {
    std::vector<Edge> sorted = normalized;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw Error(ErrorCode::duplicate_edge, "edge " + describe(*dup) + " repeated");
  }
  detail::DisjointSets sets(n);
  for (const auto& e : normalized)
    if (!sets.unite(e.first, e.second)) throw Error(ErrorCode::cycle_detected, "edge " + describe(e) + " closes a cycle");
  if (normalized.size() + 1 != n) {
    Vertex stray = 0;
    for (std::size_t v = 1; v < n; ++v)
      if (sets.find(static_cast<Vertex>(v)) != sets.find(0)) {
        stray = static_cast<Vertex>(v);
        break;
      }
    throw Error(ErrorCode::disconnected, "vertex " + std::to_string(stray) + " not reachable from 0");
  }

  Tree t;
  t.n_ = n;
  t.edges_ = std::move(normalized);
  t.offset_.assign(n + 1, 0);
  for (const auto& [u, v] : t.edges_) {
    ++t.offset_[u + 1];
    ++t.offset_[v + 1];
  }
  std::partial_sum(t.offset_.begin(), t.offset_.end(), t.offset_.begin());
  t.adj_.resize(2 * t.edges_.size());
  std::vector<std::size_t> fill(t.offset_.begin(), t.offset_.end() - 1);
  for (const auto& [u, v] : t.edges_) {
    t.adj_[fill[u]++] = v;
    t.adj_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(t.adj_.begin() + static_cast<std::ptrdiff_t>(t.offset_[v]),
              t.adj_.begin() + static_cast<std::ptrdiff_t>(t.offset_[v + 1]));
  return t;
}

inline Tree from_edge_list(std::size_t n, const std::vector<Edge>& edges) {
  return from_edge_list(n, std::span<const Edge>(edges));
}

/// Post-order traversal of a tree from a chosen root. `order` lists every
/// vertex after all of its children; `children` is stored in compressed rows.
struct Rooting {
  Vertex root = 0;
  std::vector<Vertex> order;
  std::vector<Vertex> parent;
  std::vector<std::size_t> child_offset;
  std::vector<Vertex> child_list;

  std::span<const Vertex> children(Vertex v) const {
    return {child_list.data() + child_offset[v], child_list.data() + child_offset[v + 1]};
  }
};

inline Rooting make_rooting(const Tree& t, Vertex root = 0) {
  const std::size_t n = t.size();
  if (root < 0 || static_cast<std::size_t>(root) >= n) throw Error(ErrorCode::bad_label, "root " + std::to_string(root));
  Rooting r;
  r.root = root;
  r.parent.assign(n, -1);
  std::vector<Vertex> preorder;
  preorder.reserve(n);
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    preorder.push_back(v);
    for (Vertex w : t.neighbors(v))
      if (w != r.parent[v]) {
        r.parent[w] = v;
        stack.push_back(w);
      }
  }
  r.order.assign(preorder.rbegin(), preorder.rend());
  r.child_offset.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v)
    if (r.parent[v] >= 0) ++r.child_offset[r.parent[v] + 1];
  std::partial_sum(r.child_offset.begin(), r.child_offset.end(), r.child_offset.begin());
  r.child_list.resize(n == 0 ? 0 : n - 1);
  std::vector<std::size_t> fill(r.child_offset.begin(), r.child_offset.end() - 1);
  for (std::size_t v = 0; v < n; ++v)
    if (r.parent[v] >= 0) r.child_list[fill[r.parent[v]]++] = static_cast<Vertex>(v);
  return r;
}

inline Tree Tree::rooted_at(Vertex r) const {
  Tree copy = *this;
  copy.parent_ = make_rooting(*this, r).parent;
  copy.root_ = r;
  return copy;
}

// --- Pruefer codec ---------------------------------------------------------

inline Tree from_pruefer(std::span<const Vertex> seq) {
  const std::size_t n = seq.size() + 2;
  std::vector<std::size_t> degree(n, 1);
  for (Vertex v : seq) {
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      throw Error(ErrorCode::bad_label, "label " + std::to_string(v) + " outside 0.." + std::to_string(n - 1));
    ++degree[v];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.push(static_cast<Vertex>(v));
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (Vertex v : seq) {
    Vertex leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1) leaves.push(v);
  }
  Vertex a = leaves.top();
  leaves.pop();
  Vertex b = leaves.top();
  edges.emplace_back(a, b);
  return from_edge_list(n, edges);
}

inline Tree from_pruefer(const std::vector<Vertex>& seq) { return from_pruefer(std::span<const Vertex>(seq)); }

inline std::vector<Vertex> to_pruefer(const Tree& t) {
  const std::size_t n = t.size();
  if (n < 2) throw Error(ErrorCode::bad_param, "Pruefer sequences need n >= 2");
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = t.degree(static_cast<Vertex>(v));
    if (degree[v] == 1) leaves.push(static_cast<Vertex>(v));
  }
  std::vector<Vertex> seq;
  seq.reserve(n - 2);
  while (seq.size() + 2 < n) {
    Vertex leaf = leaves.top();
    leaves.pop();
    removed[leaf] = true;
    for (Vertex w : t.neighbors(leaf)) {
      if (removed[w]) continue;
      seq.push_back(w);
      if (--degree[w] == 1) leaves.push(w);
    }
  }
  return seq;
}

// --- structural queries ----------------------------------------------------

namespace detail {

inline std::pair<Vertex, std::vector<int>> farthest_from(const Tree& t, Vertex s) {
  std::vector<int> dist(t.size(), -1);
  std::vector<Vertex> queue{s};
  dist[s] = 0;
  Vertex far = s;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex v = queue[head];
    if (dist[v] > dist[far]) far = v;
    for (Vertex w : t.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return {far, std::move(dist)};
}

}  // namespace detail

inline std::size_t diameter(const Tree& t) {
  auto [a, d0] = detail::farthest_from(t, 0);
  auto [b, da] = detail::farthest_from(t, a);
  return static_cast<std::size_t>(da[b]);
}

/// Vertices minimizing the largest remaining component; one or two of them.
inline std::vector<Vertex> centroids(const Tree& t) {
  const std::size_t n = t.size();
  Rooting r = make_rooting(t, 0);
  std::vector<std::size_t> sub(n, 1);
  for (Vertex v : r.order)
    if (r.parent[v] >= 0) sub[r.parent[v]] += sub[v];
  std::vector<Vertex> best;
  std::size_t best_weight = n + 1;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t heaviest = n - sub[v];
    for (Vertex c : r.children(static_cast<Vertex>(v))) heaviest = std::max(heaviest, sub[c]);
    if (heaviest < best_weight) {
      best_weight = heaviest;
      best.assign(1, static_cast<Vertex>(v));
    } else if (heaviest == best_weight) {
      best.push_back(static_cast<Vertex>(v));
    }
  }
  return best;
}

namespace detail {

// AHU encoding of the tree hanging from `root`: "(" children... ")" with the
// child encodings sorted.
inline std::string rooted_code(const Tree& t, Vertex root) {
  Rooting r = make_rooting(t, root);
  std::vector<std::string> code(t.size());
  std::vector<std::string> parts;
  for (Vertex v : r.order) {
    parts.clear();
    for (Vertex c : r.children(v)) parts.push_back(std::move(code[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (auto& p : parts) s += p;
    s += ')';
    code[v] = std::move(s);
  }
  return std::move(code[root]);
}

}  // namespace detail

/// Isomorphism-invariant byte string: equal codes iff isomorphic trees.
inline std::string canonical_code(const Tree& t) {
  std::string best;
  for (Vertex c : centroids(t)) {
    std::string code = detail::rooted_code(t, c);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

struct DegreeSummary {
  std::vector<std::size_t> degrees;  // non-increasing
  std::size_t pendant_count = 0;      // p
  std::size_t internal_count = 0;     // s = n - p
  std::size_t leaf_neighbor_count = 0;  // q: vertices adjacent to at least one leaf
  Rational average_degree;            // 2(n-1)/n
};

inline Rational average_degree(std::size_t n) {
  Rational d(static_cast<long>(2 * (n - 1)), static_cast<long>(n));
  d.canonicalize();
  return d;
}

inline DegreeSummary degree_summary(const Tree& t) {
  const std::size_t n = t.size();
  DegreeSummary s;
  s.degrees.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    Vertex vv = static_cast<Vertex>(v);
    s.degrees[v] = t.degree(vv);
    if (t.is_leaf(vv)) ++s.pendant_count;
    bool near_leaf = false;
    for (Vertex w : t.neighbors(vv)) near_leaf = near_leaf || t.is_leaf(w);
    if (near_leaf) ++s.leaf_neighbor_count;
  }
  std::sort(s.degrees.begin(), s.degrees.end(), std::greater<>());
  s.internal_count = n - s.pendant_count;
  s.average_degree = average_degree(n);
  return s;
}

inline std::size_t internal_count(const Tree& t) {
  std::size_t s = 0;
  for (std::size_t v = 0; v < t.size(); ++v) s += t.degree(static_cast<Vertex>(v)) != 1;
  return s;
}

/// Result of removing one edge: the larger component first, each relabeled
/// to 0..n_i-1 preserving relative label order; `labels` maps new -> old.
struct EdgeSplit {
  Tree first;
  Tree second;
  std::vector<Vertex> first_labels;
  std::vector<Vertex> second_labels;
  bool pendant = false;
};

inline EdgeSplit delete_edge(const Tree& t, Edge e) {
  if (!t.has_edge(e.first, e.second)) throw Error(ErrorCode::edge_absent, "edge " + describe(e));
  const std::size_t n = t.size();
  std::vector<int> side(n, 0);
  std::vector<Vertex> stack{e.first};
  side[e.first] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : t.neighbors(v)) {
      if (side[w] || (v == e.first && w == e.second)) continue;
      side[w] = 1;
      stack.push_back(w);
    }
  }
  std::vector<Vertex> new_label(n);
  std::vector<Vertex> labels_a, labels_b;
  for (std::size_t v = 0; v < n; ++v) {
    auto& bucket = side[v] ? labels_a : labels_b;
    new_label[v] = static_cast<Vertex>(bucket.size());
    bucket.push_back(static_cast<Vertex>(v));
  }
  std::vector<Edge> edges_a, edges_b;
  for (const auto& [u, v] : t.edges()) {
    if ((u == e.first && v == e.second) || (u == e.second && v == e.first)) continue;
    (side[u] ? edges_a : edges_b).emplace_back(new_label[u], new_label[v]);
  }
  Tree a = from_edge_list(labels_a.size(), edges_a);
  Tree b = from_edge_list(labels_b.size(), edges_b);
  bool pendant = t.is_leaf(e.first) || t.is_leaf(e.second);
  if (labels_a.size() >= labels_b.size())
    return {std::move(a), std::move(b), std::move(labels_a), std::move(labels_b), pendant};
  return {std::move(b), std::move(a), std::move(labels_b), std::move(labels_a), pendant};
}

/// Disjoint union of `a` and `b` plus the edge (u in a, v in b); vertices of b
/// are shifted by a.size().
inline Tree join(const Tree& a, Vertex u, const Tree& b, Vertex v) {
  if (u < 0 || static_cast<std::size_t>(u) >= a.size() || v < 0 || static_cast<std::size_t>(v) >= b.size())
    throw Error(ErrorCode::bad_label, "join vertices out of range");
  const Vertex shift = static_cast<Vertex>(a.size());
  std::vector<Edge> edges = a.edges();
  for (const auto& [x, y] : b.edges()) edges.emplace_back(x + shift, y + shift);
  edges.emplace_back(u, v + shift);
  return from_edge_list(a.size() + b.size(), edges);
}

/// Applies a relabeling: vertex v becomes perm[v].
inline Tree relabel(const Tree& t, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  edges.reserve(t.edges().size());
  for (const auto& [u, v] : t.edges()) edges.emplace_back(perm[u], perm[v]);
  return from_edge_list(t.size(), edges);
}

// Anderson-Morley bound: every Laplacian eigenvalue is at most max(d_u + d_v)
// over edges.
inline std::size_t laplacian_upper_bound(const Tree& t) {
  std::size_t best = 0;
  for (const auto& [u, v] : t.edges()) best = std::max(best, t.degree(u) + t.degree(v));
  return best;
}

}  // namespace treele
