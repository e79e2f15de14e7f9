#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "treele/error.hpp"
#include "treele/tree.hpp"

// Generators for the named tree families. Labels are deterministic:
// centers / roots first, then level-1 vertices, then leaves in the order of
// the vertex that carries them.
namespace treele {

namespace detail {
inline void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::bad_param, msg);
}
}  // namespace detail

// 0 - 1 - ... - (n-1)
inline Tree path(std::size_t n) {
  detail::require(n >= 1, "path needs n >= 1");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(v - 1), static_cast<Vertex>(v));
  return from_edge_list(n, edges);
}

// Center 0, leaves 1..n-1.
inline Tree star(std::size_t n) {
  detail::require(n >= 2, "star needs n >= 2");
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) edges.emplace_back(0, static_cast<Vertex>(v));
  return from_edge_list(n, edges);
}

// Adjacent centers 0 and 1; 0 carries a leaves, 1 carries b leaves.
inline Tree double_broom3(std::size_t a, std::size_t b) {
  detail::require(a >= 1 && b >= 1, "double_broom3 needs a, b >= 1");
  std::vector<Edge> edges{{0, 1}};
  Vertex next = 2;
  for (std::size_t i = 0; i < a; ++i) edges.emplace_back(0, next++);
  for (std::size_t i = 0; i < b; ++i) edges.emplace_back(1, next++);
  return from_edge_list(a + b + 2, edges);
}

// Center 0 joined to 1 and 2; 1 carries a leaves, 2 carries b leaves.
inline Tree double_broom4(std::size_t a, std::size_t b) {
  detail::require(a >= 1 && b >= 1, "double_broom4 needs a, b >= 1");
  std::vector<Edge> edges{{0, 1}, {0, 2}};
  Vertex next = 3;
  for (std::size_t i = 0; i < a; ++i) edges.emplace_back(1, next++);
  for (std::size_t i = 0; i < b; ++i) edges.emplace_back(2, next++);
  return from_edge_list(a + b + 3, edges);
}

/// Root 0 with p pendant vertices and r level-1 children 1..r; child i
/// carries s[i-1] leaves. Root leaves are labeled before the children's leaves.
inline Tree sns_tree(std::size_t p, std::size_t r, const std::vector<std::size_t>& s) {
  detail::require(r >= 2, "sns_tree needs r >= 2");
  detail::require(s.size() == r, "sns_tree needs exactly r leaf counts");
  detail::require(std::count_if(s.begin(), s.end(), [](std::size_t x) { return x > 0; }) >= 2,
                  "sns_tree needs at least two nonzero leaf counts");
  const std::size_t n = p + r + 1 + std::accumulate(s.begin(), s.end(), std::size_t{0});
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= r; ++i) edges.emplace_back(0, static_cast<Vertex>(i));
  Vertex next = static_cast<Vertex>(r + 1);
  for (std::size_t i = 0; i < p; ++i) edges.emplace_back(0, next++);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s[i]; ++j) edges.emplace_back(static_cast<Vertex>(i + 1), next++);
  return from_edge_list(n, edges);
}

// Spider with a+b legs of length 2; its spectrum depends on a+b only.
inline Tree t4_spider(std::size_t a, std::size_t b) {
  detail::require(a + b >= 2, "t4_spider needs a + b >= 2");
  return sns_tree(0, a + b, std::vector<std::size_t>(a + b, 1));
}

inline Tree t_prime(std::size_t r, std::size_t s1) {
  detail::require(r >= 2 && s1 >= 2, "t_prime needs r >= 2 and s1 >= 2");
  std::vector<std::size_t> s(r, 1);
  s[0] = s1;
  return sns_tree(0, r, s);
}

inline Tree t_dprime(std::size_t r, std::size_t s1, std::size_t s2) {
  detail::require(r >= 3 && s1 >= 2 && s2 >= 2, "t_dprime needs r >= 3 and s1, s2 >= 2");
  std::vector<std::size_t> s(r, 1);
  s[0] = s1;
  s[1] = s2;
  return sns_tree(0, r, s);
}

enum class Diameter4Kind { spider, t_prime, t_dprime, other };

/// Decomposition of a diameter-4 tree around its center: p leaf children of
/// the center, and the non-leaf children's leaf counts (non-increasing).
struct Diameter4Shape {
  Vertex center = 0;
  std::size_t pendant = 0;
  std::vector<std::size_t> leaf_counts;
  Diameter4Kind kind = Diameter4Kind::other;
};

inline Diameter4Shape diameter4_shape(const Tree& t) {
  if (diameter(t) != 4) throw Error(ErrorCode::bad_param, "tree does not have diameter 4");
  // The center is the unique vertex whose eccentricity is 2.
  Diameter4Shape shape;
  for (std::size_t v = 0; v < t.size(); ++v) {
    auto [far, dist] = detail::farthest_from(t, static_cast<Vertex>(v));
    if (dist[far] == 2) {
      shape.center = static_cast<Vertex>(v);
      break;
    }
  }
  for (Vertex c : t.neighbors(shape.center)) {
    if (t.is_leaf(c))
      ++shape.pendant;
    else
      shape.leaf_counts.push_back(t.degree(c) - 1);
  }
  std::sort(shape.leaf_counts.begin(), shape.leaf_counts.end(), std::greater<>());
  if (shape.pendant == 0) {
    auto big = std::count_if(shape.leaf_counts.begin(), shape.leaf_counts.end(), [](std::size_t x) { return x >= 2; });
    if (big == 0)
      shape.kind = Diameter4Kind::spider;
    else if (big == 1)
      shape.kind = Diameter4Kind::t_prime;
    else if (big == 2 && shape.leaf_counts.size() >= 3)
      shape.kind = Diameter4Kind::t_dprime;
  }
  return shape;
}

}  // namespace treele
