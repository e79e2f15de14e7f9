#pragma once

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "treele/numeric.hpp"
#include "treele/tree.hpp"

namespace treele {

/// Numbers of Laplacian eigenvalues below, equal to and above a threshold.
struct EigenCounts {
  std::size_t below = 0;
  std::size_t equal = 0;
  std::size_t above = 0;

  friend bool operator==(const EigenCounts&, const EigenCounts&) = default;
};

/// Output of the congruence diagonalization of L(T) + alpha*I.
///
/// `values[v]` is the final diagonal entry at vertex v. Entry signs give the
/// inertia of L(T) + alpha*I, so relative to the threshold x = -alpha:
/// positive -> eigenvalue above x, negative -> below, zero -> equal.
struct DiagOutcome {
  Rational shift;
  std::vector<Rational> values;
  std::vector<Edge> removed_edges;   // (v, parent) severed after a zero child
  std::vector<Edge> substitutions;   // (v, child): a(v) := -1/2, a(child) := 2
  EigenCounts counts;
};

namespace detail {

// Outward widening of a round-to-nearest result: the returned bounds contain
// every real within half an ulp of r.
inline double widen_down(double r) { return r - (std::fabs(r) * 0x1p-52 + DBL_TRUE_MIN); }
inline double widen_up(double r) { return r + (std::fabs(r) * 0x1p-52 + DBL_TRUE_MIN); }

struct DoubleInterval {
  double lo;
  double hi;
  bool excludes_zero() const { return lo > 0.0 || hi < 0.0; }
};

inline DoubleInterval to_interval(const Rational& x) {
  double d = x.get_d();
  Rational back(d);
  if (back == x) return {d, d};
  return x > back ? DoubleInterval{d, std::nextafter(d, INFINITY)} : DoubleInterval{std::nextafter(d, -INFINITY), d};
}

}  // namespace detail

/// Eigenvalue counting for one tree by diagonalizing L(T) - x*I bottom-up
/// along a rooted post-order.
///
/// Leaves start at d(v) - x; a parent subtracts the reciprocals of its
/// children's entries. When a child's entry is exactly zero, the parent's
/// entry becomes -1/2, that child's becomes 2, and the parent's own edge to
/// its parent is dropped. Sylvester's law of inertia turns the sign tally of
/// the entries into eigenvalue counts.
///
/// Three arithmetic routes are provided: exact (fraction-free integers,
/// always decisive), rigorous double intervals (decisive unless an entry
/// interval touches zero), and plain doubles (approximate; used only to seed
/// eigenvalue searches).
class InertiaCounter {
 public:
  explicit InertiaCounter(const Tree& t, Vertex root = 0) : rooting_(make_rooting(t, root)), degree_(t.size()) {
    for (std::size_t v = 0; v < t.size(); ++v) degree_[v] = static_cast<long>(t.degree(static_cast<Vertex>(v)));
  }

  std::size_t size() const { return degree_.size(); }
  const Rooting& rooting() const { return rooting_; }

  // Exact diagonal of L(T) + alpha*I.
  DiagOutcome diagonalize(const Rational& alpha) const {
    DiagOutcome out;
    out.shift = alpha;
    std::vector<Integer> num, den;
    out.counts = run_exact(alpha, num, den, &out);
    out.values.resize(size());
    for (std::size_t v = 0; v < size(); ++v) {
      Rational val(num[v], den[v]);
      val.canonicalize();
      out.values[v] = val;
    }
    return out;
  }

  EigenCounts count_exact(const Rational& x) const {
    std::vector<Integer> num, den;
    return run_exact(-x, num, den, nullptr);
  }

  std::optional<EigenCounts> count_interval(const Rational& x) const {
    return count_interval(detail::to_interval(x));
  }

  // Counts against a threshold known only to lie in [x.lo, x.hi]; decisive
  // only if no eigenvalue can lie in that range.
  std::optional<EigenCounts> count_interval(detail::DoubleInterval x) const {
    using detail::widen_down;
    using detail::widen_up;
    auto& a = scratch_;
    a.resize(size());
    EigenCounts c;
    for (Vertex v : rooting_.order) {
      const double d = static_cast<double>(degree_[v]);
      double lo = widen_down(d - x.hi);
      double hi = widen_up(d - x.lo);
      double sum_lo = 0.0, sum_hi = 0.0;
      for (Vertex ch : rooting_.children(v)) {
        const auto& iv = a[ch];
        if (!iv.excludes_zero()) return std::nullopt;
        sum_lo = widen_down(sum_lo + widen_down(1.0 / iv.hi));
        sum_hi = widen_up(sum_hi + widen_up(1.0 / iv.lo));
      }
      if (!rooting_.children(v).empty()) {
        lo = widen_down(lo - sum_hi);
        hi = widen_up(hi - sum_lo);
      }
      if (!std::isfinite(lo) || !std::isfinite(hi)) return std::nullopt;
      a[v] = {lo, hi};
    }
    for (const auto& iv : a) {
      if (iv.lo > 0.0)
        ++c.above;
      else if (iv.hi < 0.0)
        ++c.below;
      else
        return std::nullopt;
    }
    return c;
  }

  // Certified counts: interval route first, exact route when it is not decisive.
  EigenCounts count(const Rational& x) const {
    if (auto c = count_interval(x)) return *c;
    return count_exact(x);
  }

  // Approximate number of eigenvalues above x, in plain double arithmetic.
  std::size_t count_above_approx(double x) const {
    std::vector<double> a(size());
    std::vector<char> severed(size(), 0);
    for (Vertex v : rooting_.order) {
      double val = static_cast<double>(degree_[v]) - x;
      Vertex zero_child = -1;
      double sum = 0.0;
      for (Vertex ch : rooting_.children(v)) {
        if (severed[ch]) continue;
        if (a[ch] == 0.0) {
          zero_child = ch;
          break;
        }
        sum += 1.0 / a[ch];
      }
      if (zero_child >= 0) {
        a[zero_child] = 2.0;
        a[v] = -0.5;
        severed[v] = 1;
      } else {
        a[v] = val - sum;
      }
    }
    std::size_t above = 0;
    for (double val : a) above += val > 0.0;
    return above;
  }

 private:
  EigenCounts run_exact(const Rational& alpha, std::vector<Integer>& num, std::vector<Integer>& den,
                        DiagOutcome* trace) const {
    const std::size_t n = size();
    const Integer& p = alpha.get_num();
    const Integer& q = alpha.get_den();
    num.assign(n, Integer(0));
    den.assign(n, Integer(1));
    std::vector<char> severed(n, 0);
    Integer s_num, s_den, tmp;
    for (Vertex v : rooting_.order) {
      Integer base = degree_[v] * q + p;  // (d(v) + alpha) * q
      Vertex zero_child = -1;
      s_num = 0;
      s_den = 1;
      for (Vertex ch : rooting_.children(v)) {
        if (severed[ch]) continue;
        if (sgn(num[ch]) == 0) {
          zero_child = ch;
          break;
        }
        // s += den[ch] / num[ch]
        s_num *= num[ch];
        tmp = den[ch] * s_den;
        s_num += tmp;
        s_den *= num[ch];
      }
      if (zero_child >= 0) {
        num[zero_child] = 2;
        den[zero_child] = 1;
        num[v] = -1;
        den[v] = 2;
        if (rooting_.parent[v] >= 0) severed[v] = 1;
        if (trace) {
          trace->substitutions.emplace_back(v, zero_child);
          if (rooting_.parent[v] >= 0) trace->removed_edges.emplace_back(v, rooting_.parent[v]);
        }
      } else {
        // a(v) = base/q - s_num/s_den
        num[v] = base * s_den - q * s_num;
        den[v] = q * s_den;
      }
    }
    EigenCounts c;
    for (std::size_t v = 0; v < n; ++v) {
      int s = sgn(num[v]) * sgn(den[v]);
      if (s > 0)
        ++c.above;
      else if (s < 0)
        ++c.below;
      else
        ++c.equal;
    }
    return c;
  }

  Rooting rooting_;
  std::vector<long> degree_;
  // Reused by count_interval; a counter is therefore not safe to share
  // between threads.
  mutable std::vector<detail::DoubleInterval> scratch_;
};

// Sylvester inertia of L(T) + alpha*I, exact.
inline DiagOutcome diagonalize(const Tree& t, const Rational& alpha, Vertex root = 0) {
  return InertiaCounter(t, root).diagonalize(alpha);
}

// Eigenvalues of L(T) below, equal to and above x.
inline EigenCounts count_eigs(const Tree& t, const Rational& x) { return InertiaCounter(t).count(x); }

inline std::size_t multiplicity_of_one(const Tree& t) { return InertiaCounter(t).count_exact(Rational(1)).equal; }

}  // namespace treele
