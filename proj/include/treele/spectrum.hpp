#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "treele/error.hpp"
#include "treele/inertia.hpp"
#include "treele/numeric.hpp"
#include "treele/tree.hpp"

namespace treele {

namespace detail {

inline Rational checked_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(ErrorCode::bad_param, "tolerance must be a positive finite number");
  return Rational(tol);
}

/// Certified enclosures of every eigenvalue in [floor, ceiling], where the
/// caller guarantees no eigenvalue exceeds `ceiling`.
///
/// Interior cut points are doubles: integers first, so integer eigenvalues
/// land exactly on a cut, then midpoints. Each enclosure is either an exact
/// point (an eigenvalue on a cut) or an interval of width at most tol whose
/// eigenvalue count is proven by inertia at both ends.
inline std::vector<Enclosure> enclose_eigenvalues(const InertiaCounter& counter, const Rational& floor,
                                                  const Rational& ceiling, double tol) {
  std::vector<Enclosure> out;
  EigenCounts cf = counter.count(floor);
  out.insert(out.end(), cf.equal, Enclosure(floor));
  if (ceiling <= floor) return out;
  EigenCounts cc = counter.count(ceiling);
  out.insert(out.end(), cc.equal, Enclosure(ceiling));
  const double floor_down = to_double_down(floor), floor_up = to_double_up(floor);
  const double ceil_down = to_double_down(ceiling), ceil_up = to_double_up(ceiling);
  if (tol < 4 * (std::nextafter(ceil_up, INFINITY) - ceil_up))
    throw Error(ErrorCode::bad_param, "tolerance below double resolution at the spectral radius bound");
  // Strict shrink so a rounded width test never admits a segment wider than tol.
  const double tol_test = tol * (1.0 - 0x1p-40);

  auto count_at = [&](double x) {
    if (auto c = counter.count_interval(detail::DoubleInterval{x, x})) return *c;
    return counter.count_exact(Rational(x));
  };

  // Open segment (a, b); an endpoint flagged `at_floor` / `at_ceiling` is the
  // exact rational bound rather than the double stored.
  struct Segment {
    double a, b;
    bool at_floor, at_ceiling;
    EigenCounts ca, cb;
  };
  std::vector<Segment> stack{{floor_down, ceil_up, true, true, cf, cc}};
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    std::size_t inside = s.ca.above - s.cb.above - s.cb.equal;
    if (inside == 0) continue;
    const double outer_lo = s.at_floor ? floor_down : s.a;
    const double outer_hi = s.at_ceiling ? ceil_up : s.b;
    if (widen_up(outer_hi - outer_lo) <= tol_test) {
      out.insert(out.end(), inside,
                 Enclosure(s.at_floor ? floor : Rational(s.a), s.at_ceiling ? ceiling : Rational(s.b)));
      continue;
    }
    const double lo = s.at_floor ? floor_up : s.a;
    const double hi = s.at_ceiling ? ceil_down : s.b;
    double m;
    const double lo_int = std::floor(lo) + 1.0, hi_int = std::ceil(hi) - 1.0;
    if (lo_int <= hi_int)
      m = std::clamp(std::round(lo + (hi - lo) / 2), lo_int, hi_int);
    else
      m = lo + (hi - lo) / 2;
    if (!(m > lo && m < hi)) throw Error(ErrorCode::bad_param, "tolerance below double resolution");
    EigenCounts cm = count_at(m);
    out.insert(out.end(), cm.equal, Enclosure(Rational(m)));
    stack.push_back({s.a, m, s.at_floor, false, s.ca, cm});
    stack.push_back({m, s.b, false, s.at_ceiling, cm, s.cb});
  }
  std::sort(out.begin(), out.end(), [](const Enclosure& x, const Enclosure& y) {
    return x.hi() != y.hi() ? x.hi() > y.hi() : x.lo() > y.lo();
  });
  return out;
}

}  // namespace detail

struct MaxForm {
  Enclosure value;       // 2 max_k (S_k - k*dbar)
  std::size_t argmax = 0;  // k with the largest midpoint
};

/// Certified Laplacian spectrum of a tree.
///
/// Eigenvalues are sorted non-increasing; the last one is exactly 0. The
/// average degree is always a cut point, so no enclosure straddles it and
/// sigma agrees with the enclosures.
struct Spectrum {
  std::size_t n = 0;
  std::vector<Enclosure> eigenvalues;
  Rational average_degree;
  std::size_t sigma = 0;
  Rational tol;

  // Sum of the k largest eigenvalues. The trace identity gives a second
  // enclosure from the n-k smallest ones; both are intersected.
  Enclosure s_k(std::size_t k) const {
    if (k < 1 || k > n) throw Error(ErrorCode::bad_param, "k must lie in 1..n");
    Enclosure head(Rational(0)), tail(Rational(0));
    for (std::size_t i = 0; i < k; ++i) head += eigenvalues[i];
    for (std::size_t i = k; i < n; ++i) tail += eigenvalues[i];
    return intersect(head, Rational(static_cast<long>(2 * (n - 1))) - tail);
  }

  Enclosure energy() const {
    if (sigma == 0) return Enclosure(Rational(0));
    return (s_k(sigma) - average_degree * Rational(static_cast<long>(sigma))) * Rational(2);
  }

  Enclosure energy_abs_form() const {
    Enclosure sum(Rational(0));
    for (const auto& mu : eigenvalues) sum += abs(mu - average_degree);
    return sum;
  }

  MaxForm energy_max_form() const {
    MaxForm best;
    Enclosure prefix(Rational(0));
    for (std::size_t k = 1; k <= n; ++k) {
      prefix += eigenvalues[k - 1];
      Enclosure v = (prefix - average_degree * Rational(static_cast<long>(k))) * Rational(2);
      if (k == 1) {
        best = {v, 1};
        continue;
      }
      bool better = v.midpoint() > best.value.midpoint();
      best.value = max(best.value, v);
      if (better) best.argmax = k;
    }
    return best;
  }

  Rational sum_of_midpoints() const {
    Rational sum(0);
    for (const auto& mu : eigenvalues) sum += mu.midpoint();
    return sum;
  }
};

inline std::size_t sigma(const Tree& t) {
  EigenCounts c = InertiaCounter(t).count(average_degree(t.size()));
  return c.above + c.equal;
}

inline Spectrum eigenvalues(const Tree& t, double tol = 1e-12) {
  Spectrum s;
  s.n = t.size();
  s.tol = detail::checked_tolerance(tol);
  s.average_degree = average_degree(s.n);
  InertiaCounter counter(t);
  const Rational top(static_cast<long>(laplacian_upper_bound(t)));
  s.eigenvalues = detail::enclose_eigenvalues(counter, s.average_degree, top, tol);
  s.sigma = s.eigenvalues.size();
  if (s.average_degree > 0) {
    // Below the average: (0, dbar), excluding dbar itself, which is already covered.
    auto low = detail::enclose_eigenvalues(counter, Rational(0), s.average_degree, tol);
    low.erase(std::remove_if(low.begin(), low.end(), [&](const Enclosure& e) { return e.lo() == s.average_degree; }),
              low.end());
    s.eigenvalues.insert(s.eigenvalues.end(), low.begin(), low.end());
  }
  return s;
}

inline Enclosure s_k(const Tree& t, std::size_t k, double tol = 1e-12) { return eigenvalues(t, tol).s_k(k); }

/// LE(T) = 2(S_sigma - sigma*dbar), enclosing only the eigenvalues at or
/// above the average degree.
inline Enclosure laplacian_energy(const Tree& t, double tol = 1e-12) {
  detail::checked_tolerance(tol);
  const Rational dbar = average_degree(t.size());
  InertiaCounter counter(t);
  const Rational top(static_cast<long>(laplacian_upper_bound(t)));
  auto upper = detail::enclose_eigenvalues(counter, dbar, std::max(top, dbar), tol);
  Enclosure sum(Rational(0));
  for (const auto& mu : upper) sum += mu;
  return (sum - dbar * Rational(static_cast<long>(upper.size()))) * Rational(2);
}

inline MaxForm le_max_form(const Tree& t, double tol = 1e-12) { return eigenvalues(t, tol).energy_max_form(); }

}  // namespace treele
