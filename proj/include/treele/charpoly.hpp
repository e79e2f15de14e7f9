#pragma once

#include <cstddef>
#include <vector>

#include "treele/error.hpp"
#include "treele/poly.hpp"
#include "treele/tree.hpp"

namespace treele {

/// a(v) = numerator / denominator as polynomials in lambda.
struct RationalFn {
  Poly numerator;
  Poly denominator;
};

/// Bottom-up vertex functions of lambda*I - L(T) for the given root.
///
/// With a(v) = N_v / D_v, D_v is the product of the children's numerators and
/// N_v = (lambda - d_v) * prod N_c - sum_c D_c * prod_{c' != c} N_{c'}. No
/// polynomial division happens, so the recurrence is defined at every lambda.
inline std::vector<RationalFn> vertex_functions(const Tree& t, Vertex root = 0) {
  const Rooting r = make_rooting(t, root);
  std::vector<RationalFn> fn(t.size());
  for (Vertex v : r.order) {
    auto kids = r.children(v);
    const std::size_t k = kids.size();
    // prefix[i] = N_{c_0} ... N_{c_{i-1}}, suffix[i] = N_{c_i} ... N_{c_{k-1}}
    std::vector<Poly> prefix(k + 1, Poly::constant(1)), suffix(k + 1, Poly::constant(1));
    for (std::size_t i = 0; i < k; ++i) prefix[i + 1] = prefix[i] * fn[kids[i]].numerator;
    for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] * fn[kids[i]].numerator;
    Poly num = Poly::linear(static_cast<long>(t.degree(v))) * prefix[k];
    for (std::size_t i = 0; i < k; ++i) num -= fn[kids[i]].denominator * prefix[i] * suffix[i + 1];
    fn[v] = {std::move(num), std::move(prefix[k])};
  }
  return fn;
}

// det(lambda*I - L(T)); the product of all a(v) telescopes to N_root.
inline Poly char_poly(const Tree& t) {
  auto fn = vertex_functions(t, 0);
  return fn[0].numerator;
}

// Characteristic polynomial of a forest: the product over its components.
inline Poly char_poly(const std::vector<Tree>& forest) {
  Poly p = Poly::constant(1);
  for (const auto& t : forest) p *= char_poly(t);
  return p;
}

namespace detail {
inline Poly golden_quadratic() { return Poly{1, -3, 1}; }  // x^2 - 3x + 1
}  // namespace detail

// x (x^2 - 3x + 1)^(a+b-1) (x^2 - (a+b+3)x + 2a + 2b + 1)
inline Poly closed_form_t4(long a, long b) {
  if (a < 0 || b < 0 || a + b < 2) throw Error(ErrorCode::bad_param, "closed_form_t4 needs a + b >= 2");
  const long m = a + b;
  return Poly{0, 1} * pow(detail::golden_quadratic(), static_cast<std::size_t>(m - 1)) * Poly{2 * m + 1, -(m + 3), 1};
}

inline Poly tprime_quartic(long r, long s1) {
  if (r < 2 || s1 < 2) throw Error(ErrorCode::bad_param, "tprime_quartic needs r >= 2 and s1 >= 2");
  return Poly{s1 + 2 * r, -(2 * s1 * r + 5 * r + 2 * s1 + 4), s1 * r + 4 * r + 3 * s1 + 8, -(r + s1 + 5), 1};
}

// x (x-1)^(s1-1) (x^2 - 3x + 1)^(r-2) p(x)
inline Poly closed_form_tprime(long r, long s1) {
  Poly q = tprime_quartic(r, s1);
  return Poly{0, 1} * pow(Poly::linear(1), static_cast<std::size_t>(s1 - 1)) *
         pow(detail::golden_quadratic(), static_cast<std::size_t>(r - 2)) * q;
}

/// The sextic factor g(x). Its x^1 coefficient is -alpha4: with +alpha4 the
/// product no longer matches the tree's characteristic polynomial.
inline Poly tdprime_sextic(long r, long s1, long s2) {
  if (r < 3 || s1 < 2 || s2 < 2) throw Error(ErrorCode::bad_param, "tdprime_sextic needs r >= 3 and s1, s2 >= 2");
  const long a1 = r * s1 + r * s2 + s1 * s2 + 5 * s1 + 6 * r + 5 * s2 + 19;
  const long a2 = r * s1 * s2 + 4 * r * s1 + 3 * s1 * s2 + 4 * r * s2 + 9 * s1 + 9 * s2 + 14 * r + 24;
  const long a3 = 2 * r * s1 * s2 + 5 * r * s1 + 3 * s1 * s2 + 5 * r * s2 + 7 * s1 + 7 * s2 + 16 * r + 13;
  const long a4 = 2 * r * s1 + 2 * s1 * s2 + 2 * r * s2 + 3 * s1 + 3 * s2 + 9 * r + 1;
  return Poly{s1 + s2 + 2 * r - 1, -a4, a3, -a2, a1, -(r + s1 + s2 + 7), 1};
}

// x (x-1)^(s1+s2-2) (x^2 - 3x + 1)^(r-3) g(x)
inline Poly closed_form_tdprime(long r, long s1, long s2) {
  Poly g = tdprime_sextic(r, s1, s2);
  return Poly{0, 1} * pow(Poly::linear(1), static_cast<std::size_t>(s1 + s2 - 2)) *
         pow(detail::golden_quadratic(), static_cast<std::size_t>(r - 3)) * g;
}

}  // namespace treele
