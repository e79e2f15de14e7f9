#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "treele/error.hpp"
#include "treele/numeric.hpp"

namespace treele {

/// Dense polynomial in one variable with integer coefficients, lowest degree
/// first. The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static Poly constant(const Integer& v) { return Poly(std::vector<Integer>{v}); }
  // x - root
  static Poly linear(long root) { return Poly{-root, 1}; }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Integer>& coefficients() const { return c_; }
  Integer coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Integer(0); }
  const Integer& leading() const { return c_.back(); }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
  }

  Integer eval(const Integer& x) const {
    Integer acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Poly derivative() const {
    std::vector<Integer> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return Poly(std::move(d));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Integer& k) {
    for (auto& v : c_) v *= k;
    trim();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Integer(-1); }
  friend Poly operator*(Poly a, const Integer& k) { return a *= k; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(const char* var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Integer& v = c_[static_cast<std::size_t>(i)];
      if (v == 0) continue;
      Integer mag = abs(v);
      out += out.empty() ? (v < 0 ? "-" : "") : (v < 0 ? " - " : " + ");
      if (mag != 1 || i == 0) out += mag.get_str();
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

inline Poly pow(const Poly& p, std::size_t k) {
  Poly r = Poly::constant(1);
  for (std::size_t i = 0; i < k; ++i) r *= p;
  return r;
}

inline Rational eval_poly(const Poly& p, const Rational& x) { return p.eval(x); }

namespace detail {

using QPoly = std::vector<Rational>;  // lowest degree first, trimmed

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly to_q(const Poly& p) {
  QPoly q;
  for (const auto& v : p.coefficients()) q.emplace_back(v);
  return q;
}

// Scales to a primitive integer polynomial with positive leading coefficient.
inline Poly to_primitive(const QPoly& p) {
  if (p.empty()) return {};
  Integer den = 1;
  for (const auto& v : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> c;
  Integer g = 0;
  for (const auto& v : p) {
    Rational scaled = v * Rational(den);
    c.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.back().get_mpz_t());
  }
  if (p.back() < 0) g = -g;
  for (auto& v : c) v /= g;
  return Poly(std::move(c));
}

inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw Error(ErrorCode::bad_param, "polynomial division by zero");
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline int sign_at(const QPoly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

}  // namespace detail

// Exact quotient a / b, where b divides a over the rationals.
inline Poly exact_quotient(const Poly& a, const Poly& b) {
  auto [q, r] = detail::divmod(detail::to_q(a), detail::to_q(b));
  if (!r.empty()) throw Error(ErrorCode::bad_param, "polynomial division is not exact");
  std::vector<Integer> c;
  for (const auto& v : q) {
    if (v.get_den() != 1) throw Error(ErrorCode::bad_param, "quotient has non-integer coefficients");
    c.push_back(v.get_num());
  }
  return Poly(std::move(c));
}

// Primitive greatest common divisor with positive leading coefficient.
inline Poly gcd(const Poly& a, const Poly& b) { return detail::to_primitive(detail::gcd(detail::to_q(a), detail::to_q(b))); }

// p / gcd(p, p'), primitive.
inline Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p;
  auto qp = detail::to_q(p);
  auto g = detail::gcd(qp, detail::to_q(p.derivative()));
  return detail::to_primitive(detail::divmod(qp, g).first);
}

/// Yun's squarefree decomposition: p = c * f[0]^1 * f[1]^2 * ... with the f[i]
/// squarefree and pairwise coprime (some may be constant 1).
inline std::vector<Poly> squarefree_decomposition(const Poly& p) {
  using namespace detail;
  std::vector<Poly> out;
  if (p.degree() <= 0) return out;
  QPoly a = to_q(p);
  QPoly da = to_q(p.derivative());
  QPoly g = gcd(a, da);
  QPoly b = divmod(a, g).first;
  QPoly c = divmod(da, g).first;
  while (true) {
    QPoly db;
    for (std::size_t i = 1; i < b.size(); ++i) db.push_back(b[i] * static_cast<long>(i));
    QPoly d = c;
    d.resize(std::max(d.size(), db.size()), Rational(0));
    for (std::size_t i = 0; i < db.size(); ++i) d[i] -= db[i];
    trim(d);
    if (b.size() <= 1) break;
    QPoly f = gcd(b, d);
    out.push_back(to_primitive(f));
    b = divmod(b, f).first;
    c = divmod(d, f).first;
  }
  return out;
}

/// Number of distinct real roots of p in (lo, hi], by a Sturm sequence of the
/// squarefree part.
inline std::size_t sign_changes_sturm(const Poly& p, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorCode::bad_param, "Sturm interval needs lo < hi");
  if (p.is_zero()) throw Error(ErrorCode::bad_param, "Sturm count of the zero polynomial");
  using detail::QPoly;
  std::vector<QPoly> seq{detail::to_q(squarefree_part(p))};
  seq.push_back(detail::to_q(squarefree_part(p).derivative()));
  while (!seq.back().empty()) {
    QPoly r = detail::divmod(seq[seq.size() - 2], seq.back()).second;
    for (auto& v : r) v = -v;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  auto variations = [&](const Rational& x) {
    std::size_t v = 0;
    int last = 0;
    for (const auto& s : seq) {
      int sg = detail::sign_at(s, x);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++v;
      last = sg;
    }
    return v;
  };
  return variations(lo) - variations(hi);
}

// Real roots of p in (lo, hi] counted with multiplicity.
inline std::size_t root_count(const Poly& p, const Rational& lo, const Rational& hi) {
  auto factors = squarefree_decomposition(p);
  std::size_t total = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].degree() > 0) total += (i + 1) * sign_changes_sturm(factors[i], lo, hi);
  return total;
}

}  // namespace treele
