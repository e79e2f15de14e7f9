#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "treele/error.hpp"

namespace treele {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// 2^e as an exact rational, e may be negative.
inline Rational pow2(long e) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

// Largest double not above r.
inline double to_double_down(const Rational& r) {
  double d = r.get_d();  // truncates toward zero
  if (Rational(d) > r) d = std::nextafter(d, -std::numeric_limits<double>::infinity());
  return d;
}

// Smallest double not below r.
inline double to_double_up(const Rational& r) {
  double d = r.get_d();
  if (Rational(d) < r) d = std::nextafter(d, std::numeric_limits<double>::infinity());
  return d;
}

inline Rational floor_to_grid(const Rational& x, const Rational& step) {
  Rational q = x / step;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f) * step;
}

inline Rational ceil_to_grid(const Rational& x, const Rational& step) {
  Rational q = x / step;
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c) * step;
}

// Fixed 15-significant-digit rendering used by every report.
inline std::string format15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// The double nearest to the 15-digit decimal rendering of v. Serializers use
// it so shortest-round-trip printers never emit more than 15 digits.
inline double round15(double v) { return std::strtod(format15(v).c_str(), nullptr); }

// A 15-digit value not below v, for error bounds that must stay rigorous
// after printing.
inline double round15_up(double v) {
  if (v == 0.0) return 0.0;
  double r = round15(v);
  return r >= v ? r : round15(v + std::fabs(v) * 1e-14);
}

/// A closed interval [lo, hi] with exact rational endpoints.
///
/// Every derived spectral quantity (eigenvalue, S_k, energy, bound) is carried
/// as an Enclosure, so comparisons can be decided rigorously: `value()` is the
/// double nearest the midpoint and `error()` a double that provably bounds the
/// distance from `value()` to any point of the interval.
class Enclosure {
 public:
  Enclosure() = default;
  explicit Enclosure(Rational v) : lo_(v), hi_(std::move(v)) {}
  Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw Error(ErrorCode::bad_param, "enclosure with lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_exact() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }

  double value() const { return midpoint().get_d(); }

  double error() const {
    Rational center(value());
    Rational dist = std::max<Rational>(hi_ - center, center - lo_);
    return to_double_up(dist);
  }

  Enclosure operator-() const { return Enclosure(-hi_, -lo_); }

  Enclosure& operator+=(const Enclosure& o) {
    lo_ += o.lo_;
    hi_ += o.hi_;
    return *this;
  }
  Enclosure& operator-=(const Enclosure& o) {
    lo_ -= o.hi_;
    hi_ -= o.lo_;
    return *this;
  }
  Enclosure& operator+=(const Rational& c) {
    lo_ += c;
    hi_ += c;
    return *this;
  }
  Enclosure& operator-=(const Rational& c) {
    lo_ -= c;
    hi_ -= c;
    return *this;
  }
  Enclosure& operator*=(const Rational& c) {
    lo_ *= c;
    hi_ *= c;
    if (c < 0) std::swap(lo_, hi_);
    return *this;
  }

  friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
  friend Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }
  friend Enclosure operator+(Enclosure a, const Rational& c) { return a += c; }
  friend Enclosure operator-(Enclosure a, const Rational& c) { return a -= c; }
  friend Enclosure operator+(const Rational& c, Enclosure a) { return a += c; }
  friend Enclosure operator-(const Rational& c, const Enclosure& a) { return (-a) += c; }
  friend Enclosure operator*(Enclosure a, const Rational& c) { return a *= c; }
  friend Enclosure operator*(const Rational& c, Enclosure a) { return a *= c; }

  // Division of a positive constant by a positive-valued enclosure.
  friend Enclosure operator/(const Rational& c, const Enclosure& a) {
    if (a.lo_ <= 0 || c < 0) throw Error(ErrorCode::bad_param, "division needs c >= 0, a > 0");
    return Enclosure(c / a.hi_, c / a.lo_);
  }

  friend Enclosure abs(const Enclosure& a) {
    if (a.lo_ >= 0) return a;
    if (a.hi_ <= 0) return -a;
    return Enclosure(Rational(0), std::max<Rational>(-a.lo_, a.hi_));
  }

  friend Enclosure max(const Enclosure& a, const Enclosure& b) {
    return Enclosure(std::max(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
  }
  friend Enclosure min(const Enclosure& a, const Enclosure& b) {
    return Enclosure(std::min(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
  }

  // Intersection; callers guarantee both enclose the same quantity.
  friend Enclosure intersect(const Enclosure& a, const Enclosure& b) {
    Rational lo = std::max(a.lo_, b.lo_);
    Rational hi = std::min(a.hi_, b.hi_);
    if (lo > hi) throw Error(ErrorCode::bad_param, "disjoint enclosures of one quantity");
    return Enclosure(lo, hi);
  }

  friend bool operator==(const Enclosure& a, const Enclosure& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  Rational lo_{0};
  Rational hi_{0};
};

// pi to 30 decimals, truncated and rounded up.
inline const Enclosure& pi_enclosure() {
  static const Enclosure pi(Rational("314159265358979323846264338327/100000000000000000000000000000"),
                            Rational("314159265358979323846264338328/100000000000000000000000000000"));
  return pi;
}

enum class Verdict { holds, fails, undecidable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::undecidable: return "undecidable";
  }
  return "?";
}

// Decides lhs >= rhs; undecidable when the enclosures overlap without being a
// certified tie.
inline Verdict compare_ge(const Enclosure& lhs, const Enclosure& rhs) {
  if (lhs.lo() >= rhs.hi()) return Verdict::holds;
  if (lhs.hi() < rhs.lo()) return Verdict::fails;
  return Verdict::undecidable;
}

// Strict lhs > rhs.
inline Verdict compare_gt(const Enclosure& lhs, const Enclosure& rhs) {
  if (lhs.lo() > rhs.hi()) return Verdict::holds;
  if (lhs.hi() <= rhs.lo()) return Verdict::fails;
  return Verdict::undecidable;
}

inline Verdict conjunction(Verdict a, Verdict b) {
  if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
  if (a == Verdict::undecidable || b == Verdict::undecidable) return Verdict::undecidable;
  return Verdict::holds;
}

}  // namespace treele
