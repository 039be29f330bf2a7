#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "umbra/errors.hpp"
#include "umbra/rational.hpp"

namespace umbra {

// Dense polynomial in x over an exact coefficient field K.
//
// Canonical form: no trailing zero coefficients are ever stored, and the
// zero polynomial is the empty coefficient vector. Equality is therefore a
// plain vector comparison.
template <typename K>
class Poly {
 public:
  // degree() of the zero polynomial; stands in for "negative infinity".
  static constexpr int kNegInfinity = -1;

  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(K c) {
    if (c == K(0)) return Poly();
    return Poly(std::vector<K>{std::move(c)});
  }
  static Poly monomial(std::size_t n, K scale = K(1)) {
    if (scale == K(0)) return Poly();
    std::vector<K> c(n + 1, K(0));
    c[n] = std::move(scale);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  K coeff(std::size_t m) const { return m < c_.size() ? c_[m] : K(0); }
  const std::vector<K>& coeffs() const { return c_; }

  // Horner evaluation.
  K operator()(const K& x) const {
    K acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly operator-() const {
    std::vector<K> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return Poly(std::move(r));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const K& s) {
    if (s == K(0)) return Poly();
    std::vector<K> r(a.c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }
  friend Poly operator*(const K& s, const Poly& a) { return a * s; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  bool operator==(const Poly&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K(0)) c_.pop_back();
  }

  std::vector<K> c_;  // c_[m] = coefficient of x^m; empty = zero polynomial
};

template <typename K>
Poly<K> derivative(const Poly<K>& p) {
  if (p.degree() < 1) return Poly<K>();
  std::vector<K> r(static_cast<std::size_t>(p.degree()));
  for (std::size_t m = 1; m <= static_cast<std::size_t>(p.degree()); ++m)
    r[m - 1] = p.coeff(m) * K(static_cast<long>(m));
  return Poly<K>(std::move(r));
}

// Antiderivative with zero constant term (exact in K).
template <typename K>
Poly<K> antiderivative(const Poly<K>& p) {
  if (p.is_zero()) return Poly<K>();
  std::vector<K> r(static_cast<std::size_t>(p.degree()) + 2, K(0));
  for (std::size_t m = 0; m <= static_cast<std::size_t>(p.degree()); ++m)
    r[m + 1] = p.coeff(m) / K(static_cast<long>(m + 1));
  return Poly<K>(std::move(r));
}

// p(x + y), by exact binomial expansion.
template <typename K>
Poly<K> shift(const Poly<K>& p, const K& y) {
  if (y == K(0) || p.is_zero()) return p;
  const auto deg = static_cast<std::size_t>(p.degree());
  std::vector<K> r(deg + 1, K(0));
  // Row of binomials binom(m, j) built incrementally per source term.
  for (std::size_t m = 0; m <= deg; ++m) {
    if (p.coeff(m) == K(0)) continue;
    K binom(1);   // binom(m, m)
    K ypow(1);    // y^{m-j}
    for (std::size_t j = m + 1; j-- > 0;) {
      r[j] += p.coeff(m) * binom * ypow;
      if (j > 0) {
        binom = binom * K(static_cast<long>(j)) / K(static_cast<long>(m - j + 1));
        ypow *= y;
      }
    }
  }
  return Poly<K>(std::move(r));
}

// p(s * x).
template <typename K>
Poly<K> scale_arg(const Poly<K>& p, const K& s) {
  if (p.is_zero()) return p;
  std::vector<K> r(static_cast<std::size_t>(p.degree()) + 1);
  K spow(1);
  for (std::size_t m = 0; m < r.size(); ++m) {
    r[m] = p.coeff(m) * spow;
    spow *= s;
  }
  return Poly<K>(std::move(r));
}

// The unique q with x*q = p. A nonzero constant term means the caller is
// feeding the transfer formula a sequence with s_n(0) != 0; refuse loudly.
template <typename K>
Poly<K> divide_by_x(const Poly<K>& p) {
  if (p.is_zero()) return p;
  if (p.coeff(0) != K(0)) throw NotDivisible("divide_by_x: nonzero constant term");
  std::vector<K> r(p.coeffs().begin() + 1, p.coeffs().end());
  return Poly<K>(std::move(r));
}

template <typename K>
Poly<K> times_x(const Poly<K>& p) {
  if (p.is_zero()) return p;
  std::vector<K> r(p.coeffs().size() + 1, K(0));
  for (std::size_t m = 0; m < p.coeffs().size(); ++m) r[m + 1] = p.coeff(m);
  return Poly<K>(std::move(r));
}

// Exact definite integral of p over [0, y]. Agrees with the umbral pairing
// <(e^{yt}-1)/t | p(x)>; the series route is cross-checked in tests.
template <typename K>
K integral_pair(const Poly<K>& p, const K& y) {
  return antiderivative(p)(y);
}

using RatPoly = Poly<Rat>;

}  // namespace umbra
