#pragma once

#include <cstddef>

#include "umbra/polynomial.hpp"
#include "umbra/series.hpp"

namespace umbra {

// The umbral operator action f(t) p(x) = sum_k c_k p^(k)(x), using
// t^k p(x) = p^(k)(x). Only coefficients up to degree(p) can matter;
// an under-truncated operand is rejected rather than silently partial.
template <typename K>
Poly<K> apply_series(const Series<K>& f, const Poly<K>& p) {
  if (p.is_zero()) return p;
  const auto deg = static_cast<std::size_t>(p.degree());
  if (f.trunc() < deg)
    throw TruncationError("apply_series: series truncation below polynomial degree");
  Poly<K> acc;
  Poly<K> dp = p;
  for (std::size_t k = 0; k <= deg; ++k) {
    if (f.coeff(k) != K(0)) acc += dp * f.coeff(k);
    dp = derivative(dp);
  }
  return acc;
}

// The pairing <f(t) | p(x)> = sum_n a_n p_n with a_n = n! c_n; equals
// apply_series(f, p) evaluated at 0.
template <typename K>
K pair(const Series<K>& f, const Poly<K>& p) {
  if (p.is_zero()) return K(0);
  const auto deg = static_cast<std::size_t>(p.degree());
  if (f.trunc() < deg)
    throw TruncationError("pair: series truncation below polynomial degree");
  K acc(0);
  K fact(1);
  for (std::size_t n = 0; n <= deg; ++n) {
    acc += fact * f.coeff(n) * p.coeff(n);
    fact *= K(static_cast<long>(n + 1));
  }
  return acc;
}

}  // namespace umbra
