#pragma once

#include <cstddef>
#include <vector>

#include "umbra/action.hpp"
#include "umbra/polynomial.hpp"
#include "umbra/series.hpp"

namespace umbra {

// Associated sequence s_0..s_{n_max} of a delta series f, by the conjugate
// formula s_n(x) = sum_k <fbar^k | x^n> / k! x^k with fbar the compositional
// inverse of f. Needs pairing data up to t^{n_max}, so f must carry at least
// that much truncation; no silent extension happens here.
template <typename K>
std::vector<Poly<K>> associated_sequence(const Series<K>& f, std::size_t n_max) {
  if (!f.is_delta()) throw NotDelta("associated_sequence: f is not a delta series");
  if (f.trunc() < n_max)
    throw TruncationError("associated_sequence: f.trunc() must be >= n_max");
  const Series<K> fbar = comp_inverse(f);

  std::vector<Poly<K>> seq;
  seq.reserve(n_max + 1);
  // fbar^k, built incrementally; k! alongside.
  std::vector<Series<K>> powers{Series<K>::one(f.trunc())};
  for (std::size_t k = 1; k <= n_max; ++k) powers.push_back(powers.back() * fbar);
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::vector<K> coeffs(n + 1, K(0));
    K n_fact(1);
    for (std::size_t i = 2; i <= n; ++i) n_fact *= K(static_cast<long>(i));
    K k_fact(1);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) k_fact *= K(static_cast<long>(k));
      coeffs[k] = n_fact * powers[k].coeff(n) / k_fact;
    }
    seq.emplace_back(std::move(coeffs));
  }
  return seq;
}

// Transfer formula between associated sequences: given p_n associated to f,
// returns q_n = x (f/g)^n x^{-1} p_n, the degree-n member associated to g.
// The quotient of the two delta series is taken after dividing both by t,
// so the division is always by an invertible series.
template <typename K>
Poly<K> transfer(const Poly<K>& p_n, const Series<K>& f, const Series<K>& g, std::size_t n) {
  if (n < 1) throw BadParams("transfer: n must be >= 1");
  if (!f.is_delta() || !g.is_delta()) throw NotDelta("transfer: f and g must be delta series");
  if (f.trunc() < n || g.trunc() < n)
    throw TruncationError("transfer: series truncation must be >= n");
  const Series<K> ratio = divide_by_t(f) * mul_inverse(divide_by_t(g));
  return times_x(apply_series(pow_int(ratio, static_cast<long long>(n)), divide_by_x(p_n)));
}

// M[n][k] = <g f^k | polys[n]>. The sequence is Sheffer for (g, f) exactly
// when this is diag(n!).
template <typename K>
std::vector<std::vector<K>> orthogonality_check(const Series<K>& g, const Series<K>& f,
                                                const std::vector<Poly<K>>& polys) {
  if (!f.is_delta()) throw NotDelta("orthogonality_check: f is not a delta series");
  if (!g.is_invertible()) throw NotInvertible("orthogonality_check: g is not invertible");
  std::vector<std::vector<K>> m(polys.size());
  std::vector<Series<K>> gfk{g};
  for (std::size_t k = 1; k < polys.size(); ++k) gfk.push_back(gfk.back() * f);
  for (std::size_t n = 0; n < polys.size(); ++n) {
    m[n].reserve(polys.size());
    for (std::size_t k = 0; k < polys.size(); ++k) m[n].push_back(pair(gfk[k], polys[n]));
  }
  return m;
}

}  // namespace umbra
