#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "umbra/errors.hpp"
#include "umbra/polynomial.hpp"
#include "umbra/rational.hpp"

namespace umbra {

enum class StirlingKind { First, Second };

// Triangular table of Stirling numbers, either signed first kind or second
// kind, as exact big integers. Immutable after construction and freely
// shareable between threads; identity verification re-reads the same
// entries many thousands of times.
class StirlingTable {
 public:
  StirlingTable(StirlingKind kind, std::size_t n_max) : kind_(kind), n_max_(n_max) {
    rows_.resize(n_max + 1);
    rows_[0] = {Int(1)};
    for (std::size_t n = 1; n <= n_max; ++n) {
      rows_[n].assign(n + 1, Int(0));
      for (std::size_t k = 1; k <= n; ++k) {
        const Int& diag = rows_[n - 1][k - 1];
        const Int above = k <= n - 1 ? rows_[n - 1][k] : Int(0);
        // S1(n,k) = S1(n-1,k-1) - (n-1) S1(n-1,k)   (signed)
        // S2(n,k) = S2(n-1,k-1) +   k   S2(n-1,k)
        rows_[n][k] = kind == StirlingKind::First ? diag - Int(n - 1) * above
                                                  : diag + Int(k) * above;
      }
    }
  }

  StirlingKind kind() const { return kind_; }
  std::size_t n_max() const { return n_max_; }

  // Total: 0 outside the triangle.
  Int value(std::size_t n, std::size_t k) const {
    if (n > n_max_) throw TruncationError("StirlingTable: index beyond n_max");
    if (k > n) return Int(0);
    return rows_[n][k];
  }

 private:
  StirlingKind kind_;
  std::size_t n_max_;
  std::vector<std::vector<Int>> rows_;
};

namespace detail {

inline std::shared_ptr<const StirlingTable> stirling_cache(StirlingKind kind, std::size_t need) {
  static std::mutex mu;
  static std::shared_ptr<const StirlingTable> tables[2];
  std::scoped_lock lock(mu);
  auto& slot = tables[kind == StirlingKind::First ? 0 : 1];
  if (!slot || slot->n_max() < need) {
    std::size_t grown = slot ? slot->n_max() * 2 : 32;
    slot = std::make_shared<const StirlingTable>(kind, std::max(need, grown));
  }
  return slot;
}

}  // namespace detail

// Signed Stirling number of the first kind: (x)_n = sum_l S1(n,l) x^l.
inline Int stirling1(std::size_t n, std::size_t k) {
  return detail::stirling_cache(StirlingKind::First, n)->value(n, k);
}

inline Int stirling2(std::size_t n, std::size_t k) {
  return detail::stirling_cache(StirlingKind::Second, n)->value(n, k);
}

inline Int factorial(std::size_t n) {
  Int f(1);
  for (std::size_t i = 2; i <= n; ++i) f *= Int(i);
  return f;
}

inline Int binomial(std::size_t n, std::size_t k) {
  if (k > n) return Int(0);
  k = std::min(k, n - k);
  Int num(1), den(1);
  for (std::size_t i = 0; i < k; ++i) {
    num *= Int(n - i);
    den *= Int(i + 1);
  }
  return num / den;  // exact: den divides num
}

// Generalized binomial coefficient binom(r, k) for rational (or negative)
// upper index, via the falling-factorial product.
inline Rat gen_binomial(const Rat& r, std::size_t k) {
  Rat acc(1);
  for (std::size_t i = 0; i < k; ++i) acc *= r - Rat(static_cast<long>(i));
  return acc / Rat(factorial(k));
}

// Falling factorial r(r-1)...(r-k+1); empty product for k = 0.
inline Rat falling(const Rat& r, std::size_t k) {
  Rat acc(1);
  for (std::size_t i = 0; i < k; ++i) acc *= r - Rat(static_cast<long>(i));
  return acc;
}

// (x)_n as a polynomial.
inline RatPoly falling_poly(std::size_t n) {
  RatPoly acc = RatPoly::constant(Rat(1));
  for (std::size_t i = 0; i < n; ++i)
    acc *= RatPoly(std::vector<Rat>{Rat(-static_cast<long>(i)), Rat(1)});
  return acc;
}

// (total)! / (parts_0! parts_1! ...), requires sum(parts) == total.
inline Int multinomial(std::size_t total, const std::vector<std::size_t>& parts) {
  Int r = factorial(total);
  for (std::size_t p : parts) r /= factorial(p);
  return r;
}

// Enumerates all tuples of `parts` non-negative integers summing to `total`,
// in colexicographic order: (total,0,...,0) first, (0,...,0,total) last.
// The order is part of the contract so failing-case reports are stable.
class Compositions {
 public:
  Compositions(std::size_t total, std::size_t parts) : total_(total), parts_(parts) {
    if (parts == 0) throw BadParams("Compositions: parts must be >= 1");
  }

  class iterator {
   public:
    using value_type = std::vector<std::size_t>;

    iterator() : done_(true) {}
    iterator(std::size_t total, std::size_t parts) : cur_(parts, 0), done_(false) {
      cur_[0] = total;
    }

    const value_type& operator*() const { return cur_; }

    iterator& operator++() {
      // NEXCOM step: move the first nonzero entry (minus one) back to the
      // front and push one unit to the right of it.
      std::size_t h = 0;
      while (h < cur_.size() && cur_[h] == 0) ++h;
      if (h + 1 >= cur_.size()) {
        done_ = true;
        return *this;
      }
      std::size_t t = cur_[h];
      cur_[h] = 0;
      cur_[0] = t - 1;
      cur_[h + 1] += 1;
      return *this;
    }

    bool operator==(const iterator& o) const { return done_ == o.done_; }

   private:
    value_type cur_;
    bool done_;
  };

  iterator begin() const { return iterator(total_, parts_); }
  iterator end() const { return iterator(); }

 private:
  std::size_t total_;
  std::size_t parts_;
};

}  // namespace umbra
