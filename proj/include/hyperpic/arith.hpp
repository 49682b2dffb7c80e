#ifndef HYPERPIC_ARITH_HPP
#define HYPERPIC_ARITH_HPP

// Word-size integer helpers: modular arithmetic, primality, factoring.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hyperpic {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace arith {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  if ((a | b) >> 32 == 0) return a * b % m;
  return static_cast<u64>((u128)a * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < m < 2^63
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Inverse of a modulo m via extended Euclid; a must be a unit.
inline u64 invmod(u64 a, u64 m) {
  u64 r = m, new_r = a % m;
  // Signed 128-bit Bezout coefficient; m may be close to 2^62.
  __int128 tt = 0, new_tt = 1;
  while (new_r != 0) {
    u64 q = r / new_r;
    __int128 tmp_t = tt - (__int128)q * new_tt;
    tt = new_tt;
    new_tt = tmp_t;
    u64 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw std::domain_error("invmod: element is not invertible");
  if (tt < 0) tt += m;
  return static_cast<u64>(tt);
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    const u64 m = 128;
    auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c % n, n); };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::map<u64, int> m;
  detail::factor_into(n, m);
  return {m.begin(), m.end()};
}

inline std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

/// If q = p^k for a prime p, returns (p, k).
inline std::optional<std::pair<u64, int>> as_prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  auto f = factorize(q);
  if (f.size() != 1) return std::nullopt;
  return std::make_pair(f[0].first, f[0].second);
}

/// p^k, or nullopt if it exceeds `bound`.
inline std::optional<u64> checked_pow(u64 p, int k, u64 bound) {
  u128 acc = 1;
  for (int i = 0; i < k; ++i) {
    acc *= p;
    if (acc > bound) return std::nullopt;
  }
  return static_cast<u64>(acc);
}

inline i64 mod_floor(i64 a, i64 n) {
  i64 r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace arith
}  // namespace hyperpic

#endif  // HYPERPIC_ARITH_HPP
