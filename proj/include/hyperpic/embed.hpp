#ifndef HYPERPIC_EMBED_HPP
#define HYPERPIC_EMBED_HPP

// Embeddings F_{p^a} -> F_{p^c} for a | c.
//
// Embeddings form a compatible system: for a | b | c the composite
// F_a -> F_b -> F_c equals the direct F_a -> F_c. For each c, the maximal
// proper subfields (c/r, r prime) are embedded first, in decreasing degree,
// each sending the generator to the smallest-index root of its modulus that
// agrees with the already chosen maximal subfields on their intersections. Every
// other subfield is embedded through the first maximal subfield containing it.

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "hyperpic/field.hpp"
#include "hyperpic/poly.hpp"

namespace hyperpic {

class Embedding {
 public:
  Embedding(const Field& src, const Field& dst, std::vector<Fq> powers)
      : src_(&src), dst_(&dst), powers_(std::move(powers)) {}

  const Field& source() const { return *src_; }
  const Field& target() const { return *dst_; }

  /// Image of the source generator (class of x).
  const Fq& generator_image() const { return powers_.size() > 1 ? powers_[1] : powers_[0]; }

  Fq operator()(const Fq& e) const {
    if (&e.field() != src_) throw FieldError("embedding applied to element of the wrong field");
    Fq r = Fq::zero(*dst_);
    for (int i = 0; i < src_->degree(); ++i) {
      if (e.coeff(i)) r.add_scaled(powers_[i], e.coeff(i));
    }
    return r;
  }

  /// The unique source element mapping to y, if y lies in the image.
  std::optional<Fq> preimage(const Fq& y) const {
    if (&y.field() != dst_) throw FieldError("preimage of element of the wrong field");
    const u64 p = src_->characteristic();
    const int a = src_->degree(), c = dst_->degree();
    // Solve sum_i x_i powers_[i] = y over F_p: c equations, a unknowns.
    std::vector<std::vector<u64>> m(c, std::vector<u64>(a + 1));
    for (int row = 0; row < c; ++row) {
      for (int i = 0; i < a; ++i) m[row][i] = powers_[i].coeff(row);
      m[row][a] = y.coeff(row);
    }
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < a && rank < c; ++col) {
      int piv = -1;
      for (int row = rank; row < c; ++row)
        if (m[row][col]) {
          piv = row;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[piv], m[rank]);
      const u64 inv = arith::invmod(m[rank][col], p);
      for (auto& v : m[rank]) v = arith::mulmod(v, inv, p);
      for (int row = 0; row < c; ++row) {
        if (row == rank || !m[row][col]) continue;
        const u64 t = m[row][col];
        for (int j = 0; j <= a; ++j) m[row][j] = arith::submod(m[row][j], arith::mulmod(t, m[rank][j], p), p);
      }
      pivot_col.push_back(col);
      ++rank;
    }
    for (int row = rank; row < c; ++row)
      if (m[row][a]) return std::nullopt;
    std::vector<u64> x(a, 0);
    for (int r = 0; r < rank; ++r) x[pivot_col[r]] = m[r][a];
    return Fq::from_coeffs(*src_, x);
  }

 private:
  const Field* src_;
  const Field* dst_;
  std::vector<Fq> powers_;  // images of x^0 .. x^{a-1}
};

const Embedding& embedding(const Field& src, const Field& dst);

namespace detail {

struct EmbeddingCache {
  std::mutex mu;
  std::map<std::tuple<u64, int, int>, std::unique_ptr<Embedding>> table;
};

inline EmbeddingCache& embedding_cache() {
  static EmbeddingCache c;
  return c;
}

inline std::vector<Fq> powers_of(const Fq& beta, int n) {
  std::vector<Fq> out;
  Fq acc = Fq::one(beta.field());
  for (int i = 0; i < n; ++i) {
    out.push_back(acc);
    acc *= beta;
  }
  return out;
}

inline std::vector<int> maximal_subfield_degrees(int c) {
  std::vector<int> out;
  for (u64 r : arith::prime_divisors(static_cast<u64>(c))) out.push_back(c / static_cast<int>(r));
  return out;  // primes ascending, so degrees descending
}

inline const Embedding* cached(u64 p, int a, int c) {
  auto& cache = embedding_cache();
  std::lock_guard lock(cache.mu);
  auto it = cache.table.find({p, a, c});
  return it == cache.table.end() ? nullptr : it->second.get();
}

inline const Embedding& store(u64 p, int a, int c, Embedding e) {
  auto& cache = embedding_cache();
  std::lock_guard lock(cache.mu);
  auto& slot = cache.table[{p, a, c}];
  if (!slot) slot = std::make_unique<Embedding>(std::move(e));
  return *slot;
}

// Chooses embeddings of all maximal subfields of F_{p^c} jointly and caches them.
inline void embed_maximal_subfields(u64 p, int c) {
  const Field& big = make_field(p, c);
  std::vector<std::pair<int, std::vector<Fq>>> chosen;
  for (int b : maximal_subfield_degrees(c)) {
    if (b == 1) {
      chosen.emplace_back(b, std::vector<Fq>{Fq::one(big)});
      continue;
    }
    const Field& sub = make_field(p, b);
    std::vector<Fq> mod;
    for (u64 m : sub.modulus()) mod.push_back(Fq(big, static_cast<i64>(m)));
    const auto candidates = distinct_roots(Poly(big, mod));
    std::optional<std::vector<Fq>> pick;
    for (const auto& beta : candidates) {
      auto pw = powers_of(beta, b);
      const Embedding trial(sub, big, pw);
      bool ok = true;
      for (const auto& [b2, pw2] : chosen) {
        const int e = std::gcd(b, b2);
        if (e == 1) continue;
        const Field& inter = make_field(p, e);
        const Fq gamma = Fq::generator(inter);
        const Fq via_b = trial(embedding(inter, sub)(gamma));
        const Embedding other(make_field(p, b2), big, pw2);
        const Fq via_b2 = other(embedding(inter, make_field(p, b2))(gamma));
        if (!(via_b == via_b2)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        pick = std::move(pw);
        break;
      }
    }
    if (!pick) throw InternalError("no compatible embedding of F_" + sub.to_string() + " into F_" + big.to_string());
    chosen.emplace_back(b, std::move(*pick));
  }
  for (auto& [b, pw] : chosen) store(p, b, c, Embedding(make_field(p, b), big, std::move(pw)));
}

}  // namespace detail

/// The fixed embedding src -> dst; both must share the characteristic and
/// src's degree must divide dst's.
inline const Embedding& embedding(const Field& src, const Field& dst) {
  const u64 p = src.characteristic();
  const int a = src.degree(), c = dst.degree();
  if (dst.characteristic() != p || c % a != 0) {
    throw FieldError("no embedding F_" + src.to_string() + " -> F_" + dst.to_string());
  }
  if (const Embedding* e = detail::cached(p, a, c)) return *e;
  if (a == c) return detail::store(p, a, c, Embedding(src, dst, detail::powers_of(Fq::generator(dst), a)));
  if (a == 1) return detail::store(p, a, c, Embedding(src, dst, {Fq::one(dst)}));
  const auto maxi = detail::maximal_subfield_degrees(c);
  if (std::find(maxi.begin(), maxi.end(), a) != maxi.end()) {
    detail::embed_maximal_subfields(p, c);
    return *detail::cached(p, a, c);
  }
  int via = 0;
  for (int b : maxi) {
    if (b % a == 0) {
      via = b;
      break;
    }
  }
  const Field& mid = make_field(p, via);
  const Embedding& lower = embedding(src, mid);
  const Embedding& upper = embedding(mid, dst);
  std::vector<Fq> pw;
  for (const auto& x : detail::powers_of(Fq::generator(src), a)) pw.push_back(upper(lower(x)));
  return detail::store(p, a, c, Embedding(src, dst, std::move(pw)));
}

/// Image of e in `target` under the fixed embedding.
inline Fq embed(const Fq& e, const Field& target) {
  if (&e.field() == &target) return e;
  return embedding(e.field(), target)(e);
}

/// Element of `sub` that embeds to y, if any.
inline std::optional<Fq> descend(const Fq& y, const Field& sub) {
  if (&y.field() == &sub) return y;
  return embedding(sub, y.field()).preimage(y);
}

/// Smallest field containing both a and b (same characteristic).
inline const Field& common_extension(const Field& a, const Field& b) {
  if (a.characteristic() != b.characteristic()) throw FieldError("fields of different characteristic");
  return make_field(a.characteristic(), std::lcm(a.degree(), b.degree()));
}

}  // namespace hyperpic

#endif  // HYPERPIC_EMBED_HPP
