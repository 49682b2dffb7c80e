#ifndef HYPERPIC_POLY_HPP
#define HYPERPIC_POLY_HPP

// Dense univariate polynomials over a finite field, with the pieces of
// Cantor-Zassenhaus needed here: distinct-degree factor degrees and root
// extraction by equal-degree splitting.

#include <algorithm>
#include <numeric>
#include <ostream>
#include <utility>
#include <vector>

#include "hyperpic/field.hpp"
#include "hyperpic/rng.hpp"

namespace hyperpic {

class Poly {
 public:
  explicit Poly(const Field& f) : f_(&f) {}
  Poly(const Field& f, std::vector<Fq> coeffs) : f_(&f), c_(std::move(coeffs)) {
    for (const auto& a : c_) {
      if (&a.field() != f_) throw FieldError("polynomial coefficient from a different field");
    }
    trim();
  }

  static Poly constant(const Fq& a) { return Poly(a.field(), {a}); }
  static Poly monomial(const Fq& a, int d) {
    std::vector<Fq> c(d + 1, Fq::zero(a.field()));
    c[d] = a;
    return Poly(a.field(), std::move(c));
  }
  static Poly x(const Field& f) { return monomial(Fq::one(f), 1); }

  const Field& field() const { return *f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Fq::zero(*f_); }
  const Fq& lead() const { return c_.back(); }

  Fq eval(const Fq& x) const {
    Fq r = Fq::zero(*f_);
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
  }

  Poly derivative() const {
    std::vector<Fq> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * Fq(*f_, i));
    return Poly(*f_, std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    const Fq inv = lead().inv();
    Poly r = *this;
    for (auto& a : r.c_) a *= inv;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Fq::zero(*f_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Fq::zero(*f_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(*a.f_);
    std::vector<Fq> r(a.c_.size() + b.c_.size() - 1, Fq::zero(*a.f_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(*a.f_, std::move(r));
  }
  friend Poly operator*(Poly a, const Fq& s) {
    for (auto& x : a.c_) x *= s;
    a.trim();
    return a;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

  /// (quotient, remainder)
  friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    Poly r = a;
    const int db = b.degree();
    if (r.degree() < db) return {Poly(*a.f_), r};
    std::vector<Fq> q(r.degree() - db + 1, Fq::zero(*a.f_));
    const Fq inv = b.lead().inv();
    for (int i = r.degree(); i >= db; --i) {
      const Fq t = r.c_[i] * inv;
      if (t.is_zero()) continue;
      q[i - db] = t;
      for (int j = 0; j <= db; ++j) r.c_[i - db + j] -= t * b.c_[j];
    }
    r.trim();
    return {Poly(*a.f_, std::move(q)), r};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return divrem(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divrem(a, b).first; }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  const Field* f_;
  std::vector<Fq> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  os << "[";
  for (int i = 0; i <= p.degree(); ++i) os << (i ? "," : "") << p.coeffs()[i];
  return os << "]";
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

inline Poly powmod(Poly base, u64 e, const Poly& m) {
  Poly r = Poly::constant(Fq::one(m.field())) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return r;
}

/// Degrees of the distinct monic irreducible factors of f (f nonzero), listed
/// once per factor, ascending. Works for non-squarefree input.
inline std::vector<int> factor_degrees(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("factor_degrees of zero polynomial");
  std::vector<int> out;
  Poly rest = f.monic();
  const u64 q = f.field().order();
  const Poly x = Poly::x(f.field());
  Poly h = x % rest;  // x^{q^d} mod rest
  for (int d = 1; rest.degree() > 0; ++d) {
    if (2 * d > rest.degree()) {
      // every remaining factor has degree >= d, so rest is irreducible
      out.push_back(rest.degree());
      break;
    }
    h = powmod(h, q, rest);
    Poly g = gcd(rest, h - x);
    if (g.degree() > 0) {
      for (int i = 0; i < g.degree() / d; ++i) out.push_back(d);
      for (Poly t = gcd(rest, g); t.degree() > 0; t = gcd(rest, g)) rest = rest / t;
      h = h % rest;
    }
  }
  return out;
}

/// lcm of the factor degrees: f splits over the degree-L extension.
inline int splitting_degree(const Poly& f) {
  int l = 1;
  for (int d : factor_degrees(f)) l = std::lcm(l, d);
  return l;
}

namespace detail {

inline Poly random_poly(const Field& f, int below_degree, Rng& rng) {
  std::vector<Fq> c;
  for (int i = 0; i < below_degree; ++i) c.push_back(Fq::from_index(f, rng.below(f.order())));
  return Poly(f, std::move(c));
}

// g monic, squarefree, product of linear factors.
inline void split_linear(const Poly& g, Rng& rng, std::vector<Fq>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0));
    return;
  }
  const Field& f = g.field();
  const u64 q = f.order();
  if (q <= 64) {
    for (u64 i = 0; i < q; ++i) {
      Fq a = Fq::from_index(f, i);
      if (g.eval(a).is_zero()) out.push_back(a);
    }
    return;
  }
  const Poly one = Poly::constant(Fq::one(f));
  for (;;) {
    Poly a = random_poly(f, g.degree(), rng);
    if (a.degree() <= 0) continue;
    Poly b = powmod(a, (q - 1) / 2, g) - one;
    Poly h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_linear(h, rng, out);
      split_linear(g / h, rng, out);
      return;
    }
  }
}

inline u64 poly_seed(const Poly& f) {
  u64 s = 0x6a09e667f3bcc909ULL ^ f.field().order();
  for (const auto& c : f.coeffs()) s = mix_seed(s, c.index());
  return s;
}

}  // namespace detail

/// Distinct roots of f (nonzero) in its own field, ascending by index. The
/// splitting randomness is seeded from f's coefficients.
inline std::vector<Fq> distinct_roots(const Poly& f) {
  if (f.is_zero()) throw std::domain_error("roots of zero polynomial");
  if (f.degree() <= 0) return {};
  const Poly fm = f.monic();
  const Poly x = Poly::x(f.field());
  Poly g = gcd(fm, powmod(x, f.field().order(), fm) - x);
  std::vector<Fq> out;
  Rng rng(detail::poly_seed(fm));
  detail::split_linear(g, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Roots of f, which must be squarefree and split into linear factors over its
/// field; skips the gcd with x^Q - x that distinct_roots needs.
inline std::vector<Fq> split_roots(const Poly& f) {
  if (f.degree() <= 0) return {};
  const Poly fm = f.monic();
  std::vector<Fq> out;
  Rng rng(detail::poly_seed(fm));
  detail::split_linear(fm, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Multiplicity of r as a root of f (f nonzero).
inline int root_multiplicity(Poly f, const Fq& r) {
  const Poly lin(f.field(), {-r, Fq::one(f.field())});
  int m = 0;
  for (;;) {
    auto [q, rem] = divrem(f, lin);
    if (!rem.is_zero()) return m;
    ++m;
    f = std::move(q);
  }
}

/// Lagrange interpolation through distinct nodes.
inline Poly interpolate(const std::vector<Fq>& xs, const std::vector<Fq>& ys) {
  if (xs.empty() || xs.size() != ys.size()) throw std::invalid_argument("interpolate: bad node count");
  const Field& f = xs.front().field();
  Poly result(f);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly basis = Poly::constant(Fq::one(f));
    Fq denom = Fq::one(f);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j) continue;
      basis = basis * Poly(f, {-xs[j], Fq::one(f)});
      denom *= xs[i] - xs[j];
    }
    result += basis * (ys[i] / denom);
  }
  return result;
}

}  // namespace hyperpic

#endif  // HYPERPIC_POLY_HPP
