#ifndef HYPERPIC_FIELD_HPP
#define HYPERPIC_FIELD_HPP

// Finite fields F_{p^k} of odd characteristic.
//
// A field is F_p[x]/(m) where m is the lexicographically first monic
// irreducible polynomial of degree k (coefficient vectors compared as the
// integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}). Fields are interned: make_field
// returns a reference that stays valid for the lifetime of the program, and
// elements hold a pointer to it. Two elements belong to the same field iff the
// pointers agree.

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperpic/arith.hpp"
#include "hyperpic/error.hpp"

namespace hyperpic {

inline constexpr int kMaxExtensionDegree = 40;
inline constexpr u64 kMaxFieldOrder = u64{1} << 62;

class Field;
const Field& make_field(u64 p, int k);

class Field {
 public:
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  u64 characteristic() const noexcept { return p_; }
  int degree() const noexcept { return k_; }
  u64 order() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  /// Monic modulus, coefficients c_0..c_k with c_k = 1.
  const std::vector<u64>& modulus() const noexcept { return modulus_; }

  /// "p^k"
  std::string to_string() const { return std::to_string(p_) + "^" + std::to_string(k_); }

  const Field& prime_field() const { return make_field(p_, 1); }

 private:
  friend const Field& make_field(u64 p, int k);
  Field(u64 p, int k, u64 q, std::vector<u64> modulus)
      : p_(p), k_(k), q_(q), modulus_(std::move(modulus)) {}

  u64 p_;
  int k_;
  u64 q_;
  std::vector<u64> modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const Field& f) { return os << "F_" << f.to_string(); }

namespace detail {

// Dense polynomials over Z/p as coefficient vectors (low degree first). Only
// used while searching for a modulus, before any Field exists.
using ZpPoly = std::vector<u64>;

inline void trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline ZpPoly zp_mod(ZpPoly a, const ZpPoly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 inv_lead = arith::invmod(m.back(), p);
  while (a.size() > dm) {
    const u64 t = arith::mulmod(a.back(), inv_lead, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = arith::submod(a[shift + j], arith::mulmod(t, m[j], p), p);
    }
    trim(a);
  }
  return a;
}

inline ZpPoly zp_mulmod(const ZpPoly& a, const ZpPoly& b, const ZpPoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = arith::addmod(r[i + j], arith::mulmod(a[i], b[j], p), p);
    }
  }
  return zp_mod(std::move(r), m, p);
}

inline ZpPoly zp_powmod(ZpPoly base, u64 e, const ZpPoly& m, u64 p) {
  ZpPoly r{1};
  base = zp_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = zp_mulmod(r, base, m, p);
    base = zp_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ZpPoly r = zp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Rabin's test: m of degree k is irreducible iff x^{p^k} = x mod m and
/// gcd(x^{p^{k/r}} - x, m) = 1 for every prime r | k.
inline bool zp_is_irreducible(const ZpPoly& m, u64 p) {
  const int k = static_cast<int>(m.size()) - 1;
  if (k <= 0) return false;
  if (k == 1) return true;
  if (m[0] == 0) return false;
  // frob[i] = x^{p^i} mod m
  std::vector<ZpPoly> frob(k + 1);
  frob[0] = zp_mod({0, 1}, m, p);
  for (int i = 1; i <= k; ++i) frob[i] = zp_powmod(frob[i - 1], p, m, p);
  if (frob[k] != frob[0]) return false;
  for (u64 r : arith::prime_divisors(static_cast<u64>(k))) {
    ZpPoly h = frob[k / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = arith::submod(h[1], 1, p);
    trim(h);
    if (zp_gcd(h, m, p).size() != 1) return false;
  }
  return true;
}

inline std::vector<u64> first_irreducible(u64 p, int k) {
  if (k == 1) return {0, 1};
  const u64 count = *arith::checked_pow(p, k, kMaxFieldOrder);
  for (u64 n = 0; n < count; ++n) {
    ZpPoly m(k + 1, 0);
    u64 v = n;
    for (int i = 0; i < k; ++i) {
      m[i] = v % p;
      v /= p;
    }
    m[k] = 1;
    if (zp_is_irreducible(m, p)) return m;
  }
  throw InternalError("no irreducible polynomial found");
}

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<u64, int>, std::unique_ptr<Field>> fields;
};

inline FieldRegistry& field_registry() {
  static FieldRegistry r;
  return r;
}

}  // namespace detail

/// Returns the interned field F_{p^k}. Throws FieldError for p = 2, composite p,
/// k < 1, or p^k above kMaxFieldOrder.
inline const Field& make_field(u64 p, int k) {
  if (p == 2) throw FieldError("characteristic 2 is not supported");
  if (!arith::is_prime(p)) throw FieldError("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw FieldError("extension degree must be >= 1");
  auto q = arith::checked_pow(p, k, kMaxFieldOrder);
  if (!q || k > kMaxExtensionDegree) {
    throw FieldError("field " + std::to_string(p) + "^" + std::to_string(k) + " exceeds the size bound 2^62");
  }
  auto& reg = detail::field_registry();
  {
    std::lock_guard lock(reg.mu);
    auto it = reg.fields.find({p, k});
    if (it != reg.fields.end()) return *it->second;
  }
  auto modulus = detail::first_irreducible(p, k);
  std::lock_guard lock(reg.mu);
  auto& slot = reg.fields[{p, k}];
  if (!slot) slot.reset(new Field(p, k, *q, std::move(modulus)));
  return *slot;
}

/// Parses "p^k" (or a bare prime "p").
inline const Field& parse_field(std::string_view s) {
  auto parse_num = [&](std::string_view t) -> u64 {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
      throw FieldError("malformed field spec '" + std::string(s) + "', expected p^k");
    }
    return v;
  };
  auto caret = s.find('^');
  if (caret == std::string_view::npos) return make_field(parse_num(s), 1);
  const u64 k = parse_num(s.substr(caret + 1));
  if (k > static_cast<u64>(kMaxExtensionDegree)) throw FieldError("extension degree too large in '" + std::string(s) + "'");
  return make_field(parse_num(s.substr(0, caret)), static_cast<int>(k));
}

/// Field of order q, where q must be an odd prime power.
inline const Field& field_of_order(u64 q) {
  auto pk = arith::as_prime_power(q);
  if (!pk) throw FieldError(std::to_string(q) + " is not a prime power");
  return make_field(pk->first, pk->second);
}

/// Element of F_{p^k}: a polynomial of degree < k over F_p, reduced modulo the
/// field's modulus.
class Fq {
 public:
  /// Detached value; must be assigned before use.
  Fq() = default;

  /// Image of an integer in the prime subfield.
  Fq(const Field& f, i64 v) : f_(&f) {
    const u64 p = f.characteristic();
    c_[0] = v >= 0 ? static_cast<u64>(v) % p : (p - static_cast<u64>(-(v + 1)) % p - 1) % p;
  }

  static Fq zero(const Field& f) { return Fq(f, 0); }
  static Fq one(const Field& f) { return Fq(f, 1); }

  /// Class of x in F_p[x]/(m). In a prime field this is 0.
  static Fq generator(const Field& f) {
    Fq r(f, 0);
    if (f.degree() == 1) {
      r.c_[0] = (f.characteristic() - f.modulus()[0]) % f.characteristic();
    } else {
      r.c_[1] = 1;
    }
    return r;
  }

  /// Element whose coefficients are the base-p digits of idx (idx < q).
  static Fq from_index(const Field& f, u64 idx) {
    if (idx >= f.order()) throw FieldError("element index out of range for F_" + f.to_string());
    Fq r(f, 0);
    const u64 p = f.characteristic();
    for (int i = 0; i < f.degree(); ++i) {
      r.c_[i] = idx % p;
      idx /= p;
    }
    return r;
  }

  static Fq from_coeffs(const Field& f, std::span<const u64> coeffs) {
    if (static_cast<int>(coeffs.size()) > f.degree()) throw FieldError("too many coefficients for F_" + f.to_string());
    Fq r(f, 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) r.c_[i] = coeffs[i] % f.characteristic();
    return r;
  }

  bool attached() const noexcept { return f_ != nullptr; }
  const Field& field() const { return *f_; }
  u64 coeff(int i) const { return c_[i]; }
  std::span<const u64> coeffs() const { return {c_.data(), static_cast<std::size_t>(f_->degree())}; }

  bool is_zero() const noexcept {
    for (int i = 0; i < f_->degree(); ++i)
      if (c_[i]) return false;
    return true;
  }
  bool is_one() const noexcept {
    if (c_[0] != 1) return false;
    for (int i = 1; i < f_->degree(); ++i)
      if (c_[i]) return false;
    return true;
  }

  /// Lies in the prime subfield.
  bool is_prime_subfield() const noexcept {
    for (int i = 1; i < f_->degree(); ++i)
      if (c_[i]) return false;
    return true;
  }

  /// c_0 + c_1 p + ... ; a bijection onto [0, q).
  u64 index() const noexcept {
    u64 v = 0;
    const u64 p = f_->characteristic();
    for (int i = f_->degree() - 1; i >= 0; --i) v = v * p + c_[i];
    return v;
  }

  friend bool operator==(const Fq& a, const Fq& b) {
    if (a.f_ != b.f_) return false;
    for (int i = 0; i < a.f_->degree(); ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  /// Canonical order: by index.
  friend std::strong_ordering operator<=>(const Fq& a, const Fq& b) {
    a.check_same(b);
    for (int i = a.f_->degree() - 1; i >= 0; --i) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] <=> b.c_[i];
    }
    return std::strong_ordering::equal;
  }

  Fq& operator+=(const Fq& o) {
    check_same(o);
    const u64 p = f_->characteristic();
    for (int i = 0; i < f_->degree(); ++i) c_[i] = arith::addmod(c_[i], o.c_[i], p);
    return *this;
  }
  Fq& operator-=(const Fq& o) {
    check_same(o);
    const u64 p = f_->characteristic();
    for (int i = 0; i < f_->degree(); ++i) c_[i] = arith::submod(c_[i], o.c_[i], p);
    return *this;
  }
  Fq& operator*=(const Fq& o) {
    check_same(o);
    multiply_by(o);
    return *this;
  }
  Fq& operator/=(const Fq& o) { return *this *= o.inv(); }

  friend Fq operator+(Fq a, const Fq& b) { return a += b; }
  friend Fq operator-(Fq a, const Fq& b) { return a -= b; }
  friend Fq operator*(Fq a, const Fq& b) { return a *= b; }
  friend Fq operator/(Fq a, const Fq& b) { return a /= b; }
  Fq operator-() const {
    Fq r = *this;
    const u64 p = f_->characteristic();
    for (int i = 0; i < f_->degree(); ++i) r.c_[i] = r.c_[i] ? p - r.c_[i] : 0;
    return r;
  }

  /// this += s * o for s in the prime field.
  Fq& add_scaled(const Fq& o, u64 s) {
    check_same(o);
    const u64 p = f_->characteristic();
    for (int i = 0; i < f_->degree(); ++i) c_[i] = arith::addmod(c_[i], arith::mulmod(o.c_[i], s, p), p);
    return *this;
  }

  Fq inv() const;

  Fq pow(u64 e) const {
    Fq r = one(*f_);
    Fq b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  /// x -> x^p
  Fq frobenius() const { return pow(f_->characteristic()); }

  bool is_square() const { return is_zero() || pow((f_->order() - 1) / 2).is_one(); }

  /// A square root, if one exists in this field (Tonelli-Shanks).
  std::optional<Fq> sqrt() const;

  /// Multiplicative order of a nonzero element.
  u64 multiplicative_order() const;

 private:
  void check_same(const Fq& o) const {
    if (f_ != o.f_) throw FieldError("arithmetic between elements of different fields");
  }

  void multiply_by(const Fq& o) {
    const int k = f_->degree();
    const u64 p = f_->characteristic();
    if (k == 1) {
      c_[0] = arith::mulmod(c_[0], o.c_[0], p);
      return;
    }
    if (p < (u64{1} << 26)) {
      multiply_small(o, k, p);
      return;
    }
    // k >= 2 forces p < 2^31, so every product fits in 62 bits.
    std::array<u128, 2 * kMaxExtensionDegree> acc;
    std::fill_n(acc.begin(), 2 * k - 1, u128{0});
    for (int i = 0; i < k; ++i) {
      if (!c_[i]) continue;
      for (int j = 0; j < k; ++j) acc[i + j] += static_cast<u128>(c_[i] * o.c_[j]);
    }
    const auto& m = f_->modulus();
    for (int i = 2 * k - 2; i >= k; --i) {
      const u64 t = static_cast<u64>(acc[i] % p);
      if (!t) continue;
      for (int j = 0; j < k; ++j) {
        if (m[j]) acc[i - k + j] += static_cast<u128>(t * (p - m[j]));
      }
    }
    for (int i = 0; i < k; ++i) c_[i] = static_cast<u64>(acc[i] % p);
  }

  // p < 2^26: each slot collects at most 2k < 2^7 terms below 2^52, so u64 suffices.
  void multiply_small(const Fq& o, int k, u64 p) {
    std::array<u64, 2 * kMaxExtensionDegree> acc;
    std::fill_n(acc.begin(), 2 * k - 1, u64{0});
    for (int i = 0; i < k; ++i) {
      if (!c_[i]) continue;
      for (int j = 0; j < k; ++j) acc[i + j] += c_[i] * o.c_[j];
    }
    const auto& m = f_->modulus();
    for (int i = 2 * k - 2; i >= k; --i) {
      const u64 t = acc[i] % p;
      if (!t) continue;
      for (int j = 0; j < k; ++j) acc[i - k + j] += t * (p - m[j]);
    }
    for (int i = 0; i < k; ++i) c_[i] = acc[i] % p;
  }

  const Field* f_ = nullptr;
  std::array<u64, kMaxExtensionDegree> c_{};
};

inline Fq Fq::inv() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  const int k = f_->degree();
  const u64 p = f_->characteristic();
  if (k == 1) {
    Fq r = *this;
    r.c_[0] = arith::invmod(c_[0], p);
    return r;
  }
  // Extended Euclid in F_p[x] on (modulus, a); only the cofactor of a is tracked.
  using Buf = std::array<u64, kMaxExtensionDegree + 1>;
  struct P {
    Buf c{};
    int deg = -1;
    void fix() {
      while (deg >= 0 && c[deg] == 0) --deg;
    }
  };
  P r0, r1, s0, s1;
  const auto& m = f_->modulus();
  for (int i = 0; i <= k; ++i) r0.c[i] = m[i];
  r0.deg = k;
  for (int i = 0; i < k; ++i) r1.c[i] = c_[i];
  r1.deg = k - 1;
  r1.fix();
  s1.c[0] = 1;
  s1.deg = 0;
  while (r1.deg > 0) {
    // r0 = q*r1 + r, s_new = s0 - q*s1
    P q;
    q.deg = r0.deg - r1.deg;
    const u64 inv_lead = arith::invmod(r1.c[r1.deg], p);
    while (r0.deg >= r1.deg) {
      const u64 t = arith::mulmod(r0.c[r0.deg], inv_lead, p);
      const int shift = r0.deg - r1.deg;
      q.c[shift] = t;
      for (int j = 0; j <= r1.deg; ++j) {
        r0.c[shift + j] = arith::submod(r0.c[shift + j], arith::mulmod(t, r1.c[j], p), p);
      }
      r0.fix();
    }
    q.fix();
    P s_new = s0;
    for (int i = 0; i <= q.deg; ++i) {
      if (!q.c[i]) continue;
      for (int j = 0; j <= s1.deg; ++j) {
        s_new.c[i + j] = arith::submod(s_new.c[i + j], arith::mulmod(q.c[i], s1.c[j], p), p);
      }
    }
    s_new.deg = std::max(s0.deg, q.deg + s1.deg);
    s_new.fix();
    std::swap(r0, r1);  // r1 now holds the remainder
    s0 = s1;
    s1 = s_new;
  }
  // r1 is a nonzero constant
  const u64 inv_c = arith::invmod(r1.c[0], p);
  Fq r(*f_, 0);
  for (int i = 0; i <= s1.deg && i < k; ++i) r.c_[i] = arith::mulmod(s1.c[i], inv_c, p);
  return r;
}

inline std::optional<Fq> Fq::sqrt() const {
  if (is_zero()) return *this;
  const u64 q = f_->order();
  if (!is_square()) return std::nullopt;
  u64 s = 0, t = q - 1;
  while ((t & 1) == 0) {
    t >>= 1;
    ++s;
  }
  // Smallest-index non-residue.
  Fq z;
  for (u64 idx = 2; idx < q; ++idx) {
    Fq cand = from_index(*f_, idx);
    if (!cand.is_square()) {
      z = cand;
      break;
    }
  }
  u64 m = s;
  Fq c = z.pow(t);
  Fq x = pow((t + 1) / 2);
  Fq b = pow(t);
  while (!b.is_one()) {
    u64 i = 0;
    Fq b2 = b;
    while (!b2.is_one()) {
      b2 *= b2;
      ++i;
    }
    Fq f = c;
    for (u64 j = 0; j + 1 < m - i; ++j) f *= f;
    x *= f;
    c = f * f;
    b *= c;
    m = i;
  }
  return x;
}

inline u64 Fq::multiplicative_order() const {
  if (is_zero()) throw std::domain_error("multiplicative order of zero");
  u64 n = f_->order() - 1;
  for (auto [r, e] : arith::factorize(n)) {
    for (int i = 0; i < e; ++i) {
      if (pow(n / r).is_one()) {
        n /= r;
      } else {
        break;
      }
    }
  }
  return n;
}

inline std::ostream& operator<<(std::ostream& os, const Fq& a) { return os << a.index(); }

/// Element of exact multiplicative order n (n must divide q - 1); the one
/// reached from the smallest-index base element.
inline Fq root_of_unity(const Field& f, u64 n) {
  const u64 q = f.order();
  if (n == 0 || (q - 1) % n != 0) {
    throw FieldError("F_" + f.to_string() + " has no primitive " + std::to_string(n) + "-th root of unity");
  }
  const auto primes = arith::prime_divisors(n);
  for (u64 idx = 1; idx < q; ++idx) {
    Fq z = Fq::from_index(f, idx).pow((q - 1) / n);
    bool exact = true;
    for (u64 r : primes) {
      if (z.pow(n / r).is_one()) {
        exact = false;
        break;
      }
    }
    if (exact) return z;
  }
  throw InternalError("root_of_unity: search exhausted");
}

/// Generator of the multiplicative group.
inline Fq primitive_element(const Field& f) { return root_of_unity(f, f.order() - 1); }

}  // namespace hyperpic

template <>
struct std::hash<hyperpic::Fq> {
  std::size_t operator()(const hyperpic::Fq& a) const noexcept { return std::hash<std::uint64_t>{}(a.index()); }
};

#endif  // HYPERPIC_FIELD_HPP
