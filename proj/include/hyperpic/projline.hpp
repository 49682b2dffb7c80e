#ifndef HYPERPIC_PROJLINE_HPP
#define HYPERPIC_PROJLINE_HPP

// Points of P^1 over a finite field and the actions of GL_2 and PGL_2.

#include <array>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hyperpic/embed.hpp"
#include "hyperpic/field.hpp"

namespace hyperpic {

/// (x : y), normalized to (a : 1) or (1 : 0).
class ProjPoint {
 public:
  ProjPoint(const Fq& x, const Fq& y) : x_(x), y_(y) {
    if (&x.field() != &y.field()) throw FieldError("projective point with coordinates in different fields");
    if (y_.is_zero()) {
      if (x_.is_zero()) throw DomainError("(0 : 0) is not a point of P^1");
      x_ = Fq::one(x.field());
    } else if (!y_.is_one()) {
      x_ /= y_;
      y_ = Fq::one(x.field());
    }
  }

  static ProjPoint affine(const Fq& a) { return ProjPoint(a, Fq::one(a.field())); }
  static ProjPoint infinity(const Field& f) { return ProjPoint(Fq::one(f), Fq::zero(f)); }

  const Field& field() const { return x_.field(); }
  const Fq& x() const { return x_; }
  const Fq& y() const { return y_; }
  bool is_infinity() const { return y_.is_zero(); }

  /// Index of the affine coordinate, or q for the point at infinity.
  u64 key() const { return is_infinity() ? field().order() : x_.index(); }

  ProjPoint embedded(const Field& target) const { return ProjPoint(embed(x_, target), embed(y_, target)); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  friend std::strong_ordering operator<=>(const ProjPoint& a, const ProjPoint& b) {
    if (&a.field() != &b.field()) throw FieldError("comparing points over different fields");
    return a.key() <=> b.key();
  }

 private:
  Fq x_, y_;
};

/// "inf" or the index of the affine coordinate.
inline std::string to_string(const ProjPoint& p) { return p.is_infinity() ? "inf" : std::to_string(p.x().index()); }

inline std::ostream& operator<<(std::ostream& os, const ProjPoint& p) { return os << to_string(p); }

/// Parses "inf" or an element literal (see parse_element) into a point of P^1(f).
ProjPoint parse_point(std::string_view s, const Field& f);

/// All q + 1 points of P^1(f), ascending.
inline std::vector<ProjPoint> projective_line(const Field& f) {
  std::vector<ProjPoint> out;
  out.reserve(f.order() + 1);
  for (u64 i = 0; i < f.order(); ++i) out.push_back(ProjPoint::affine(Fq::from_index(f, i)));
  out.push_back(ProjPoint::infinity(f));
  return out;
}

/// An invertible 2x2 matrix [[a, b], [c, d]].
class LinearMap {
 public:
  LinearMap(const Fq& a, const Fq& b, const Fq& c, const Fq& d) : m_{a, b, c, d} {
    for (const auto& e : m_) {
      if (&e.field() != &a.field()) throw FieldError("matrix entries in different fields");
    }
    if (det().is_zero()) throw DomainError("singular matrix");
  }

  static LinearMap identity(const Field& f) { return diag(Fq::one(f), Fq::one(f)); }
  static LinearMap diag(const Fq& s, const Fq& t) { return LinearMap(s, Fq::zero(s.field()), Fq::zero(s.field()), t); }

  const Field& field() const { return m_[0].field(); }
  const Fq& a() const { return m_[0]; }
  const Fq& b() const { return m_[1]; }
  const Fq& c() const { return m_[2]; }
  const Fq& d() const { return m_[3]; }
  const std::array<Fq, 4>& entries() const { return m_; }

  Fq det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  LinearMap inverse() const {
    const Fq inv = det().inv();
    return LinearMap(m_[3] * inv, -m_[1] * inv, -m_[2] * inv, m_[0] * inv);
  }

  LinearMap embedded(const Field& target) const {
    return LinearMap(embed(m_[0], target), embed(m_[1], target), embed(m_[2], target), embed(m_[3], target));
  }

  friend LinearMap operator*(const LinearMap& l, const LinearMap& r) {
    return LinearMap(l.a() * r.a() + l.b() * r.c(), l.a() * r.b() + l.b() * r.d(), l.c() * r.a() + l.d() * r.c(),
                     l.c() * r.b() + l.d() * r.d());
  }
  friend bool operator==(const LinearMap& l, const LinearMap& r) { return l.m_ == r.m_; }

 private:
  std::array<Fq, 4> m_;
};

/// Element of PGL_2: a matrix modulo scalars, scaled so that its first nonzero
/// entry (in the order a, b, c, d) is 1. Equality is entry-wise.
class MoebiusMap {
 public:
  explicit MoebiusMap(const LinearMap& l) : m_(l.entries()) { normalize(); }
  MoebiusMap(const Fq& a, const Fq& b, const Fq& c, const Fq& d) : MoebiusMap(LinearMap(a, b, c, d)) {}

  static MoebiusMap identity(const Field& f) { return MoebiusMap(LinearMap::identity(f)); }

  const Field& field() const { return m_[0].field(); }
  const std::array<Fq, 4>& entries() const { return m_; }
  LinearMap lift() const { return LinearMap(m_[0], m_[1], m_[2], m_[3]); }

  bool is_identity() const { return m_[1].is_zero() && m_[2].is_zero() && m_[0] == m_[3]; }

  ProjPoint operator()(const ProjPoint& p) const {
    if (&p.field() != &field()) throw FieldError("Moebius map and point over different fields");
    return ProjPoint(m_[0] * p.x() + m_[1] * p.y(), m_[2] * p.x() + m_[3] * p.y());
  }

  MoebiusMap inverse() const { return MoebiusMap(m_[3], -m_[1], -m_[2], m_[0]); }

  MoebiusMap embedded(const Field& target) const { return MoebiusMap(lift().embedded(target)); }

  /// Order in PGL_2; throws if it exceeds `bound`.
  u64 order(u64 bound = 1u << 20) const {
    MoebiusMap acc = *this;
    for (u64 n = 1; n <= bound; ++n) {
      if (acc.is_identity()) return n;
      acc = acc * *this;
    }
    throw BudgetError("element order exceeds bound");
  }

  /// Lexicographic by entry indices.
  auto key() const { return std::make_tuple(m_[0].index(), m_[1].index(), m_[2].index(), m_[3].index()); }

  friend MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r) { return MoebiusMap(l.lift() * r.lift()); }
  friend bool operator==(const MoebiusMap& l, const MoebiusMap& r) { return l.m_ == r.m_; }
  friend bool operator<(const MoebiusMap& l, const MoebiusMap& r) { return l.key() < r.key(); }

 private:
  void normalize() {
    for (const auto& e : m_) {
      if (!e.is_zero()) {
        if (e.is_one()) return;
        const Fq inv = e.inv();
        for (auto& x : m_) x *= inv;
        return;
      }
    }
  }

  std::array<Fq, 4> m_;
};

inline std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) {
  const auto& e = m.entries();
  return os << "[[" << e[0] << "," << e[1] << "],[" << e[2] << "," << e[3] << "]]";
}

inline ProjPoint act_point(const MoebiusMap& m, const ProjPoint& p) { return m(p); }

/// g * m * g^{-1}
inline MoebiusMap conjugate(const MoebiusMap& g, const MoebiusMap& m) { return g * m * g.inverse(); }

namespace detail {

// Map sending (p1, p2, p3) to (0, 1, inf): P -> (l1(P) l3(p2) : l3(P) l1(p2)) with
// l_i(P) = det[P, p_i] = x y_i - y x_i.
inline LinearMap to_standard_frame(const ProjPoint& p1, const ProjPoint& p2, const ProjPoint& p3) {
  auto ell = [](const ProjPoint& at, const ProjPoint& pi) { return at.x() * pi.y() - at.y() * pi.x(); };
  const Fq s = ell(p2, p3);
  const Fq t = ell(p2, p1);
  return LinearMap(s * p1.y(), -(s * p1.x()), t * p3.y(), -(t * p3.x()));
}

}  // namespace detail

/// The unique Moebius map with m(src[i]) = dst[i]; each triple must consist of
/// distinct points over one field.
inline MoebiusMap moebius_from_triples(const std::array<ProjPoint, 3>& src, const std::array<ProjPoint, 3>& dst) {
  for (const auto* t : {&src, &dst}) {
    const auto& v = *t;
    if (v[0] == v[1] || v[0] == v[2] || v[1] == v[2]) throw DomainError("triple contains a repeated point");
  }
  const Field& f = src[0].field();
  for (const auto& p : src)
    if (&p.field() != &f) throw FieldError("points over different fields");
  for (const auto& p : dst)
    if (&p.field() != &f) throw FieldError("points over different fields");
  const LinearMap a = detail::to_standard_frame(src[0], src[1], src[2]);
  const LinearMap b = detail::to_standard_frame(dst[0], dst[1], dst[2]);
  return MoebiusMap(b.inverse() * a);
}

/// Roots in P^1(f) of A x^2 + B x y + C y^2 (not all zero). nullopt if the form
/// does not split over f.
inline std::optional<std::vector<ProjPoint>> binary_quadratic_roots(const Fq& A, const Fq& B, const Fq& C) {
  const Field& f = A.field();
  if (A.is_zero() && B.is_zero() && C.is_zero()) throw DomainError("zero quadratic form");
  std::vector<ProjPoint> out;
  if (A.is_zero()) {
    out.push_back(ProjPoint::infinity(f));
    if (!B.is_zero()) out.push_back(ProjPoint(-C, B));
  } else {
    const Fq disc = B * B - Fq(f, 4) * A * C;
    const Fq two_a = Fq(f, 2) * A;
    if (disc.is_zero()) {
      out.push_back(ProjPoint::affine(-B / two_a));
    } else {
      auto s = disc.sqrt();
      if (!s) return std::nullopt;
      out.push_back(ProjPoint::affine((-B + *s) / two_a));
      out.push_back(ProjPoint::affine((-B - *s) / two_a));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Fixed points of a non-identity map, computed in `ext` (which must contain
/// the map's field and split the fixed-point quadratic). Two points for a
/// semisimple map with distinct eigenvalues, one for a parabolic map.
inline std::vector<ProjPoint> fixed_points(const MoebiusMap& m, const Field& ext) {
  if (m.is_identity()) throw DomainError("the identity fixes every point");
  const MoebiusMap e = m.embedded(ext);
  const auto& [a, b, c, d] = e.entries();
  // (a x + b y) y = (c x + d y) x  <=>  c x^2 + (d - a) x y - b y^2 = 0
  auto roots = binary_quadratic_roots(c, d - a, -b);
  if (!roots) throw FieldError("fixed points of the map do not lie in F_" + ext.to_string());
  return *roots;
}

/// Element literal: a non-negative index (base-p digits of the coefficients) or
/// a signed integer in the prime field. Accepts ASCII '-' and U+2212.
inline Fq parse_element(std::string_view s, const Field& f) {
  std::string t(s);
  bool neg = false;
  if (t.rfind("-", 0) == 0) {
    neg = true;
    t = t.substr(1);
  } else if (t.rfind("\xE2\x88\x92", 0) == 0) {
    neg = true;
    t = t.substr(3);
  }
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("malformed field element '" + std::string(s) + "'");
  }
  const u64 v = std::stoull(t);
  if (neg) return -Fq(f, static_cast<i64>(v % f.characteristic()));
  if (v >= f.order()) throw DomainError("element index " + t + " out of range for F_" + f.to_string());
  return Fq::from_index(f, v);
}

inline ProjPoint parse_point(std::string_view s, const Field& f) {
  if (s == "inf" || s == "\xE2\x88\x9E") return ProjPoint::infinity(f);
  return ProjPoint::affine(parse_element(s, f));
}

}  // namespace hyperpic

#endif  // HYPERPIC_PROJLINE_HPP
