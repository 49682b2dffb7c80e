#ifndef HYPERPIC_BINFORM_HPP
#define HYPERPIC_BINFORM_HPP

// Binary forms f(X, Y) = sum_i c_i X^i Y^{n-i} and their root divisors.
//
// Forms are affine objects: f and 2f are different forms. Use projectivized()
// or projectively_equal() to compare classes in the projective space of forms.

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperpic/embed.hpp"
#include "hyperpic/poly.hpp"
#include "hyperpic/projline.hpp"

namespace hyperpic {

inline constexpr int kDefaultMaxSplittingDegree = 60;

class BinaryForm {
 public:
  BinaryForm(const Field& f, std::vector<Fq> coeffs) : f_(&f), c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("binary form needs at least one coefficient");
    bool nonzero = false;
    for (const auto& a : c_) {
      if (&a.field() != f_) throw FieldError("form coefficient from a different field");
      nonzero = nonzero || !a.is_zero();
    }
    if (!nonzero) throw DomainError("the zero form is not allowed");
  }

  /// Coefficients given as signed integers in the prime subfield.
  static BinaryForm from_ints(const Field& f, const std::vector<i64>& coeffs) {
    std::vector<Fq> c;
    for (i64 v : coeffs) c.emplace_back(f, v);
    return BinaryForm(f, std::move(c));
  }

  /// scale * prod (y_i X - x_i Y) over the given points.
  static BinaryForm from_roots(const std::vector<ProjPoint>& pts, const Fq& scale) {
    const Field& f = scale.field();
    std::vector<Fq> acc{scale};
    for (const auto& p : pts) {
      if (&p.field() != &f) throw FieldError("root over a different field");
      // multiply by (y X - x Y): shifts X-degree up with y, keeps with -x
      std::vector<Fq> next(acc.size() + 1, Fq::zero(f));
      for (std::size_t i = 0; i < acc.size(); ++i) {
        next[i + 1] += acc[i] * p.y();
        next[i] -= acc[i] * p.x();
      }
      acc = std::move(next);
    }
    return BinaryForm(f, std::move(acc));
  }

  const Field& field() const { return *f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// (n - 2) / 2 for a form of even degree n.
  int genus() const { return (degree() - 2) / 2; }
  const std::vector<Fq>& coeffs() const { return c_; }
  const Fq& coeff(int i) const { return c_.at(i); }

  /// f(x, 1)
  Poly dehomogenize() const { return Poly(*f_, c_); }

  Fq eval(const ProjPoint& p) const {
    Fq r = Fq::zero(*f_);
    Fq ypow = Fq::one(*f_);
    // Horner in x with y powers: sum c_i x^i y^{n-i}
    for (int i = degree(); i >= 0; --i) {
      r = r * p.x() + c_[i] * ypow;
      ypow *= p.y();
    }
    return r;
  }

  BinaryForm embedded(const Field& target) const {
    std::vector<Fq> c;
    for (const auto& a : c_) c.push_back(embed(a, target));
    return BinaryForm(target, std::move(c));
  }

  /// Scaled so that the first nonzero coefficient is 1.
  BinaryForm projectivized() const {
    for (const auto& a : c_) {
      if (!a.is_zero()) return scaled(a.inv());
    }
    return *this;
  }

  BinaryForm scaled(const Fq& s) const {
    std::vector<Fq> c = c_;
    for (auto& a : c) a *= s;
    return BinaryForm(*f_, std::move(c));
  }

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.f_ == b.f_ && a.c_ == b.c_; }

 private:
  const Field* f_;
  std::vector<Fq> c_;
};

inline bool projectively_equal(const BinaryForm& a, const BinaryForm& b) {
  return a.projectivized() == b.projectivized();
}

/// "c0,c1,...,cn@p^k"
inline std::string to_string(const BinaryForm& f) {
  std::string s;
  for (int i = 0; i <= f.degree(); ++i) s += (i ? "," : "") + std::to_string(f.coeff(i).index());
  return s + "@" + f.field().to_string();
}

inline std::ostream& operator<<(std::ostream& os, const BinaryForm& f) { return os << to_string(f); }

/// Parses "c0,...,cn@p^k"; coefficients use the element literal syntax.
inline BinaryForm parse_form(std::string_view s) {
  const auto at = s.rfind('@');
  if (at == std::string_view::npos) throw DomainError("form literal needs '@p^k': '" + std::string(s) + "'");
  const Field& f = parse_field(s.substr(at + 1));
  std::vector<Fq> c;
  std::string_view body = s.substr(0, at);
  while (true) {
    const auto comma = body.find(',');
    std::string_view tok = body.substr(0, comma);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    c.push_back(parse_element(tok, f));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return BinaryForm(f, std::move(c));
}

/// Checks that f has degree 2g + 2 for some g >= 2 and returns g.
inline int require_hyperelliptic_degree(const BinaryForm& f) {
  const int n = f.degree();
  if (n < 6 || n % 2 != 0) throw DomainError("form of degree " + std::to_string(n) + " is not of degree 2g+2 with g >= 2");
  return f.genus();
}

namespace detail {

// Coefficients of (u X + v Y)^e as a vector indexed by the power of X.
inline std::vector<Fq> linear_power(const Fq& u, const Fq& v, int e) {
  std::vector<Fq> acc{Fq::one(u.field())};
  for (int k = 0; k < e; ++k) {
    std::vector<Fq> next(acc.size() + 1, Fq::zero(u.field()));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i] * u;
      next[i] += acc[i] * v;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

/// (A . f)(X, Y) = f(A^{-1} (X, Y)).
inline BinaryForm act_form_gl2(const LinearMap& A, const BinaryForm& f) {
  if (&A.field() != &f.field()) throw FieldError("matrix and form over different fields");
  const LinearMap inv = A.inverse();
  // X' = a X + b Y, Y' = c X + d Y
  const int n = f.degree();
  std::vector<std::vector<Fq>> xp(n + 1), yp(n + 1);
  for (int e = 0; e <= n; ++e) {
    xp[e] = detail::linear_power(inv.a(), inv.b(), e);
    yp[e] = detail::linear_power(inv.c(), inv.d(), e);
  }
  std::vector<Fq> out(n + 1, Fq::zero(f.field()));
  for (int i = 0; i <= n; ++i) {
    if (f.coeff(i).is_zero()) continue;
    const auto& u = xp[i];
    const auto& w = yp[n - i];
    for (std::size_t s = 0; s < u.size(); ++s) {
      if (u[s].is_zero()) continue;
      const Fq cu = f.coeff(i) * u[s];
      for (std::size_t t = 0; t < w.size(); ++t) out[s + t] += cu * w[t];
    }
  }
  return BinaryForm(f.field(), std::move(out));
}

/// PGL_2 action through the normalized lift; well defined on classes.
inline BinaryForm act_form(const MoebiusMap& m, const BinaryForm& f) { return act_form_gl2(m.lift(), f); }

/// True iff f has deg f distinct roots on P^1 over the algebraic closure:
/// the dehomogenization is squarefree and (1:0) is at most a simple root.
/// Over a finite field gcd(g, g') = 1 is exact, including when g' vanishes
/// identically (then g is a p-th power and the gcd is g itself).
inline bool is_smooth(const BinaryForm& f) {
  const Poly g = f.dehomogenize();
  if (f.degree() - g.degree() >= 2) return false;
  if (g.degree() <= 0) return true;
  return gcd(g, g.derivative()).degree() == 0;
}

/// Roots of a form with multiplicity, over a splitting field.
struct RootDivisor {
  const Field* field;
  std::vector<ProjPoint> points;  // ascending, repeated by multiplicity

  const Field& splitting_field() const { return *field; }
  std::size_t size() const { return points.size(); }

  std::vector<ProjPoint> distinct() const {
    std::vector<ProjPoint> d = points;
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  }

  int multiplicity(const ProjPoint& p) const {
    return static_cast<int>(std::count(points.begin(), points.end(), p));
  }
};

/// Degree [K : F] of the splitting field of f over its field of definition.
inline int splitting_degree(const BinaryForm& f) {
  const Poly g = f.dehomogenize();
  return g.degree() > 0 ? splitting_degree(g) : 1;
}

/// All deg f roots with multiplicity over the splitting field, which is
/// F_{p^{kL}} with L the lcm of the irreducible factor degrees.
inline RootDivisor roots(const BinaryForm& f, int max_splitting_degree = kDefaultMaxSplittingDegree) {
  const Field& base = f.field();
  const int split = splitting_degree(f);
  if (split > max_splitting_degree) {
    throw BudgetError("splitting degree " + std::to_string(split) + " exceeds the cap " +
                      std::to_string(max_splitting_degree));
  }
  const Field* k = nullptr;
  try {
    k = &make_field(base.characteristic(), base.degree() * split);
  } catch (const FieldError& e) {
    throw BudgetError(std::string("splitting field too large: ") + e.what());
  }
  const BinaryForm fk = f.embedded(*k);
  const Poly g = fk.dehomogenize();
  RootDivisor out{k, {}};
  if (g.degree() > 0 && gcd(g, g.derivative()).degree() == 0) {
    for (const auto& r : split_roots(g)) out.points.push_back(ProjPoint::affine(r));
  } else if (g.degree() > 0) {
    for (const auto& r : distinct_roots(g)) {
      const int m = root_multiplicity(g, r);
      for (int i = 0; i < m; ++i) out.points.push_back(ProjPoint::affine(r));
    }
  }
  for (int i = 0; i < f.degree() - g.degree(); ++i) out.points.push_back(ProjPoint::infinity(*k));
  if (static_cast<int>(out.points.size()) != f.degree()) throw InternalError("root count mismatch");
  return out;
}

}  // namespace hyperpic

#endif  // HYPERPIC_BINFORM_HPP
