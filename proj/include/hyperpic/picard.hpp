#ifndef HYPERPIC_PICARD_HPP
#define HYPERPIC_PICARD_HPP

// Picard groups of the stack of hyperelliptic curves and its relatives, as
// cyclic groups Z/N. Classes are exponents of the generator G, the image of
// the character chi0 = det^{e0}. All statements reduce to arithmetic mod N.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hyperpic/binform.hpp"

namespace hyperpic {

enum class PicFlavor { StackH, StackD, CoarseCl, CoarsePic };

inline std::string flavor_name(PicFlavor f) {
  switch (f) {
    case PicFlavor::StackH: return "Pic(H_g stack)";
    case PicFlavor::StackD: return "Pic(D_2g+2)";
    case PicFlavor::CoarseCl: return "Cl(H_g)";
    case PicFlavor::CoarsePic: return "Pic(H_g)";
  }
  return "?";
}

inline void require_genus(int g) {
  if (g < 2) throw DomainError("genus must be at least 2, got " + std::to_string(g));
}

/// Exponent e0 with chi0 = det^{e0}: g+1 for even g, (g+1)/2 for odd g.
inline int generator_det_exponent(int g) {
  require_genus(g);
  return g % 2 == 0 ? g + 1 : (g + 1) / 2;
}

struct PicGroup {
  int genus;
  PicFlavor flavor;
  i64 order;
  std::optional<int> det_exponent;  // generator as a power of det, when it is a character
  std::string generator;
  std::string validity;
};

inline PicGroup pic_group(int g, PicFlavor flavor) {
  require_genus(g);
  const i64 base = 4 * static_cast<i64>(g) + 2;
  switch (flavor) {
    case PicFlavor::StackH:
      return {g, flavor, g % 2 == 0 ? base : 2 * base, generator_det_exponent(g),
              "G = pi_*(omega^{-(g+1)}((g-1)W)), the character det^" + std::to_string(generator_det_exponent(g)),
              "char does not divide 2g+2"};
    case PicFlavor::StackD:
      return {g, flavor, base, g + 1, "O(1), the character det^" + std::to_string(g + 1),
              "char does not divide 2g+2"};
    case PicFlavor::CoarseCl:
      return {g, flavor, g == 2 ? 5 : base, std::nullopt, "image of G",
              g == 2 ? "char != 2, 5" : "char does not divide (2g+1)(2g+2)"};
    case PicFlavor::CoarsePic:
      return {g, flavor, 1, std::nullopt, "0", "char does not divide (2g+1)(2g+2)"};
  }
  throw InternalError("unknown flavor");
}

/// An element G^exponent of a cyclic group of order n.
class PicClass {
 public:
  PicClass(i64 n, i64 exponent) : n_(n), e_(arith::mod_floor(exponent, n)) {
    if (n < 1) throw DomainError("group order must be positive");
  }

  i64 group_order() const { return n_; }
  i64 exponent() const { return e_; }
  /// Order of the class: n / gcd(e, n).
  i64 order() const { return n_ / std::gcd(e_, n_); }
  /// Index of the generated subgroup: gcd(e, n).
  i64 subgroup_index() const { return n_ / order(); }
  bool generates() const { return std::gcd(e_, n_) == 1; }

  friend PicClass operator+(const PicClass& a, const PicClass& b) {
    if (a.n_ != b.n_) throw DomainError("classes in different groups");
    return PicClass(a.n_, a.e_ + b.e_);
  }
  friend PicClass operator-(const PicClass& a) { return PicClass(a.n_, -a.e_); }
  friend PicClass operator*(i64 k, const PicClass& a) {
    return PicClass(a.n_, static_cast<i64>((static_cast<__int128>(k) * a.e_) % a.n_));
  }
  friend bool operator==(const PicClass&, const PicClass&) = default;

 private:
  i64 n_;
  i64 e_;
};

inline i64 stack_order(int g) { return pic_group(g, PicFlavor::StackH).order; }

struct DToH {
  int index;          // [Pic(H) : image of Pic(D)]
  PicClass image;     // image of the D-generator O(1) in Pic(H)
};

/// The pullback Pic(D_{2g+2}) -> Pic(H_g): an isomorphism for even g, index 2
/// for odd g, since det^{g+1} = (det^{(g+1)/2})^2.
inline DToH d_to_h_index(int g) {
  require_genus(g);
  const int e = (g + 1) / generator_det_exponent(g);
  return {e, PicClass(stack_order(g), e)};
}

/// O(1) on D_{2g+2} corresponds to det^{g+1}.
inline int o1_image(int g) {
  require_genus(g);
  return g + 1;
}

struct BundleSpec {
  int genus;
  i64 a, b;
  i64 m;                      // (a+b)g + b - a
  i64 g12_multiple;           // a(g-1) + b(g+1)
  std::optional<i64> rank;    // nullopt when m < 0
  bool flagged() const { return !rank.has_value(); }
};

/// h^0 of k g^1_2 on a genus-g hyperelliptic curve: k+1 for k <= g, 2k-g+1 above.
inline i64 g12_sections(int g, i64 k) {
  if (k < 0) return 0;
  return k <= g ? k + 1 : 2 * k - g + 1;
}

/// omega^a(bW) restricts on fibers to m(a,b) g^1_2; the pushforward has rank
/// h^0 of that. K = (g-1) g^1_2 and W = (g+1) g^1_2 give the second formula.
inline BundleSpec bundle_spec(int g, i64 a, i64 b) {
  require_genus(g);
  BundleSpec s{g, a, b, (a + b) * g + b - a, a * (g - 1) + b * (g + 1), std::nullopt};
  if (s.m != s.g12_multiple) throw InternalError("m(a,b) differs from the g^1_2 multiple");
  if (s.m >= 0) s.rank = g12_sections(g, s.m);
  return s;
}

/// T_{a,b} = det pi_*(omega^a(bW)) as a class in Pic(H_g).
inline PicClass t_ab(int g, i64 a, i64 b) {
  require_genus(g);
  const i64 m = (a + b) * g + b - a;
  if (m < 0) {
    throw DomainError("m(a,b) = " + std::to_string(m) + " < 0: pushforward not a bundle of the stated rank");
  }
  const bool even = g % 2 == 0;
  i64 num;
  if (m < g + 1) {
    num = -(a + b) * (m + 1);
  } else {
    num = (a + b - 1) * (g - m);
  }
  if (even) {
    if (num % 2 != 0) throw InternalError("odd numerator in the T_{a,b} exponent");
    num /= 2;
  }
  return PicClass(stack_order(g), num);
}

struct HodgeClass {
  PicClass cls;       // det pi_*(omega) = G^{g/2} (g even) or G^g (g odd)
  i64 index;          // index of the generated subgroup
  PicClass literal;   // T_{1,0}, which carries the opposite sign
};

inline HodgeClass hodge(int g) {
  require_genus(g);
  const PicClass c(stack_order(g), g % 2 == 0 ? g / 2 : g);
  const i64 idx = c.subgroup_index();
  if ((idx == 2) != (g % 4 == 0)) throw InternalError("Hodge index disagrees with the 4 | g criterion");
  return {c, idx, t_ab(g, 1, 0)};
}

struct TautologicalFacts {
  bool exists_over_some_open_subset;
  bool exists_over_Hg0;
  std::string reason;
};

inline TautologicalFacts tautological_family(int g) {
  require_genus(g);
  if (g % 2 == 1) {
    return {true, false,
            "Pic(H_g^0) -> Pic(H_g^0 stack) has index 2 for g odd, so the inclusion does not split"};
  }
  return {false, false, "no tautological family over any open subset for g even"};
}

struct CoarseTrivialReport {
  int genus;
  i64 n;  // order of Cl(H_g)
  std::string field1, field2;
  bool f1_smooth, f2_smooth;
  bool f1_fixed, f2_fixed;   // diag(zeta, 1) . f == f exactly
  bool characters_agree;     // zeta^{c(g+1)} = 1 matches the divisibility test for every c
  std::vector<i64> surviving_c;  // c in 1..n-1 with (2g+1) | c(g+1) and (2g+2) | c(g+1)
  bool trivial() const { return f1_smooth && f2_smooth && f1_fixed && f2_fixed && characters_agree && surviving_c.empty(); }
};

/// Smallest odd prime power q = 1 mod n whose characteristic avoids `bad`.
inline const Field& small_field_with_roots_of_unity(u64 n, u64 bad, u64 bound = 100'000'000) {
  for (u64 q = n + 1; q <= bound; q += n) {
    if (q % 2 == 0) continue;
    auto pk = arith::as_prime_power(q);
    if (!pk || bad % pk->first == 0) continue;
    return make_field(pk->first, pk->second);
  }
  throw FieldError("no admissible field with roots of unity of order " + std::to_string(n) + " below " +
                   std::to_string(bound));
}

/// f1 = X^{2g+1} Y - Y^{2g+2}
inline BinaryForm coarse_form_f1(const Field& k, int g) {
  std::vector<i64> c(2 * g + 3, 0);
  c[0] = -1;
  c[2 * g + 1] = 1;
  return BinaryForm::from_ints(k, c);
}

/// f2 = X^{2g+2} - Y^{2g+2}
inline BinaryForm coarse_form_f2(const Field& k, int g) {
  std::vector<i64> c(2 * g + 3, 0);
  c[0] = -1;
  c[2 * g + 2] = 1;
  return BinaryForm::from_ints(k, c);
}

/// diag(mu_{2g+1}, 1) stabilizes f1 and diag(mu_{2g+2}, 1) stabilizes f2, so a
/// character det^{c(g+1)} descending to H_g must be trivial on both groups.
/// No c in 1..n-1 passes, hence Pic(H_g) = 0. Fields default to the smallest
/// admissible ones.
inline CoarseTrivialReport pic_coarse_trivial(int g, const Field* k1 = nullptr, const Field* k2 = nullptr) {
  require_genus(g);
  const u64 n1 = 2 * g + 1, n2 = 2 * g + 2;
  const u64 bad = n1 * n2;
  if (!k1) k1 = &small_field_with_roots_of_unity(n1, bad);
  if (!k2) k2 = &small_field_with_roots_of_unity(n2, bad);
  for (const Field* k : {k1, k2}) {
    if (bad % k->characteristic() == 0) {
      throw FieldError("F_" + k->to_string() + ": characteristic divides (2g+1)(2g+2)");
    }
  }
  const Fq z1 = root_of_unity(*k1, n1);
  const Fq z2 = root_of_unity(*k2, n2);
  const BinaryForm f1 = coarse_form_f1(*k1, g);
  const BinaryForm f2 = coarse_form_f2(*k2, g);
  CoarseTrivialReport r{};
  r.genus = g;
  r.n = pic_group(g, PicFlavor::CoarseCl).order;
  r.field1 = k1->to_string();
  r.field2 = k2->to_string();
  r.f1_smooth = is_smooth(f1);
  r.f2_smooth = is_smooth(f2);
  r.f1_fixed = act_form_gl2(LinearMap::diag(z1, Fq::one(*k1)), f1) == f1;
  r.f2_fixed = act_form_gl2(LinearMap::diag(z2, Fq::one(*k2)), f2) == f2;
  r.characters_agree = true;
  for (i64 c = 1; c < r.n; ++c) {
    const u64 e = static_cast<u64>(c) * (g + 1);
    const bool div1 = e % n1 == 0, div2 = e % n2 == 0;
    // det(diag(zeta, 1)) = zeta, so the character value is zeta^{c(g+1)}
    const bool triv1 = z1.pow(e).is_one(), triv2 = z2.pow(e).is_one();
    if (div1 != triv1 || div2 != triv2) r.characters_agree = false;
    if (div1 && div2) r.surviving_c.push_back(c);
  }
  return r;
}

}  // namespace hyperpic

#endif  // HYPERPIC_PICARD_HPP
