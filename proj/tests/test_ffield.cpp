#include <gtest/gtest.h>

#include <set>

#include "hyperpic/hyperpic.hpp"

using namespace hyperpic;

namespace {

// Coefficient vectors over F_p, low degree first.
using Vec = std::vector<u64>;

Vec vec_mod(Vec a, const Vec& m, u64 p) {
  while (a.size() >= m.size()) {
    const u64 t = a.back() % p;  // m is monic
    const std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) a[shift + j] = (a[shift + j] + p * p - t * m[j] % p) % p;
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// Trial division by every monic polynomial of degree 1..k/2.
bool irreducible_by_trial_division(const Vec& m, u64 p) {
  const int k = static_cast<int>(m.size()) - 1;
  for (int d = 1; 2 * d <= k; ++d) {
    u64 count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (u64 idx = 0; idx < count; ++idx) {
      Vec div(d + 1);
      u64 t = idx;
      for (int i = 0; i < d; ++i) {
        div[i] = t % p;
        t /= p;
      }
      div[d] = 1;
      if (vec_mod(m, div, p).empty()) return false;
    }
  }
  return true;
}

Vec first_irreducible_oracle(u64 p, int k) {
  u64 count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  for (u64 idx = 0; idx < count; ++idx) {
    Vec m(k + 1);
    u64 t = idx;
    for (int i = 0; i < k; ++i) {
      m[i] = t % p;
      t /= p;
    }
    m[k] = 1;
    if (irreducible_by_trial_division(m, p)) return m;
  }
  return {};
}

u64 order_by_repeated_multiplication(const Fq& a) {
  Fq x = a;
  u64 n = 1;
  while (!x.is_one()) {
    x *= a;
    ++n;
  }
  return n;
}

}  // namespace

TEST(FieldConstruction, PrimeFieldHasModulusX) {
  const Field& f = make_field(3, 1);
  EXPECT_EQ(f.modulus(), (Vec{0, 1}));
  EXPECT_EQ(f.order(), 3u);
  EXPECT_EQ(f.to_string(), "3^1");
}

TEST(FieldConstruction, F9UsesXSquaredPlusOne) {
  EXPECT_EQ(make_field(3, 2).modulus(), (Vec{1, 0, 1}));
}

TEST(FieldConstruction, ModulusIsFirstIrreducibleInScanOrder) {
  for (auto [p, k] : std::vector<std::pair<u64, int>>{{3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 2}, {3, 5}}) {
    SCOPED_TRACE(std::to_string(p) + "^" + std::to_string(k));
    EXPECT_EQ(make_field(p, k).modulus(), first_irreducible_oracle(p, k));
  }
}

TEST(FieldConstruction, RejectsBadParameters) {
  EXPECT_THROW(make_field(2, 1), FieldError);
  EXPECT_THROW(make_field(9, 1), FieldError);
  EXPECT_THROW(make_field(15, 1), FieldError);
  EXPECT_THROW(make_field(3, 0), FieldError);
  EXPECT_THROW(make_field(3, 40), FieldError);  // 3^40 > 2^62
  EXPECT_THROW(parse_field("4^1"), FieldError);
  EXPECT_THROW(parse_field("3^"), FieldError);
  EXPECT_THROW(parse_field("x^2"), FieldError);
  EXPECT_THROW(field_of_order(12), FieldError);
}

TEST(FieldConstruction, InterningAndParsing) {
  EXPECT_EQ(&make_field(5, 2), &make_field(5, 2));
  EXPECT_EQ(&parse_field("13^1"), &make_field(13, 1));
  EXPECT_EQ(&parse_field("13"), &make_field(13, 1));
  EXPECT_EQ(&parse_field("3^4"), &make_field(3, 4));
  EXPECT_EQ(&field_of_order(81), &make_field(3, 4));
}

TEST(FieldArithmetic, AxiomsOnRandomSamples) {
  for (const Field* f : {&make_field(3, 1), &make_field(101, 1), &make_field(3, 4), &make_field(5, 3), &make_field(13, 6),
                         &make_field(1'000'003, 1), &make_field(4'611'686'018'427'387'847ULL, 1)}) {
    SCOPED_TRACE(f->to_string());
    Rng rng(f->order());
    for (int t = 0; t < 200; ++t) {
      const Fq a = Fq::from_index(*f, rng.below(f->order()));
      const Fq b = Fq::from_index(*f, rng.below(f->order()));
      const Fq c = Fq::from_index(*f, rng.below(f->order()));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a - a, Fq::zero(*f));
      EXPECT_EQ(a + (-a), Fq::zero(*f));
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inv()).is_one());
        EXPECT_EQ(b / a * a, b);
      }
    }
  }
}

TEST(FieldArithmetic, EveryNonzeroElementInvertsExhaustively) {
  for (const Field* f : {&make_field(3, 2), &make_field(3, 3), &make_field(5, 2), &make_field(7, 2)}) {
    for (u64 i = 1; i < f->order(); ++i) {
      const Fq a = Fq::from_index(*f, i);
      EXPECT_TRUE((a * a.inv()).is_one()) << f->to_string() << " " << i;
    }
  }
  EXPECT_THROW(Fq::zero(make_field(3, 2)).inv(), std::domain_error);
}

TEST(FieldArithmetic, IndexRoundTrip) {
  const Field& f = make_field(5, 3);
  for (u64 i = 0; i < f.order(); ++i) EXPECT_EQ(Fq::from_index(f, i).index(), i);
}

TEST(FieldArithmetic, MixingFieldsThrows) {
  EXPECT_THROW(Fq::one(make_field(3, 1)) + Fq::one(make_field(5, 1)), FieldError);
}

TEST(Frobenius, FixesExactlyThePrimeField) {
  for (const Field* f : {&make_field(3, 4), &make_field(5, 3), &make_field(7, 2), &make_field(3, 1)}) {
    u64 fixed = 0;
    for (u64 i = 0; i < f->order(); ++i) {
      const Fq a = Fq::from_index(*f, i);
      if (a.frobenius() == a) ++fixed;
    }
    EXPECT_EQ(fixed, f->characteristic()) << f->to_string();
  }
}

TEST(Frobenius, IsARingAutomorphism) {
  const Field& f = make_field(5, 4);
  Rng rng(3);
  std::set<u64> image;
  for (u64 i = 0; i < f.order(); ++i) image.insert(Fq::from_index(f, i).frobenius().index());
  EXPECT_EQ(image.size(), f.order());
  for (int t = 0; t < 100; ++t) {
    const Fq a = Fq::from_index(f, rng.below(f.order()));
    const Fq b = Fq::from_index(f, rng.below(f.order()));
    EXPECT_EQ((a * b).frobenius(), a.frobenius() * b.frobenius());
    EXPECT_EQ((a + b).frobenius(), a.frobenius() + b.frobenius());
  }
}

TEST(FieldArithmetic, SquareRootsAndRootsOfUnity) {
  for (const Field* f : {&make_field(13, 1), &make_field(3, 4), &make_field(17, 2)}) {
    u64 squares = 0;
    for (u64 i = 0; i < f->order(); ++i) {
      const Fq a = Fq::from_index(*f, i);
      auto s = a.sqrt();
      EXPECT_EQ(s.has_value(), a.is_square());
      if (s) {
        EXPECT_EQ(*s * *s, a);
        ++squares;
      }
    }
    EXPECT_EQ(squares, (f->order() + 1) / 2);
  }
  const Fq z = root_of_unity(make_field(13, 1), 6);
  EXPECT_EQ(order_by_repeated_multiplication(z), 6u);
  EXPECT_EQ(z.multiplicative_order(), 6u);
  EXPECT_EQ(order_by_repeated_multiplication(primitive_element(make_field(3, 4))), 80u);
  EXPECT_THROW(root_of_unity(make_field(13, 1), 5), FieldError);
}

TEST(Embedding, PrimeSubfieldIsFixed) {
  const Field& f3 = make_field(3, 1);
  const Field& f9 = make_field(3, 2);
  EXPECT_TRUE(embed(Fq::one(f3), f9).is_one());
  EXPECT_EQ(embed(Fq(f3, 2), f9), Fq(f9, 2));
}

TEST(Embedding, GeneratorOfF9StarHasOrder8InF81) {
  const Fq g = primitive_element(make_field(3, 2));
  EXPECT_EQ(order_by_repeated_multiplication(g), 8u);
  EXPECT_EQ(order_by_repeated_multiplication(embed(g, make_field(3, 4))), 8u);
}

TEST(Embedding, IsARingHomomorphism) {
  for (auto [p, a, c] : std::vector<std::tuple<u64, int, int>>{{3, 2, 4}, {5, 2, 6}, {5, 3, 6}, {3, 3, 6}, {7, 2, 4}, {3, 4, 8}}) {
    const Field& src = make_field(p, a);
    const Field& dst = make_field(p, c);
    Rng rng(p * 100 + a * 10 + c);
    for (int t = 0; t < 50; ++t) {
      const Fq x = Fq::from_index(src, rng.below(src.order()));
      const Fq y = Fq::from_index(src, rng.below(src.order()));
      EXPECT_EQ(embed(x * y, dst), embed(x, dst) * embed(y, dst));
      EXPECT_EQ(embed(x + y, dst), embed(x, dst) + embed(y, dst));
      EXPECT_EQ(descend(embed(x, dst), src), x);
    }
  }
}

TEST(Embedding, ComposesToTheDirectEmbedding) {
  for (auto [p, a, b, c] : std::vector<std::tuple<u64, int, int, int>>{
           {3, 1, 2, 4}, {3, 2, 4, 8}, {5, 2, 4, 8}, {3, 2, 6, 12}, {5, 1, 3, 6}, {5, 2, 6, 12}, {3, 3, 6, 12}}) {
    const Field& fa = make_field(p, a);
    const Field& fb = make_field(p, b);
    const Field& fc = make_field(p, c);
    for (u64 i = 0; i < std::min<u64>(fa.order(), 200); ++i) {
      const Fq x = Fq::from_index(fa, i);
      EXPECT_EQ(embed(embed(x, fb), fc), embed(x, fc)) << p << " " << a << " " << b << " " << c;
    }
  }
}

TEST(Embedding, IncompatibleFieldsThrow) {
  EXPECT_THROW(embed(Fq::one(make_field(3, 2)), make_field(3, 3)), FieldError);
  EXPECT_THROW(embed(Fq::one(make_field(3, 1)), make_field(5, 2)), FieldError);
  EXPECT_FALSE(descend(Fq::generator(make_field(3, 2)), make_field(3, 1)).has_value());
}

TEST(Polynomials, FactorDegreesMatchRootCountsAndBruteForce) {
  const Field& f = make_field(7, 1);
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    std::vector<Fq> c;
    const int deg = 1 + static_cast<int>(rng.below(7));
    for (int i = 0; i < deg; ++i) c.push_back(Fq::from_index(f, rng.below(7)));
    c.push_back(Fq::one(f));
    const Poly g(f, c);
    // roots by exhaustive evaluation
    std::vector<Fq> brute;
    for (u64 i = 0; i < 7; ++i)
      if (g.eval(Fq::from_index(f, i)).is_zero()) brute.push_back(Fq::from_index(f, i));
    EXPECT_EQ(distinct_roots(g), brute);
    const auto degs = factor_degrees(g);
    EXPECT_EQ(static_cast<std::size_t>(std::count(degs.begin(), degs.end(), 1)), brute.size());
    // over the splitting field every distinct root is rational
    const Field& k = make_field(7, splitting_degree(g));
    std::vector<Fq> ck;
    for (const auto& a : g.coeffs()) ck.push_back(embed(a, k));
    int total = 0;
    for (int d : degs) total += d;
    EXPECT_EQ(static_cast<int>(distinct_roots(Poly(k, ck)).size()), total);
  }
}

TEST(Polynomials, RootsInLargeFieldUseSplitting) {
  const Field& f = make_field(1'000'003, 1);
  std::vector<ProjPoint> pts;
  std::vector<Fq> want;
  for (i64 v : {5, 17, 123456, 999999}) want.push_back(Fq(f, v));
  Poly g = Poly::constant(Fq::one(f));
  for (const auto& r : want) g = g * Poly(f, {-r, Fq::one(f)});
  g = g * Poly(f, {Fq::one(f), Fq::zero(f), Fq::one(f)});  // x^2 + 1, irreducible since p = 3 mod 4
  std::sort(want.begin(), want.end());
  EXPECT_EQ(distinct_roots(g), want);
  EXPECT_EQ(splitting_degree(g), 2);
}
