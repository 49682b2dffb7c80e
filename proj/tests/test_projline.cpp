#include <gtest/gtest.h>

#include "hyperpic/hyperpic.hpp"

using namespace hyperpic;

namespace {

MoebiusMap random_map(const Field& f, Rng& rng) {
  while (true) {
    const Fq a = Fq::from_index(f, rng.below(f.order())), b = Fq::from_index(f, rng.below(f.order()));
    const Fq c = Fq::from_index(f, rng.below(f.order())), d = Fq::from_index(f, rng.below(f.order()));
    if (!(a * d - b * c).is_zero()) return MoebiusMap(a, b, c, d);
  }
}

// Projective equality by cross-multiplication, independent of normalization.
bool same_point(const ProjPoint& a, const ProjPoint& b) { return a.x() * b.y() == a.y() * b.x(); }

}  // namespace

TEST(ProjPoint, NormalizesAndOrders) {
  const Field& f = make_field(13, 1);
  EXPECT_EQ(ProjPoint(Fq(f, 10), Fq(f, 2)), ProjPoint::affine(Fq(f, 5)));
  EXPECT_EQ(ProjPoint(Fq(f, 7), Fq(f, 0)), ProjPoint::infinity(f));
  EXPECT_THROW(ProjPoint(Fq(f, 0), Fq(f, 0)), DomainError);
  const auto line = projective_line(f);
  ASSERT_EQ(line.size(), 14u);
  EXPECT_TRUE(std::is_sorted(line.begin(), line.end()));
  EXPECT_TRUE(line.back().is_infinity());
  EXPECT_EQ(parse_point("inf", f), ProjPoint::infinity(f));
  EXPECT_EQ(parse_point("-1", f), ProjPoint::affine(Fq(f, 12)));
}

TEST(ActPoint, NamedExamples) {
  const Field& f = make_field(13, 1);
  const ProjPoint five = ProjPoint::affine(Fq(f, 5));
  EXPECT_EQ(act_point(MoebiusMap::identity(f), five), five);
  const MoebiusMap inv_x(Fq(f, 0), Fq(f, 1), Fq(f, 1), Fq(f, 0));
  EXPECT_EQ(act_point(inv_x, ProjPoint::affine(Fq(f, 0))), ProjPoint::infinity(f));
  const Fq z = root_of_unity(f, 6);
  const MoebiusMap rot(LinearMap::diag(z, Fq::one(f)));
  EXPECT_EQ(act_point(rot, ProjPoint::affine(Fq::one(f))), ProjPoint::affine(z));
}

TEST(ActPoint, IsAGroupAction) {
  for (const Field* f : {&make_field(7, 1), &make_field(3, 3), &make_field(101, 1)}) {
    Rng rng(f->order());
    const auto line = projective_line(*f);
    for (int t = 0; t < 50; ++t) {
      const MoebiusMap m1 = random_map(*f, rng);
      const MoebiusMap m2 = random_map(*f, rng);
      const ProjPoint p = line[rng.below(line.size())];
      EXPECT_EQ(act_point(m1 * m2, p), act_point(m1, act_point(m2, p)));
      EXPECT_EQ(act_point(m1.inverse(), act_point(m1, p)), p);
      EXPECT_TRUE((m1 * m1.inverse()).is_identity());
      EXPECT_EQ(act_point(MoebiusMap::identity(*f), p), p);
      // direct matrix product, without the normalized representative
      const auto& e = m1.lift();
      EXPECT_TRUE(same_point(act_point(m1, p), ProjPoint(e.a() * p.x() + e.b() * p.y(), e.c() * p.x() + e.d() * p.y())));
    }
  }
}

TEST(MoebiusMap, NormalizationIsCanonical) {
  const Field& f = make_field(11, 1);
  const MoebiusMap a(Fq(f, 2), Fq(f, 4), Fq(f, 6), Fq(f, 3));
  const MoebiusMap b(Fq(f, 6), Fq(f, 12), Fq(f, 18), Fq(f, 9));
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.entries()[0].is_one());
  const MoebiusMap c(Fq(f, 0), Fq(f, 5), Fq(f, 3), Fq(f, 0));
  EXPECT_TRUE(c.entries()[1].is_one());
  EXPECT_THROW(MoebiusMap(Fq(f, 1), Fq(f, 2), Fq(f, 2), Fq(f, 4)), DomainError);
}

TEST(MoebiusFromTriples, NamedExamples) {
  const Field& f = make_field(11, 1);
  const ProjPoint zero = ProjPoint::affine(Fq(f, 0));
  const ProjPoint one = ProjPoint::affine(Fq(f, 1));
  const ProjPoint inf = ProjPoint::infinity(f);
  EXPECT_TRUE(moebius_from_triples({zero, one, inf}, {zero, one, inf}).is_identity());
  const MoebiusMap r = moebius_from_triples({zero, one, inf}, {inf, one, zero});
  EXPECT_EQ(r, MoebiusMap(Fq(f, 0), Fq(f, 1), Fq(f, 1), Fq(f, 0)));
  const std::array<ProjPoint, 3> dst{ProjPoint::affine(Fq(f, 2)), ProjPoint::affine(Fq(f, 3)), ProjPoint::affine(Fq(f, 4))};
  const MoebiusMap m = moebius_from_triples({zero, one, inf}, dst);
  EXPECT_EQ(m(zero), dst[0]);
  EXPECT_EQ(m(one), dst[1]);
  EXPECT_EQ(m(inf), dst[2]);
  EXPECT_THROW(moebius_from_triples({zero, zero, inf}, dst), DomainError);
}

TEST(MoebiusFromTriples, ReproducesTargetsExhaustivelyOverF5) {
  const Field& f = make_field(5, 1);
  const auto line = projective_line(f);
  std::vector<std::array<ProjPoint, 3>> triples;
  for (const auto& a : line)
    for (const auto& b : line)
      for (const auto& c : line)
        if (a != b && a != c && b != c) triples.push_back({a, b, c});
  ASSERT_EQ(triples.size(), 120u);  // |PGL_2(F_5)| ordered triples
  for (const auto& s : triples) {
    for (const auto& d : triples) {
      const MoebiusMap m = moebius_from_triples(s, d);
      for (int i = 0; i < 3; ++i) ASSERT_EQ(m(s[i]), d[i]);
    }
  }
}

TEST(FixedPoints, NamedExamples) {
  const Field& f = make_field(13, 1);
  const auto one = Fq::one(f);
  const auto zero = Fq::zero(f);
  EXPECT_EQ(fixed_points(MoebiusMap(-one, zero, zero, one), f),
            (std::vector<ProjPoint>{ProjPoint::affine(zero), ProjPoint::infinity(f)}));
  EXPECT_EQ(fixed_points(MoebiusMap(zero, one, one, zero), f),
            (std::vector<ProjPoint>{ProjPoint::affine(one), ProjPoint::affine(-one)}));
  EXPECT_EQ(fixed_points(MoebiusMap(one, one, zero, one), f), (std::vector<ProjPoint>{ProjPoint::infinity(f)}));
  EXPECT_THROW(fixed_points(MoebiusMap::identity(f), f), DomainError);
}

TEST(FixedPoints, TameElementsHaveTwoFixedPoints) {
  const Field& f = make_field(7, 1);
  const Field& f2 = make_field(7, 2);
  Rng rng(5);
  int tested = 0;
  for (int t = 0; t < 300; ++t) {
    const MoebiusMap m = random_map(f, rng);
    if (m.is_identity()) continue;
    const u64 n = m.order();
    const auto fp = fixed_points(m, f2);
    for (const auto& p : fp) EXPECT_EQ(m.embedded(f2)(p), p);
    if (n % 7 != 0) {
      EXPECT_EQ(fp.size(), 2u);
      ++tested;
    } else {
      EXPECT_EQ(fp.size(), 1u);
    }
    // oracle: count fixed points by sweeping P^1(F_49)
    std::size_t count = 0;
    for (const auto& p : projective_line(f2))
      if (m.embedded(f2)(p) == p) ++count;
    EXPECT_EQ(count, fp.size());
  }
  EXPECT_GT(tested, 100);
}

TEST(MoebiusMap, OrderAndConjugation) {
  const Field& f = make_field(13, 1);
  const Fq z = root_of_unity(f, 6);
  const MoebiusMap rot(LinearMap::diag(z, Fq::one(f)));
  EXPECT_EQ(rot.order(), 6u);
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const MoebiusMap g = random_map(f, rng);
    EXPECT_EQ(conjugate(g, rot).order(), 6u);
  }
  EXPECT_EQ(MoebiusMap(Fq::one(f), Fq::one(f), Fq::zero(f), Fq::one(f)).order(), 13u);
}

TEST(MoebiusMap, EmbeddingCommutesWithAction) {
  const Field& f = make_field(5, 1);
  const Field& k = make_field(5, 2);
  Rng rng(17);
  for (int t = 0; t < 30; ++t) {
    const MoebiusMap m = random_map(f, rng);
    for (const auto& p : projective_line(f)) EXPECT_EQ(m(p).embedded(k), m.embedded(k)(p.embedded(k)));
  }
}
