#include <gtest/gtest.h>

#include <random>

#include "hyperpic/hyperpic.hpp"

using namespace hyperpic;

namespace {

// Every element of PGL_2(F_q), each in one representative.
std::vector<MoebiusMap> all_of_pgl2(const Field& f) {
  std::vector<MoebiusMap> out;
  const Fq one = Fq::one(f), zero = Fq::zero(f);
  for (u64 b = 0; b < f.order(); ++b)
    for (u64 c = 0; c < f.order(); ++c)
      for (u64 d = 0; d < f.order(); ++d) {
        const Fq B = Fq::from_index(f, b), C = Fq::from_index(f, c), D = Fq::from_index(f, d);
        if (!(D - B * C).is_zero()) out.emplace_back(one, B, C, D);
      }
  for (u64 c = 0; c < f.order(); ++c)
    for (u64 d = 0; d < f.order(); ++d) {
      const Fq C = Fq::from_index(f, c), D = Fq::from_index(f, d);
      if (!C.is_zero()) out.emplace_back(zero, one, C, D);
    }
  return out;
}

// Stabilizer by sweeping PGL_2(F_q) for a form whose roots are all rational.
std::vector<MoebiusMap> sweep_stabilizer(const BinaryForm& f) {
  std::vector<ProjPoint> zeros;
  for (const auto& p : projective_line(f.field()))
    if (f.eval(p).is_zero()) zeros.push_back(p);
  std::vector<MoebiusMap> out;
  for (const auto& m : all_of_pgl2(f.field())) {
    bool ok = true;
    for (const auto& p : zeros) ok = ok && f.eval(m(p)).is_zero();
    if (ok) out.push_back(m);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ProjPoint> random_points(const Field& f, std::size_t n, Rng& rng) {
  std::vector<ProjPoint> line = projective_line(f);
  std::shuffle(line.begin(), line.end(), std::mt19937_64(rng.next()));
  line.erase(line.begin() + static_cast<std::ptrdiff_t>(n), line.end());
  return line;
}

LinearMap random_gl2(const Field& f, Rng& rng) {
  while (true) {
    const Fq a = Fq::from_index(f, rng.below(f.order())), b = Fq::from_index(f, rng.below(f.order()));
    const Fq c = Fq::from_index(f, rng.below(f.order())), d = Fq::from_index(f, rng.below(f.order()));
    if (!(a * d - b * c).is_zero()) return LinearMap(a, b, c, d);
  }
}

}  // namespace

TEST(Stabilizer, NamedExamples) {
  const ReducedAutGroup a = stabilizer(BinaryForm::from_ints(make_field(13, 1), {-1, 0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(a.order(), 12u);
  EXPECT_EQ(classify(a).label(), "dihedral 12");
  EXPECT_EQ(a.order_profile(), (OrderProfile{{1, 1}, {2, 7}, {3, 2}, {6, 2}}));

  const ReducedAutGroup b = stabilizer(BinaryForm::from_ints(make_field(11, 1), {-1, 0, 0, 0, 0, 1, 0}));
  EXPECT_EQ(b.order(), 5u);
  EXPECT_EQ(classify(b), (Classification{GroupKind::Cyclic, 5}));

  const ReducedAutGroup c = stabilizer(BinaryForm::from_ints(make_field(5, 1), {0, -1, 0, 0, 0, 1, 0}));
  EXPECT_EQ(c.order(), 120u);
  EXPECT_EQ(classify(c).kind, GroupKind::Wild);

  EXPECT_THROW(stabilizer(BinaryForm::from_ints(make_field(13, 1), {0, 0, 1, 0, 0, 0, 0})), DomainError);
}

TEST(Stabilizer, GenericSexticIsTrivial) {
  // random coefficients; six random rational roots carry an involution far more often
  const Field& f = make_field(101, 1);
  Rng rng(1);
  int trivial = 0;
  for (int t = 0; t < 40; ++t) {
    const ReducedAutGroup g = stabilizer(detail::random_smooth_form(f, 6, rng));
    if (g.order() == 1) ++trivial;
    EXPECT_TRUE(g.is_closed());
  }
  EXPECT_GE(trivial, 36);
}

TEST(Classify, PlatonicAndSmallGroups) {
  const Field& f13 = make_field(13, 1);
  // equianharmonic quartic x^4 + 2 sqrt(-3) x^2 + 1, sqrt(-3) = 6
  EXPECT_EQ(classify(stabilizer(BinaryForm::from_ints(f13, {1, 0, 12, 0, 1}))).kind, GroupKind::A4);
  // octahedron vertices: x y (x^4 - y^4)
  const ReducedAutGroup s4 = stabilizer(BinaryForm::from_ints(f13, {0, -1, 0, 0, 0, 1, 0}));
  EXPECT_EQ(classify(s4), (Classification{GroupKind::S4, 24}));
  // icosahedron vertices: x y (x^10 + 11 x^5 y^5 - y^10)
  const ReducedAutGroup a5 =
      stabilizer(BinaryForm::from_ints(make_field(31, 1), {0, -1, 0, 0, 0, 0, 11, 0, 0, 0, 0, 1, 0}));
  EXPECT_EQ(classify(a5), (Classification{GroupKind::A5, 60}));
  // generic quartic: Klein four-group
  const std::vector<ProjPoint> quad{ProjPoint::affine(Fq(f13, 0)), ProjPoint::affine(Fq(f13, 1)),
                                    ProjPoint::affine(Fq(f13, 3)), ProjPoint::infinity(f13)};
  EXPECT_EQ(classify(stabilizer(BinaryForm::from_roots(quad, Fq::one(f13)))).label(), "dihedral 4");
  EXPECT_EQ(classify(ReducedAutGroup(f13, {MoebiusMap::identity(f13)})).label(), "cyclic 1");
  const Fq z5 = root_of_unity(make_field(11, 1), 5);
  std::vector<MoebiusMap> rot;
  for (u64 i = 0; i < 5; ++i) rot.emplace_back(LinearMap::diag(z5.pow(i), Fq::one(make_field(11, 1))));
  EXPECT_EQ(classify(ReducedAutGroup(make_field(11, 1), rot)).label(), "cyclic 5");
}

TEST(Stabilizer, MatchesPgl2SweepOnRationalRootSets) {
  for (u64 q : {5ULL, 7ULL, 9ULL}) {
    const Field& f = field_of_order(q);
    Rng rng(q);
    for (int t = 0; t < 40; ++t) {
      const BinaryForm h = BinaryForm::from_roots(random_points(f, 6, rng), Fq::one(f));
      const ReducedAutGroup g = stabilizer(h);
      EXPECT_EQ(&g.field(), &f);
      EXPECT_EQ(g.elements(), sweep_stabilizer(h)) << h;
    }
  }
}

TEST(Stabilizer, ConjugationEquivariance) {
  for (u64 q : {7ULL, 11ULL, 13ULL, 25ULL}) {
    const Field& f = field_of_order(q);
    Rng rng(q * 3);
    std::vector<BinaryForm> forms{BinaryForm::from_roots(random_points(f, 6, rng), Fq::one(f))};
    if (q == 13) forms.push_back(BinaryForm::from_ints(f, {-1, 0, 0, 0, 0, 0, 1}));
    if (q == 11) forms.push_back(BinaryForm::from_ints(f, {-1, 0, 0, 0, 0, 1, 0}));
    for (int t = 0; t < 10; ++t) forms.push_back(BinaryForm::from_roots(random_points(f, 8, rng), Fq::one(f)));
    for (const auto& h : forms) {
      const MoebiusMap A(random_gl2(f, rng));
      const ReducedAutGroup g = stabilizer(h);
      const ReducedAutGroup gA = stabilizer(act_form(A, h));
      std::vector<MoebiusMap> conj;
      for (const auto& m : g.elements()) conj.push_back(conjugate(A, m));
      EXPECT_EQ(gA, ReducedAutGroup(f, conj)) << h;
    }
  }
}

TEST(Stratify, NamedExamples) {
  const Field& f13 = make_field(13, 1);
  const StratumSignature a = stratify(BinaryForm::from_ints(f13, {-1, 0, 0, 0, 0, 0, 1}));
  std::vector<std::pair<u64, int>> got;
  for (const auto& e : a.entries) got.emplace_back(e.p, e.l);
  EXPECT_EQ(got, (std::vector<std::pair<u64, int>>{{2, 0}, {2, 2}, {3, 0}}));
  EXPECT_TRUE(a.extra_involution);
  ASSERT_TRUE(a.pairing.has_value());
  EXPECT_EQ(a.pairing->size(), 3u);

  const StratumSignature b = stratify(BinaryForm::from_ints(make_field(11, 1), {-1, 0, 0, 0, 0, 1, 0}));
  ASSERT_EQ(b.entries.size(), 1u);
  EXPECT_EQ(b.entries[0].p, 5u);
  EXPECT_EQ(b.entries[0].l, 1);
  EXPECT_FALSE(b.extra_involution);

  const BinaryForm generic = parse_form("30,38,7,56,12,33,1@101^1");
  EXPECT_EQ(stab_oracle(generic).order(), 1u);
  const StratumSignature c = stratify(generic);
  EXPECT_TRUE(c.entries.empty());
  EXPECT_FALSE(c.extra_involution);
  EXPECT_FALSE(c.pairing.has_value());

  try {
    stratify(BinaryForm::from_ints(make_field(5, 1), {0, -1, 0, 0, 0, 1, 0}));
    FAIL() << "wild case accepted";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("wild"), std::string::npos);
  }
}

TEST(Stratify, ExtraInvolutionPairsAllRoots) {
  // roots {a, -a, b, -b, c, -c, ...} are swapped in pairs by x -> -x
  for (int g : {2, 3, 4}) {
    const Field& f = make_field(101, 1);
    Rng rng(g);
    for (int t = 0; t < 5; ++t) {
      std::vector<ProjPoint> pts;
      while (static_cast<int>(pts.size()) < 2 * g + 2) {
        const Fq a = Fq::from_index(f, 1 + rng.below(100));
        const ProjPoint p = ProjPoint::affine(a);
        if (std::find(pts.begin(), pts.end(), p) != pts.end() ||
            std::find(pts.begin(), pts.end(), ProjPoint::affine(-a)) != pts.end())
          continue;
        pts.push_back(p);
        pts.push_back(ProjPoint::affine(-a));
      }
      const StratumSignature s = stratify(BinaryForm::from_roots(pts, Fq::one(f)));
      EXPECT_TRUE(s.extra_involution);
      EXPECT_TRUE(s.has(2, 0));
      ASSERT_TRUE(s.pairing.has_value());
      EXPECT_EQ(static_cast<int>(s.pairing->size()), g + 1);
      std::vector<int> seen;
      for (auto [i, j] : *s.pairing) {
        seen.push_back(i);
        seen.push_back(j);
      }
      std::sort(seen.begin(), seen.end());
      for (int i = 0; i < 2 * g + 2; ++i) EXPECT_EQ(seen[i], i);
      // an order-2 element with no fixed root exists iff the flag is set
      const ReducedAutGroup grp = stabilizer(BinaryForm::from_roots(pts, Fq::one(f)));
      bool found = false;
      for (std::size_t i = 0; i < grp.elements().size(); ++i) {
        if (grp.element_order(i) != 2) continue;
        bool fixes_root = false;
        for (const auto& r : s.roots) fixes_root = fixes_root || grp.elements()[i](r) == r;
        found = found || !fixes_root;
      }
      EXPECT_TRUE(found);
    }
  }
}

TEST(StratumTable, NamedExamples) {
  EXPECT_EQ(stratum_table(2).rows, (std::vector<StratumRow>{{2, 0, 2}, {2, 2, 1}, {3, 0, 1}, {5, 1, 0}}));
  EXPECT_EQ(stratum_table(2).max_dim, 2);
  const auto t3 = stratum_table(3);
  EXPECT_NE(std::find(t3.rows.begin(), t3.rows.end(), StratumRow{2, 0, 3}), t3.rows.end());
  EXPECT_EQ(t3.max_dim, 3);
  EXPECT_THROW(stratum_table(1), DomainError);
}

TEST(StratumTable, MaximumOnlyAtTwoZeroForAllSmallGenera) {
  for (int g = 2; g <= 50; ++g) {
    const auto t = stratum_table(g);
    EXPECT_EQ(t.max_dim, g);
    int at_max = 0;
    for (const auto& r : t.rows) {
      EXPECT_FALSE(r.p == 2 && r.l == 1) << g;
      EXPECT_EQ((2 * g + 2 - r.l) % static_cast<int>(r.p), 0);
      EXPECT_EQ(r.dim, (2 * g + 2 - r.l) / static_cast<int>(r.p) - 1);
      if (r.dim == g) {
        ++at_max;
        EXPECT_EQ(r.p, 2u);
        EXPECT_EQ(r.l, 0);
      }
    }
    EXPECT_EQ(at_max, 1) << g;
    EXPECT_TRUE(std::is_sorted(t.rows.begin(), t.rows.end(), [](const StratumRow& a, const StratumRow& b) {
      return std::make_pair(a.p, a.l) < std::make_pair(b.p, b.l);
    }));
  }
}
