#include <gtest/gtest.h>

#include <vector>

#include "polycert/certificates.h"
#include "polycert/diagonal.h"
#include "polycert/positivity.h"
#include "test_util.h"

namespace polycert {
namespace {

PolyMatrix M(std::size_t nvars, const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix::Parse(nvars, rows);
}

Polynomial P(const char* text, std::size_t nvars = 1) {
  return Polynomial::Parse(text, nvars);
}

TEST(DiagVerifierTest, Examples) {
  const PolyMatrix id = PolyMatrix::Identity(2, 1);
  EXPECT_TRUE(VerifyDiagCertificate(id, {id, id, id, P("1")}));

  const PolyMatrix a = M(1, {{"t1", "1"}, {"1", "t1"}});
  DiagCertificate c = SinglePathDiagonalize(a).certificate;
  EXPECT_TRUE(VerifyDiagCertificate(a, c));

  c.d(1, 1) += P("1");
  const Verdict v = VerifyDiagCertificate(a, c);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.failure, kIdentityForward);
}

TEST(DiagVerifierTest, NamesEachIdentity) {
  const PolyMatrix a = M(1, {{"t1", "1"}, {"1", "t1"}});
  const DiagCertificate good = SinglePathDiagonalize(a).certificate;

  DiagCertificate off = good;
  off.d(0, 1) = P("1");
  EXPECT_EQ(VerifyDiagCertificate(a, off).failure, kIdentityDiagonal);

  DiagCertificate pm = good;
  pm.w += P("1");
  EXPECT_EQ(VerifyDiagCertificate(a, pm).failure, kIdentityProductPM);

  // With w = 0 the two product identities are independent of each other.
  const DiagCertificate mp{M(1, {{"1", "0"}, {"0", "0"}}),
                           M(1, {{"0", "0"}, {"1", "0"}}),
                           M(1, {{"0", "0"}, {"0", "t1"}}), Polynomial(1)};
  EXPECT_EQ(VerifyDiagCertificate(a, mp).failure, kIdentityProductMP);

  DiagCertificate flipped = good;
  flipped.x_plus = P("-1") * flipped.x_plus;
  flipped.x_minus = P("-1") * flipped.x_minus;
  EXPECT_TRUE(VerifyDiagCertificate(a, flipped));
  flipped.d = P("-1") * flipped.d;
  EXPECT_EQ(VerifyDiagCertificate(a, flipped).failure, kIdentityForward);

  EXPECT_THROW(VerifyDiagCertificate(M(1, {{"0", "1"}, {"2", "0"}}), good),
               std::invalid_argument);
  DiagCertificate wrong_dim = good;
  wrong_dim.d = PolyMatrix::Identity(3, 1);
  EXPECT_THROW(VerifyDiagCertificate(a, wrong_dim), std::invalid_argument);
}

TEST(SumOfSquaresTest, Validity) {
  const SumOfSquares s = SumOfSquares::Square(P("t1 + 1"));
  EXPECT_TRUE(s.IsValid());
  EXPECT_EQ(s.value, P("t1^2 + 2*t1 + 1"));
  SumOfSquares bad = s;
  bad.value += P("1");
  EXPECT_FALSE(bad.IsValid());
  EXPECT_FALSE(SumOfSquares::Square(Polynomial(1)).IsValid());
  const SumOfSquares prod = s * SumOfSquares{P("t1^2 + 1"), {P("t1"), P("1")}};
  EXPECT_TRUE(prod.IsValid());
  EXPECT_EQ(prod.roots.size(), 2u);
}

TEST(EquivWitnessTest, VerifyExamples) {
  const PolyMatrix a = M(1, {{"t1", "1"}, {"1", "t1"}});
  EXPECT_TRUE(VerifyEquivWitness(a, a, TrivialWitness(a)));

  const DiagCertificate c = SinglePathDiagonalize(a).certificate;
  const EquivWitness w = WitnessFromDiagonalization(c);
  EXPECT_EQ(w.s1.value, c.w * c.w);
  EXPECT_EQ(w.s2.value, P("1"));
  EXPECT_EQ(w.z, c.w);
  EXPECT_TRUE(VerifyEquivWitness(a, c.d, w));

  EquivWitness bad = w;
  bad.z += P("1");
  EXPECT_FALSE(VerifyEquivWitness(a, c.d, bad));
  EquivWitness no_roots = w;
  no_roots.s1.roots.push_back(P("t1"));
  EXPECT_FALSE(VerifyEquivWitness(a, c.d, no_roots));
}

TEST(EquivWitnessTest, Symmetrize) {
  const PolyMatrix a = M(1, {{"t1", "1"}, {"1", "t1"}});
  const EquivWitness triv = SymmetrizeWitness(a, a, TrivialWitness(a));
  EXPECT_TRUE(VerifyEquivWitness(a, a, triv));
  EXPECT_EQ(triv.s1.value, P("1"));
  EXPECT_EQ(triv.x_plus, PolyMatrix::Identity(2, 1));

  const DiagCertificate c = SinglePathDiagonalize(a).certificate;
  const EquivWitness ad = WitnessFromDiagonalization(c);
  const EquivWitness da = SymmetrizeWitness(a, c.d, ad);
  EXPECT_TRUE(VerifyEquivWitness(c.d, a, da));
  EXPECT_EQ(da.s1.value, ad.s2.value * ad.z * ad.z);
  EXPECT_EQ(da.s2.value, ad.s1.value);
  const EquivWitness again = SymmetrizeWitness(c.d, a, da);
  EXPECT_TRUE(VerifyEquivWitness(a, c.d, again));

  EquivWitness broken = ad;
  broken.x_plus(0, 0) += P("1");
  EXPECT_THROW(SymmetrizeWitness(a, c.d, broken), std::invalid_argument);
}

TEST(EquivWitnessTest, Compose) {
  const PolyMatrix a = M(1, {{"t1", "1"}, {"1", "t1"}});
  const DiagCertificate c = SinglePathDiagonalize(a).certificate;
  const EquivWitness ad = WitnessFromDiagonalization(c);

  EXPECT_TRUE(VerifyEquivWitness(a, c.d,
                                 ComposeWitnesses(a, c.d, c.d, ad, TrivialWitness(c.d))));
  EXPECT_TRUE(VerifyEquivWitness(a, c.d,
                                 ComposeWitnesses(a, a, c.d, TrivialWitness(a), ad)));

  const EquivWitness da = SymmetrizeWitness(a, c.d, ad);
  const EquivWitness aa = ComposeWitnesses(a, c.d, a, ad, da);
  EXPECT_TRUE(VerifyEquivWitness(a, a, aa));
  EXPECT_EQ(aa.z, ad.z * da.z);
  EXPECT_EQ(aa.x_plus, ad.x_plus * da.x_plus);
  EXPECT_EQ(aa.x_minus, da.x_minus * ad.x_minus);

  EXPECT_THROW(ComposeWitnesses(a, c.d, a, ad, ad), std::invalid_argument);
}

TEST(EquivWitnessTest, GroupoidOnRandomInstances) {
  testing::Random rng(2718);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = rng.Int(2, 3), d = rng.Int(1, 2);
    const PolyMatrix a = rng.Symmetric(n, d, 2);
    if (a.is_zero()) continue;
    const DiagCertificate c = SinglePathDiagonalize(a).certificate;
    const EquivWitness ad = WitnessFromDiagonalization(c);
    ASSERT_TRUE(VerifyEquivWitness(a, c.d, ad));
    const EquivWitness da = SymmetrizeWitness(a, c.d, ad);
    EXPECT_TRUE(VerifyEquivWitness(c.d, a, da));
    EXPECT_TRUE(VerifyEquivWitness(a, a, ComposeWitnesses(a, c.d, a, ad, da)));
    EXPECT_TRUE(VerifyEquivWitness(c.d, c.d, ComposeWitnesses(c.d, a, c.d, da, ad)));
  }
}

TEST(SosMatrixTest, Examples) {
  EXPECT_TRUE(VerifySosMatrix(M(1, {{"1 + t1^2"}}), {P("1"), {M(1, {{"1"}}), M(1, {{"t1"}})}}));

  testing::Random rng(17);
  const PolyMatrix g = rng.Matrix(3, 2, 2, 2);
  EXPECT_TRUE(VerifySosMatrix(g.Transpose() * g, {Polynomial::Constant(2, 1), {g}}));
  EXPECT_TRUE(VerifySosMatrix(g.Transpose() * g,
                              {P("t1^2 + 1", 2), {P("t1^2 + 1", 2) * g}}));

  const PolyMatrix neg = M(1, {{"-1"}});
  EXPECT_FALSE(VerifySosMatrix(neg, {P("1"), {M(1, {{"1"}})}}));
  EXPECT_FALSE(VerifySosMatrix(neg, {P("1"), {}}));
  EXPECT_FALSE(VerifySosMatrix(M(1, {{"0"}}), {Polynomial(1), {}}));
}

TEST(TModuleTest, Generators) {
  const PolyMatrix b1 = M(1, {{"t1", "0"}, {"0", "1"}});
  const PolyMatrix b2 = M(1, {{"1", "0"}, {"0", "t1^2"}});
  const std::vector<PolyMatrix> one{b1};
  const auto g1 = TModuleGenerators(one);
  ASSERT_EQ(g1.size(), 2u);
  EXPECT_EQ(g1[0], PolyMatrix::Identity(2, 1));
  EXPECT_EQ(g1[1], b1);

  const std::vector<PolyMatrix> two{b1, b2};
  const auto g2 = TModuleGenerators(two);
  ASSERT_EQ(g2.size(), 4u);
  EXPECT_EQ(g2[1], b1);
  EXPECT_EQ(g2[2], b2);
  EXPECT_EQ(g2[3], M(1, {{"t1", "0"}, {"0", "t1^2"}}));

  const std::vector<PolyMatrix> disjoint{M(1, {{"t1", "0"}, {"0", "0"}}),
                                         M(1, {{"0", "0"}, {"0", "t1"}})};
  EXPECT_TRUE(TModuleGenerators(disjoint)[3].is_zero());

  const std::vector<PolyMatrix> full{M(1, {{"t1", "1"}, {"1", "0"}})};
  EXPECT_THROW(TModuleGenerators(full), std::invalid_argument);

  testing::Random rng(3);
  std::vector<PolyMatrix> many;
  for (int r = 0; r < 5; ++r) {
    std::vector<Polynomial> diag{rng.Poly(1, 2), rng.Poly(1, 2), rng.Poly(1, 2)};
    many.push_back(PolyMatrix::Diagonal(diag));
  }
  const auto gm = TModuleGenerators(many);
  EXPECT_EQ(gm.size(), 32u);
  for (std::size_t mask = 0; mask < gm.size(); ++mask) {
    EXPECT_TRUE(gm[mask].is_diagonal());
    EXPECT_EQ(gm[mask], GeneratorProduct(many, IndexSetOfMask(mask)));
  }
}

TEST(TModuleTest, ModuleElement) {
  testing::Random rng(23);
  const PolyMatrix g = rng.Matrix(2, 3, 1, 2);
  const std::vector<PolyMatrix> id{PolyMatrix::Identity(2, 1)};
  EXPECT_EQ(ConstructModuleElement(id, {{g}}), g.Transpose() * g);
  EXPECT_TRUE(ConstructModuleElement(id, {}).is_zero());
  const std::vector<PolyMatrix> f{M(1, {{"t1", "0"}, {"0", "1"}})};
  EXPECT_EQ(ConstructModuleElement(f, {{PolyMatrix::Identity(2, 1)}}), f[0]);
  EXPECT_THROW(ConstructModuleElement(f, {{PolyMatrix::Identity(3, 1)}}),
               std::invalid_argument);
}

TEST(TModuleTest, ModuleElementIsClosedOnGrid) {
  testing::Random rng(29);
  for (int k = 0; k < 10; ++k) {
    const std::size_t d = rng.Int(1, 2);
    std::vector<PolyMatrix> f;
    std::vector<std::vector<PolyMatrix>> coeffs;
    for (int l = 0; l < 2; ++l) {
      f.push_back(testing::GramMatrix(rng.Matrix(2, 2, d, 1)));
      coeffs.push_back({rng.Matrix(2, 3, d, 1), rng.Matrix(2, 3, d, 1)});
    }
    const PolyMatrix e = ConstructModuleElement(f, coeffs);
    EXPECT_TRUE(e.is_symmetric());
    for (const Point& s : GenerateGrid(GridSpec::Uniform(d, -3, 3, 4))) {
      EXPECT_TRUE(testing::LdltPsdOracle(EvaluateMatrix(e, s)));
    }
  }
}

TEST(TModuleTest, Membership) {
  const PolyMatrix b = M(1, {{"t1", "0"}, {"0", "t1^2 + 1"}});
  const std::vector<PolyMatrix> gens{b};
  const PolyMatrix g = M(1, {{"1", "t1"}, {"2", "0"}});
  const PolyMatrix element = g.Transpose() * b * g;
  EXPECT_TRUE(VerifyTModuleMembership(element, gens, {{{0}}, {{g}}}));

  const PolyMatrix id = PolyMatrix::Identity(2, 1);
  EXPECT_TRUE(VerifyTModuleMembership(id, gens, {{{}}, {{id}}}));

  EXPECT_FALSE(VerifyTModuleMembership(element + id, gens, {{{0}}, {{g}}}));
  EXPECT_THROW(VerifyTModuleMembership(element, gens, {{{1}}, {{g}}}),
               std::invalid_argument);
  EXPECT_THROW(VerifyTModuleMembership(element, gens, {{{0}, {}}, {{g}}}),
               std::invalid_argument);
}

TEST(KnkTest, Examples) {
  const PolyMatrix id = PolyMatrix::Identity(3, 1);
  const std::vector<PolyMatrix> a1{id}, x1{id};
  EXPECT_EQ(KnkElement(3, 3, 1, a1, x1), id);

  const std::vector<PolyMatrix> a2{M(1, {{"1"}})};
  const std::vector<PolyMatrix> x2{M(1, {{"t1", "1", "t1^2 - 1"}})};
  const PolyMatrix outer = KnkElement(1, 3, 1, a2, x2);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      EXPECT_EQ(outer(i, j), x2[0](0, i) * x2[0](0, j));
    }
  }
  EXPECT_EQ(GenericRank(outer), 1u);

  const std::vector<PolyMatrix> none;
  EXPECT_TRUE(KnkElement(2, 3, 1, none, none).is_zero());
  EXPECT_THROW(KnkElement(2, 3, 1, a1, x1), std::invalid_argument);
}

TEST(KnkTest, PointwisePsd) {
  testing::Random rng(41);
  for (int k = 0; k < 10; ++k) {
    const std::size_t d = rng.Int(1, 2);
    std::vector<PolyMatrix> a, x;
    for (int l = 0; l < 3; ++l) {
      a.push_back(testing::GramMatrix(rng.Matrix(2, 2, d, 1)));
      x.push_back(rng.Matrix(2, 3, d, 1));
    }
    const PolyMatrix e = KnkElement(2, 3, d, a, x);
    for (const Point& s : GenerateGrid(GridSpec::Uniform(d, -2, 2, 5))) {
      EXPECT_TRUE(testing::LdltPsdOracle(EvaluateMatrix(e, s)));
    }
  }
}

TEST(ChoiFixtureTest, Shape) {
  const PolyMatrix c = ChoiTypeFixture();
  EXPECT_EQ(c(0, 0), P("1 + t1^4*t2^2", 2));
  EXPECT_EQ(c(1, 1), P("1 + t1^2*t2^4", 2));
  EXPECT_TRUE(c.is_symmetric());
  const Point one{1, 1};
  const RationalMatrix at = EvaluateMatrix(c, one);
  EXPECT_EQ(at, RationalMatrix::FromRows({{2, 1}, {1, 2}}));
  EXPECT_TRUE(IsPsd(at));
}

TEST(RoundTripTest, DiagonalModuleOutputsVerify) {
  testing::Random rng(1000);
  int verified = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng.Int(2, 3), d = rng.Int(1, 2);
    const PolyMatrix a = rng.Symmetric(n, d, 2, 0.5);
    if (a.is_zero()) continue;
    EXPECT_TRUE(VerifyDiagCertificate(a, SinglePathDiagonalize(a).certificate));
    ++verified;
    try {
      EXPECT_TRUE(VerifyDiagCertificate(a, StandardFormDiagonalize(a)));
    } catch (const NotStandardForm&) {
    }
  }
  EXPECT_GT(verified, 90);
}

}  // namespace
}  // namespace polycert
