#include <gtest/gtest.h>

#include <vector>

#include "polycert/poly_matrix.h"
#include "polycert/positivity.h"
#include "test_util.h"

namespace polycert {
namespace {

using testing::CofactorDeterminant;
using testing::MinorEnumerationRank;

PolyMatrix M(std::size_t nvars, const std::vector<std::vector<std::string>>& rows) {
  return PolyMatrix::Parse(nvars, rows);
}

PolyMatrix SignPatternMatrix() {
  return M(1, {{"1", "-1", "1"}, {"-1", "1", "1"}, {"1", "1", "1"}});
}

Polynomial P(const char* text, std::size_t nvars = 1) {
  return Polynomial::Parse(text, nvars);
}

TEST(PolyMatrixTest, MultiplyExamples) {
  const PolyMatrix a = M(1, {{"t1", "1"}, {"2", "t1^2"}});
  EXPECT_EQ(PolyMatrix::Identity(2, 1) * a, a);
  EXPECT_EQ(M(1, {{"t1"}}) * M(1, {{"t1"}}), M(1, {{"t1^2"}}));
  EXPECT_EQ(M(1, {{"1", "t1"}, {"0", "1"}}) * M(1, {{"1", "-t1"}, {"0", "1"}}),
            PolyMatrix::Identity(2, 1));
  EXPECT_THROW(PolyMatrix(2, 3, 1) * PolyMatrix(2, 3, 1), std::invalid_argument);
  EXPECT_THROW(PolyMatrix(2, 2, 1) * PolyMatrix(2, 2, 2), std::invalid_argument);
}

TEST(PolyMatrixTest, TransposeExamples) {
  EXPECT_EQ(PolyMatrix::Identity(3, 1).Transpose(), PolyMatrix::Identity(3, 1));
  EXPECT_EQ(M(1, {{"0", "t1"}, {"1", "0"}}).Transpose(),
            M(1, {{"0", "1"}, {"t1", "0"}}));
  testing::Random rng(7);
  for (int k = 0; k < 20; ++k) {
    const PolyMatrix a = rng.Matrix(2, 3, 2, 2);
    EXPECT_EQ(a.Transpose().Transpose(), a);
  }
  EXPECT_TRUE(SignPatternMatrix().is_symmetric());
  EXPECT_FALSE(M(1, {{"0", "t1"}, {"1", "0"}}).is_symmetric());
}

TEST(PolyMatrixTest, MinorExamples) {
  const PolyMatrix a = M(1, {{"1", "t1"}, {"t1", "t1^2 + 1"}});
  const std::vector<std::size_t> both{0, 1};
  EXPECT_EQ(Minor(a, both, both), P("1"));
  for (std::size_t k = 0; k < 2; ++k) {
    const std::vector<std::size_t> idx{k};
    EXPECT_EQ(Minor(a, idx, idx), a(k, k));
  }
  EXPECT_TRUE(Minor(SignPatternMatrix(), both, both).is_zero());
}

TEST(PolyMatrixTest, MinorErrors) {
  const PolyMatrix a = SignPatternMatrix();
  const std::vector<std::size_t> desc{1, 0}, ok{0, 1}, out{0, 3}, one{0};
  EXPECT_THROW(Minor(a, desc, ok), std::invalid_argument);
  EXPECT_THROW(Minor(a, ok, out), std::out_of_range);
  EXPECT_THROW(Minor(a, ok, one), std::invalid_argument);
}

TEST(PolyMatrixTest, LeadingPrincipalMinors) {
  const PolyMatrix a = M(1, {{"t1", "1"}, {"1", "t1"}});
  EXPECT_EQ(LeadingPrincipalMinor(a, 1), P("t1"));
  EXPECT_EQ(LeadingPrincipalMinor(a, 2), P("t1^2 - 1"));
  EXPECT_EQ(LeadingPrincipalMinor(SignPatternMatrix(), 3),
            CofactorDeterminant(SignPatternMatrix()));
  EXPECT_EQ(LeadingPrincipalMinor(SignPatternMatrix(), 3), P("-4"));
  EXPECT_THROW(LeadingPrincipalMinor(a, 0), std::out_of_range);
  EXPECT_THROW(LeadingPrincipalMinor(a, 3), std::out_of_range);
}

TEST(PolyMatrixTest, DeterminantExamples) {
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(Determinant(PolyMatrix::Identity(n, 2)), Polynomial::Constant(2, 1));
  }
  const std::vector<Polynomial> diag{P("t1"), P("t1^2 + 3"), Polynomial(1)};
  EXPECT_TRUE(Determinant(PolyMatrix::Diagonal(diag)).is_zero());
  EXPECT_EQ(Determinant(SignPatternMatrix()), P("-4"));
  EXPECT_THROW(Determinant(PolyMatrix(2, 3, 1)), std::invalid_argument);
}

TEST(PolyMatrixTest, RankExamples) {
  EXPECT_EQ(GenericRank(PolyMatrix(3, 3, 1)), 0u);
  EXPECT_EQ(GenericRank(M(1, {{"t1^2", "t1"}, {"t1", "1"}})), 1u);
  EXPECT_EQ(GenericRank(SignPatternMatrix()), 3u);
  EXPECT_EQ(GenericRank(M(1, {{"t1", "1", "t1 + 1"}, {"t1^2", "t1", "t1^2 + t1"}})),
            1u);
}

TEST(PolyMatrixTest, Permutations) {
  EXPECT_EQ(PermutationMatrix(2, 0, 1), PolyMatrix::Identity(2, 1));
  EXPECT_EQ(PermutationMatrix(2, 1, 1), M(1, {{"0", "1"}, {"1", "0"}}));
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t l = 0; l < n; ++l) {
      const PolyMatrix p = PermutationMatrix(n, l, 1);
      EXPECT_EQ(p * p, PolyMatrix::Identity(n, 1));
    }
  }
  EXPECT_THROW(PermutationMatrix(2, 2, 1), std::out_of_range);
}

class PolyMatrixPropertyTest : public ::testing::Test {
 protected:
  testing::Random rng_{424242};
};

TEST_F(PolyMatrixPropertyTest, TransposeOfProduct) {
  for (int k = 0; k < 60; ++k) {
    const std::size_t r = rng_.Int(1, 3), c = rng_.Int(1, 3), s = rng_.Int(1, 3);
    const std::size_t d = rng_.Int(1, 2);
    const PolyMatrix a = rng_.Matrix(r, c, d, 2), b = rng_.Matrix(c, s, d, 2);
    EXPECT_EQ((a * b).Transpose(), b.Transpose() * a.Transpose());
  }
}

TEST_F(PolyMatrixPropertyTest, ProductMatchesPointwiseRationalProduct) {
  for (int k = 0; k < 60; ++k) {
    const std::size_t d = rng_.Int(1, 2);
    const PolyMatrix a = rng_.Matrix(3, 2, d, 2), b = rng_.Matrix(2, 4, d, 2);
    const Point s = rng_.RandomPoint(d);
    EXPECT_EQ(EvaluateMatrix(a * b, s),
              testing::RationalProduct(EvaluateMatrix(a, s), EvaluateMatrix(b, s)));
  }
}

TEST_F(PolyMatrixPropertyTest, SymmetricCongruenceMatchesProduct) {
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = rng_.Int(1, 4), m = rng_.Int(1, 4), d = rng_.Int(1, 2);
    const PolyMatrix a = rng_.Symmetric(n, d, 2), x = rng_.Matrix(m, n, d, 2);
    EXPECT_EQ(Congruence(x, a), x * a * x.Transpose());
  }
}

TEST_F(PolyMatrixPropertyTest, PolarizationIdentity) {
  const Polynomial two = Polynomial::Constant(2, 2);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = rng_.Int(1, 4), d = rng_.Int(1, 2);
    const PolyMatrix a = rng_.Symmetric(n, d, 2);
    const PolyMatrix x = rng_.Matrix(n, 1, d, 2), y = rng_.Matrix(n, 1, d, 2);
    const PolyMatrix lhs =
        Polynomial::Constant(d, 2) * (x.Transpose() * a * y + y.Transpose() * a * x);
    const PolyMatrix rhs = (x + y).Transpose() * a * (x + y) -
                           (x - y).Transpose() * a * (x - y);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST_F(PolyMatrixPropertyTest, QuadraticModuleClosureOnGrid) {
  for (int k = 0; k < 15; ++k) {
    const std::size_t n = rng_.Int(1, 3), d = rng_.Int(1, 2);
    const PolyMatrix c = testing::GramMatrix(rng_.Matrix(rng_.Int(1, 3), n, d, 1));
    const PolyMatrix b = rng_.Matrix(n, rng_.Int(1, 3), d, 1);
    const PolyMatrix e = b.Transpose() * c * b;
    for (const Point& s : GenerateGrid(GridSpec::Uniform(d, -2, 2, 5))) {
      EXPECT_TRUE(testing::LdltPsdOracle(EvaluateMatrix(e, s)));
    }
  }
}

TEST_F(PolyMatrixPropertyTest, BareissMatchesCofactor) {
  for (int k = 0; k < 60; ++k) {
    const std::size_t n = rng_.Int(1, 4), d = rng_.Int(1, 2);
    const PolyMatrix a = rng_.Matrix(n, n, d, 2, 0.5);
    EXPECT_EQ(Determinant(a), CofactorDeterminant(a));
  }
  // Rank-deficient inputs exercise the zero-pivot path.
  for (int k = 0; k < 20; ++k) {
    const PolyMatrix g = rng_.Matrix(2, 4, 1, 2);
    const PolyMatrix a = g.Transpose() * g;
    EXPECT_TRUE(Determinant(a).is_zero());
    EXPECT_TRUE(CofactorDeterminant(a).is_zero());
  }
}

TEST_F(PolyMatrixPropertyTest, RankMatchesMinorEnumeration) {
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = rng_.Int(1, 4), inner = rng_.Int(1, 4);
    const PolyMatrix g = rng_.Matrix(inner, n, 1, 1, 0.5);
    const PolyMatrix a = g.Transpose() * g;
    EXPECT_EQ(GenericRank(a), MinorEnumerationRank(a));
    const PolyMatrix rect = rng_.Matrix(n, inner, 2, 1, 0.3);
    EXPECT_EQ(GenericRank(rect), MinorEnumerationRank(rect));
  }
}

TEST_F(PolyMatrixPropertyTest, RankInvariantUnderCongruence) {
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = rng_.Int(2, 4), inner = rng_.Int(1, 4), d = rng_.Int(1, 2);
    const PolyMatrix g = rng_.Matrix(inner, n, d, 1, 0.5);
    const PolyMatrix a = g.Transpose() * g;
    const PolyMatrix u = rng_.Unitriangular(n, d, 1);
    EXPECT_EQ(GenericRank(u.Transpose() * a * u), GenericRank(a));
  }
}

}  // namespace
}  // namespace polycert
