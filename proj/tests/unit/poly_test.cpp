#include <gtest/gtest.h>

#include "sml/symexpr.hpp"

namespace sml {
namespace {

Poly X(unsigned i) { return Poly::variable(Var::x(i)); }
Poly K(unsigned i) { return Poly::variable(Var::k(i)); }

TEST(Complex, ArithmeticAndText) {
  Complex a(Rational(1, 2), -1);
  EXPECT_EQ(a.to_string(), "1/2-i");
  EXPECT_EQ((Complex::i() * Complex::i()).to_string(), "-1");
  EXPECT_EQ((a * a.inverse()), Complex(1));
  EXPECT_EQ(Complex(0, -2).to_string(), "-2*i");
}

TEST(Poly, GcdOfProducts) {
  Poly a = (X(1) + K(1)) * (K(1) - K(2));
  Poly b = (X(1) + K(1)) * (K(2) * K(2) + 1);
  EXPECT_EQ(gcd(a, b), X(1) + K(1));
  EXPECT_EQ(gcd(a, Poly(0)), a.monic());
  EXPECT_TRUE(gcd(K(1), K(2)).is_constant());
}

TEST(Poly, GcdWithGaussianCoefficients) {
  Poly f = K(1) + Complex::i() * K(2);
  Poly g = K(1) - Complex::i() * K(2);
  EXPECT_EQ(gcd(f * f * g, f * K(1)), f.monic());
}

TEST(Poly, SquareFree) {
  Poly q = K(1) * K(1) - K(2) * K(2);
  Poly p = Complex(3) * q.pow(2) * K(1);
  auto sf = square_free(p);
  Poly rebuilt(sf.unit);
  for (const auto& [f, e] : sf.factors) rebuilt *= f.pow(e);
  EXPECT_EQ(rebuilt, p);
  ASSERT_EQ(sf.factors.size(), 2u);
}

TEST(Poly, DivideWithRemainder) {
  Poly a = X(1).pow(3) + X(2) * X(1) + 5;
  Poly b = X(1) + 1;
  auto [q, r] = divide_with_remainder(a, b);
  EXPECT_EQ(q * b + r, a);
}

TEST(SymExpr, CanonicalFractions) {
  SymExpr a = SymExpr(K(1)) / SymExpr(K(1) * K(1));
  EXPECT_EQ(a, SymExpr(1) / SymExpr(K(1)));
  EXPECT_EQ((SymExpr(-1) / SymExpr(K(1) * K(1))).to_string(), "-1/k1^2");
  SymExpr b = SymExpr(X(1) + 1) / SymExpr(K(1) * K(1) + K(2) * K(2));
  EXPECT_EQ(b * SymExpr(K(1) * K(1) + K(2) * K(2)), SymExpr(X(1) + 1));
  EXPECT_EQ((b - b), SymExpr(0));
}

TEST(SymExpr, Homogeneity) {
  EXPECT_TRUE(k_homogeneity(SymExpr(K(1) * K(2) * X(1))).is_degree(2));
  EXPECT_TRUE(k_homogeneity(SymExpr(-1) / SymExpr(K(1) * K(1))).is_degree(-2));
  EXPECT_EQ(k_homogeneity(SymExpr(K(1) + 1)).kind, HomogeneityKind::NotHomogeneous);
  EXPECT_EQ(k_homogeneity(SymExpr(0)).kind, HomogeneityKind::Zero);
}

TEST(SymExpr, DerivativeQuotientRule) {
  SymExpr f = SymExpr(X(1)) / SymExpr(X(1) + 1);
  EXPECT_EQ(f.derivative(Var::x(1)), SymExpr(1) / SymExpr((X(1) + 1).pow(2)));
}

}  // namespace
}  // namespace sml
