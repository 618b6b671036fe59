#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sml/error.hpp"
#include "sml/superop.hpp"

namespace sml {
namespace {

using namespace sml::testing;

SuperOperator superparticle() {
  SuperOperator p(1, 1, Rational(3, 2));
  p.set(mi(1, {}), mi(1, {1}), DiffOp::partial(1, 1));
  p.set(mi(1, {1}), mi(1, {}), DiffOp::partial(1, 1, 2));
  return p;
}

Matrix<SymExpr> mat2(SymExpr a, SymExpr b, SymExpr c_, SymExpr d) {
  Matrix<SymExpr> m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c_;
  m(1, 1) = d;
  return m;
}

TEST(DiffOpSymbol, ImaginaryUnitConvention) {
  EXPECT_EQ(diff_op_principal_symbol(DiffOp::partial(1, 1), 1), I * k(1));
  EXPECT_EQ(diff_op_principal_symbol(DiffOp::partial(1, 1, 2), 2), -k(1) * k(1));
  EXPECT_EQ(diff_op_principal_symbol(DiffOp(1, p("m")), 1), SymExpr(0));
  EXPECT_THROW(diff_op_principal_symbol(DiffOp::partial(1, 1, 2), 1), OrderViolation);
}

TEST(DiffOp, CompositionLeibniz) {
  DiffOp dx = DiffOp::partial(1, 1);
  DiffOp mx(1, x(1));
  DiffOp expected(1);
  expected.add_term({1}, x(1));
  expected.add_term({0}, c(1));
  EXPECT_EQ(dx * mx, expected);
  EXPECT_EQ(dx * dx, DiffOp::partial(1, 1, 2));
}

TEST(Superparticle, SymbolInverseAndVerdict) {
  SuperSymbol s = principal_symbol(superparticle());
  EXPECT_EQ(s.matrix(), mat2(c(0), I * k(1), -k(1) * k(1), c(0)));
  SuperSymbol inv = symbol_inverse(s);
  EXPECT_EQ(inv.matrix(), mat2(c(0), c(-1) / (k(1) * k(1)), -I / k(1), c(0)));
  EXPECT_EQ(inv.order(), Rational(-3, 2));
  EXPECT_EQ(compose_symbols(s, inv).matrix(), Matrix<SymExpr>::identity(2));
  auto v = ellipticity_verdict(s);
  EXPECT_EQ(v.tag, Verdict::Elliptic);
  EXPECT_EQ(v.determinant, I * k(1).pow(3));
}

TEST(SuperOperator, RejectsOrderViolations) {
  SuperOperator p(1, 1, Rational(3, 2));
  EXPECT_THROW(p.set(mi(1, {}), mi(1, {1}), DiffOp::partial(1, 1, 2)), OrderViolation);
  SuperOperator q(1, 1, 1);
  EXPECT_THROW(q.set(mi(1, {}), mi(1, {1}), DiffOp(1, c(1))), OrderViolation);
}

TEST(SuperOperator, ComposeMatchesSymbols) {
  SuperOperator p = superparticle();
  SuperOperator pp = compose_ops(p, p);
  EXPECT_EQ(pp.order(), 3);
  EXPECT_EQ(principal_symbol(pp), compose_symbols(principal_symbol(p), principal_symbol(p)));
  EXPECT_EQ(pp.component(mi(1, {}), mi(1, {})), DiffOp::partial(1, 1, 3));
}

TEST(Subprincipal, NextToLeadingCoefficient) {
  SuperOperator a(1, 0, 1);
  DiffOp op = DiffOp::partial(1, 1) + DiffOp(1, p("m"));
  a.set(mi(0, {}), mi(0, {}), op);
  EXPECT_EQ(subprincipal_symbol(a).matrix()(0, 0), p("m"));
  SuperOperator b(1, 0, 1);
  b.set(mi(0, {}), mi(0, {}), DiffOp::partial(1, 1));
  EXPECT_EQ(subprincipal_symbol(b).matrix()(0, 0), SymExpr(0));
}

TEST(PoissonBracket, Convention) {
  auto one = [](SymExpr e) {
    Matrix<SymExpr> m(1, 1);
    m(0, 0) = e;
    return m;
  };
  EXPECT_EQ(poisson_bracket(one(k(1)), one(x(1)), 1)(0, 0), c(1));
  EXPECT_EQ(poisson_bracket(one(k(1) * k(1)), one(x(1) * k(1)), 1)(0, 0), c(2) * k(1) * k(1));
  EXPECT_EQ(poisson_bracket(one(k(1) * k(2)), one(k(2)), 2)(0, 0), c(0));
}

TEST(Ellipticity, ZeroSymbolDegenerate) {
  SuperSymbol z(2, 1, 1, Matrix<SymExpr>(2, 2));
  auto v = ellipticity_verdict(z);
  EXPECT_EQ(v.tag, Verdict::Degenerate);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->second, (RVector{1, 0}));
}

TEST(Ellipticity, DefiniteAndLinearFactor) {
  Matrix<SymExpr> m(1, 1);
  m(0, 0) = k(1) * k(1) + k(2) * k(2);
  EXPECT_EQ(ellipticity_verdict(SuperSymbol(2, 0, 2, m)).tag, Verdict::Elliptic);
  m(0, 0) = k(1) * (k(1) + k(2));
  auto v = ellipticity_verdict(SuperSymbol(2, 0, 2, m));
  EXPECT_EQ(v.tag, Verdict::Hyperbolic);  // signature (1,1)
  v = ellipticity_verdict(SuperSymbol(3, 0, 2, m));
  EXPECT_EQ(v.tag, Verdict::Degenerate);
  m(0, 0) = k(1) * k(1) * (k(1) + k(2));
  v = ellipticity_verdict(SuperSymbol(2, 0, 3, m));
  EXPECT_EQ(v.tag, Verdict::Degenerate);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->second, (RVector{-1, 1}));
  m(0, 0) = x(1) * k(1) * k(1) + k(2) * k(2);
  v = ellipticity_verdict(SuperSymbol(2, 0, 2, m));
  EXPECT_EQ(v.tag, Verdict::Degenerate);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(m(0, 0).evaluate({{Var::x(1), Complex(v.witness->first[0])},
                              {Var::x(2), Complex(v.witness->first[1])},
                              {Var::k(1), Complex(v.witness->second[0])},
                              {Var::k(2), Complex(v.witness->second[1])}}),
            Complex(0));
}

TEST(Inertia, Signatures) {
  Matrix<Rational> g(3, 3);
  g(0, 0) = 1;
  g(1, 1) = -1;
  g(2, 2) = -1;
  auto in = inertia(g);
  EXPECT_EQ(in.positive, 1u);
  EXPECT_EQ(in.negative, 2u);
  Matrix<Rational> h(2, 2);
  h(0, 1) = 1;
  h(1, 0) = 1;
  in = inertia(h);
  EXPECT_EQ(in.positive, 1u);
  EXPECT_EQ(in.negative, 1u);
}

}  // namespace
}  // namespace sml
