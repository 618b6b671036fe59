#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sml/morphism.hpp"
#include "sml/superop.hpp"

namespace sml {
namespace {

using namespace sml::testing;

/// U^{1|2} -> V^{1|1}: y = x + th1 th2, z = th1.
SuperMorphism running_example() {
  Superfunction y(2, x(1));
  y.set(mi(2, {1, 2}), c(1));
  return SuperMorphism(1, 2, 1, 1, {y}, {Superfunction::generator(2, 1)});
}

TEST(Pullback, TaylorExpansion) {
  SymExpr f0 = x(1).pow(3) + c(2);
  SymExpr f1 = x(1) * x(1);
  Superfunction f(1, f0);
  f.set(mi(1, {1}), f1);
  Superfunction expected(2, f0);
  expected.set(mi(2, {1}), f1);
  expected.set(mi(2, {1, 2}), c(3) * x(1) * x(1));
  EXPECT_EQ(pullback_superfunction(running_example(), f), expected);
  EXPECT_EQ(factorize(running_example()).apply(f), expected);
}

TEST(Factorize, RunningExampleEntries) {
  auto data = factorize(running_example());
  ASSERT_EQ(data.dchi.size(), 3u);
  EXPECT_EQ((data.dchi.at({mi(2, {}), mi(1, {})}).at({0})), c(1));
  EXPECT_EQ((data.dchi.at({mi(2, {1}), mi(1, {1})}).at({0})), c(1));
  EXPECT_EQ((data.dchi.at({mi(2, {1, 2}), mi(1, {})}).at({1})), c(1));
  auto pol = polarization_map(running_example());
  EXPECT_EQ(pol(3, 0), I * k(1));
  EXPECT_EQ(pol(0, 0), c(1));
  EXPECT_EQ(pol(1, 1), c(1));
}

TEST(Morphism, IdentityAndCompose) {
  auto chi = running_example();
  EXPECT_EQ(compose(chi, SuperMorphism::identity(1, 2)), chi);
  EXPECT_EQ(compose(SuperMorphism::identity(1, 1), chi), chi);
  EXPECT_EQ(polarization_map(SuperMorphism::identity(2, 2)), Matrix<SymExpr>::identity(4));
}

TEST(Morphism, InverseOfOddShear) {
  // y = x + th1 th2, z1 = th1 + x th1 th2? must be odd: z1 = th1, z2 = th2 + th1 x.
  Superfunction y(2, c(2) * x(1) + c(1));
  y.set(mi(2, {1, 2}), x(1));
  Superfunction z1 = Superfunction::generator(2, 1);
  Superfunction z2 = Superfunction::generator(2, 2) + Superfunction::generator(2, 1) * c(3);
  SuperMorphism chi(1, 2, 1, 2, {y}, {z1, z2});
  SuperMorphism psi = inverse(chi);
  EXPECT_EQ(compose(psi, chi), SuperMorphism::identity(1, 2));
  EXPECT_EQ(compose(chi, psi), SuperMorphism::identity(1, 2));
}

TEST(Morphism, Functoriality) {
  auto chi = running_example();
  Superfunction w(1, x(1) * x(1) + c(3) * x(1));
  SuperMorphism outer(1, 1, 2, 1, {Superfunction(1, x(1) * x(1)), Superfunction(1, x(1) + c(1))},
                      {Superfunction::generator(1, 1) * (x(1) + c(2))});
  EXPECT_EQ(polarization_map(compose(outer, chi)), polarization_map_product(outer, chi));
}

TEST(NormalSet, DiagonalAndPoint) {
  SuperMorphism diag(2, 0, 4, 0, {Superfunction(0, x(1)), Superfunction(0, x(2)), Superfunction(0, x(1)), Superfunction(0, x(2))}, {});
  auto ns = normal_set(diag);
  ASSERT_TRUE(ns.affine);
  EXPECT_EQ(ns.covectors, LinearSubspace::span(4, {{1, 0, -1, 0}, {0, 1, 0, -1}}));
  EXPECT_TRUE(ns.image.contains({3, 5, 3, 5}));
  EXPECT_FALSE(ns.image.contains({3, 5, 3, 4}));
  SuperMorphism point(0, 0, 2, 1, {Superfunction(0, c(1)), Superfunction(0, c(2))}, {Superfunction(0)});
  auto np = normal_set(point);
  EXPECT_EQ(np.covectors, LinearSubspace::full(2));
  EXPECT_EQ(np.image, AffineSubspace::point({1, 2}));
}

TEST(Conjugate, IdentityAndRescaling) {
  SuperOperator p(1, 1, Rational(3, 2));
  p.set(mi(1, {}), mi(1, {1}), DiffOp::partial(1, 1));
  p.set(mi(1, {1}), mi(1, {}), DiffOp::partial(1, 1, 2));
  EXPECT_EQ(conjugate(p, SuperMorphism::identity(1, 1)), p);
  SuperMorphism scale(1, 1, 1, 1, {Superfunction(1, c(2) * x(1))}, {Superfunction::generator(1, 1)});
  SuperOperator b = conjugate(p, scale);
  // Symbol law with A = 2: sigma_B(y, k) = sigma_A(x, 2k).
  Matrix<SymExpr> expected = principal_symbol(p).matrix().map(
      [](const SymExpr& e) { return e.substitute({{Var::k(1), c(2) * k(1)}}); });
  EXPECT_EQ(principal_symbol(b).matrix(), expected);
}

TEST(Atlas, CocycleChecks) {
  SuperMorphism shift(1, 1, 1, 1, {Superfunction(1, x(1) + c(1))}, {Superfunction::generator(1, 1)});
  SuperMorphism back(1, 1, 1, 1, {Superfunction(1, x(1) - c(1))}, {Superfunction::generator(1, 1)});
  std::vector<Chart> charts{{"U1", 1, 1}, {"U2", 1, 1}};
  auto ok = validate_atlas(charts, {{"U1", "U2", shift}, {"U2", "U1", back}});
  EXPECT_TRUE(ok.valid);
  auto bad = validate_atlas(charts, {{"U1", "U2", shift}, {"U2", "U1", shift}});
  EXPECT_FALSE(bad.valid);
  EXPECT_FALSE(bad.failures.empty());
}

}  // namespace
}  // namespace sml
