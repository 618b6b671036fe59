#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "sml/wavefront.hpp"

namespace sml {
namespace {

using namespace sml::testing;

CatalogSum delta0(unsigned m) { return CatalogSum::delta_point(RVector(m, 0)); }
RVector rv(std::initializer_list<long> v) {
  RVector out;
  for (long e : v) out.emplace_back(e);
  return out;
}

/// <u, phi> for sums of point deltas, straight from the definition.
Complex pair(const CatalogSum& u, const Poly& phi) {
  Complex total(0);
  for (const auto& [atom, c] : u.atoms()) {
    Poly d = phi;
    for (std::size_t j = 0; j < atom.beta.size(); ++j) {
      for (unsigned e = 0; e < atom.beta[j]; ++e) d = d.derivative(Var::x(j + 1));
    }
    std::map<Var, Complex> pt;
    for (std::size_t j = 0; j < atom.point.size(); ++j) pt.emplace(Var::x(j + 1), Complex(atom.point[j]));
    Complex v = d.evaluate(pt) * c;
    total += total_order(atom.beta) % 2 ? -v : v;
  }
  return total;
}

Poly random_poly(std::mt19937_64& rng, unsigned m, unsigned degree) {
  std::uniform_int_distribution<int> coeff(-3, 3), exp(0, static_cast<int>(degree) / 2);
  Poly p;
  for (int t = 0; t < 4; ++t) {
    Poly mono(Complex(coeff(rng)));
    for (unsigned j = 1; j <= m; ++j) mono *= Poly::variable(Var::x(j)).pow(exp(rng));
    p += mono;
  }
  return p;
}

TEST(Catalog, WavefrontOfModels) {
  auto wf = wavefront(delta0(2));
  ASSERT_EQ(wf.strata.size(), 1u);
  EXPECT_TRUE(wf.exact);
  EXPECT_EQ(wf.strata[0].base, AffineSubspace::point(rv({0, 0})));
  EXPECT_EQ(wf.strata[0].covectors, LinearSubspace::full(2));

  auto h = wavefront(CatalogSum::heaviside(rv({1, 0}), 0));
  ASSERT_EQ(h.strata.size(), 1u);
  EXPECT_EQ(h.strata[0].covectors, LinearSubspace::span(2, {rv({1, 0})}));
  EXPECT_TRUE(h.strata[0].base.contains(rv({0, 5})));
  EXPECT_FALSE(h.strata[0].base.contains(rv({1, 0})));

  EXPECT_TRUE(wavefront(CatalogSum::smooth(2, (x(1) * x(2)).numerator())).is_empty());

  auto merged = wavefront(delta0(2) + delta0(2).derivative({1, 0}));
  EXPECT_EQ(merged.strata.size(), 1u);
  EXPECT_TRUE(merged.exact);
  auto crossing = wavefront(CatalogSum::heaviside(rv({1, 0}), 0) + CatalogSum::heaviside(rv({0, 1}), 0));
  EXPECT_EQ(crossing.strata.size(), 2u);
  EXPECT_TRUE(crossing.exact);
  EXPECT_FALSE(wavefront(CatalogSum::heaviside(rv({1, 0}), 0) + delta0(2)).exact);
}

TEST(Catalog, DistributionalDerivatives) {
  auto h = CatalogSum::heaviside(rv({1, 0}), 0);
  EXPECT_EQ(h.derivative({1, 0}), CatalogSum::delta_hyperplane(rv({1, 0}), 0));
  EXPECT_TRUE(h.derivative({0, 1}).is_zero());
  EXPECT_EQ(h.derivative({2, 0}), CatalogSum::delta_hyperplane(rv({1, 0}), 0, 1));
  // H(-x1) = 1 - H(x1), and delta(-x1) = delta(x1).
  auto flipped = CatalogSum::heaviside(rv({-1, 0}), 0);
  EXPECT_EQ(flipped + h, CatalogSum::smooth(2, Poly(1)));
  EXPECT_EQ(flipped.derivative({1, 0}), Complex(-1) * CatalogSum::delta_hyperplane(rv({-1, 0}), 0));
  // delta'(2 x1 - 2) = (1/4) delta'(x1 - 1)
  EXPECT_EQ(CatalogSum::delta_hyperplane(rv({2, 0}), 2, 1),
            Complex(Rational(1, 4)) * CatalogSum::delta_hyperplane(rv({1, 0}), 1, 1));
}

TEST(Catalog, PolynomialTimesDeltaMatchesPairing) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Poly p = random_poly(rng, 2, 3);
    Poly phi = random_poly(rng, 2, 4);
    std::uniform_int_distribution<int> small(0, 2), pt(-2, 2);
    RVector point = {Rational(pt(rng)), Rational(pt(rng))};
    CatalogSum u = CatalogSum::delta_point(point, {static_cast<unsigned>(small(rng)), static_cast<unsigned>(small(rng))});
    EXPECT_EQ(pair(u.multiply(p), phi), pair(u, p * phi));
  }
  EXPECT_EQ(delta0(1).derivative({1}).multiply(x(1).numerator()), Complex(-1) * delta0(1));
  EXPECT_THROW(CatalogSum::heaviside(rv({1}), 0).multiply(x(1).numerator()), Unsupported);
}

SuperDistribution delta_pair(long top) {
  SuperDistribution u(2, 2);
  u.set(mi(2, {}), delta0(2));
  u.set(mi(2, {1, 2}), Complex(top) * delta0(2));
  return u;
}

const SuperOperator* cancelling(const std::vector<SuperOperator>& ops, unsigned n) {
  for (const auto& a : ops) {
    if (!a.component(MultiIndex::full(n), MultiIndex::empty(n)).terms().empty()) return &a;
  }
  return nullptr;
}

TEST(SuperWF, DeltaPairAnnihilator) {
  auto u = delta_pair(1);
  auto ops = auto_annihilators(u);
  const SuperOperator* a = cancelling(ops, 2);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->component(mi(2, {1, 2}), mi(2, {})), DiffOp(2, c(-1)));
  EXPECT_EQ(a->component(mi(2, {1, 2}), mi(2, {1, 2})), DiffOp(2, c(1)));
  EXPECT_TRUE(apply_op(*a, u).components().empty());

  // The (J,I) entry sits below its slot bound, so sigma_0(A) keeps only the (J,J) entry.
  auto sym = principal_symbol(*a);
  EXPECT_EQ(sym.entry(mi(2, {1, 2}), mi(2, {1, 2})), c(1));
  EXPECT_TRUE(sym.entry(mi(2, {1, 2}), mi(2, {})).is_zero());

  auto swf = swf_upper_bound(u, ops);
  ASSERT_EQ(swf.pieces.size(), 1u);
  const auto& piece = swf.pieces[0];
  // lambda_(1,1) = 0 while the body polarization survives.
  std::vector<SymExpr> top(4, c(0)), body(4, c(0));
  top[3] = c(1);
  body[0] = c(1);
  auto on_top = piece.constraints.apply(top);
  EXPECT_TRUE(std::any_of(on_top.begin(), on_top.end(), [](const SymExpr& e) { return !e.is_zero(); }));
  for (const auto& e : piece.constraints.apply(body)) EXPECT_TRUE(e.is_zero());

  auto report = projection_check(swf, u);
  EXPECT_EQ(report.status, Tri::Holds) << report.detail;
}

TEST(SuperWF, ScaledCancellationWeights) {
  auto u = delta_pair(2);
  auto ops = auto_annihilators(u);
  const SuperOperator* a = cancelling(ops, 2);
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->component(mi(2, {1, 2}), mi(2, {})), DiffOp(2, c(-2)));
  EXPECT_TRUE(a->component(mi(2, {1, 2}), mi(2, {1})).terms().empty());
  EXPECT_EQ(a->component(mi(2, {1, 2}), mi(2, {1, 2})), DiffOp(2, c(1)));
  EXPECT_TRUE(apply_op(*a, u).components().empty());
}

TEST(SuperWF, DistinctComponentsOnlySmoothAnnihilators) {
  SuperDistribution u(2, 1);
  u.set(mi(1, {}), delta0(2));
  u.set(mi(1, {1}), CatalogSum::heaviside(rv({1, 1}), 1));
  EXPECT_TRUE(auto_annihilators(u).empty());
  u.set(mi(1, {1}), CatalogSum::smooth(2, x(1).numerator()));
  EXPECT_EQ(auto_annihilators(u).size(), 1u);
}

TEST(SuperWF, TrivialBounds) {
  SuperDistribution smooth(2, 1);
  smooth.set(mi(1, {}), CatalogSum::smooth(2, x(2).numerator()));
  EXPECT_TRUE(swf_upper_bound(smooth, {SuperOperator::identity(2, 1)}).pieces.empty());

  auto u = delta_pair(1);
  auto bare = swf_upper_bound(u, {});
  ASSERT_EQ(bare.pieces.size(), 1u);
  EXPECT_EQ(bare.pieces[0].constraints.rows(), 0u);
  EXPECT_EQ(projection_check(bare, u).status, Tri::Holds);

  EXPECT_THROW(swf_upper_bound(u, {SuperOperator::identity(2, 2)}), NotSmoothing);
}

TEST(SuperWF, ProjectionNeedsExactComponents) {
  SuperDistribution u(2, 0);
  u.set(mi(0, {}), CatalogSum::heaviside(rv({1, 0}), 0) + delta0(2));
  EXPECT_EQ(projection_check(swf_upper_bound(u, {}), u).status, Tri::Unknown);
}

TEST(SuperWF, PushThroughSymbol) {
  auto u = delta_pair(1);
  auto swf = swf_upper_bound(u, auto_annihilators(u));
  EXPECT_EQ(push_through_symbol(swf, SuperSymbol::identity(2, 2), true), swf);

  // Invertible S: every S lambda with lambda in the old fiber meets the new constraints.
  Matrix<SymExpr> s = Matrix<SymExpr>::identity(4);
  s(2, 1) = c(2);
  s(3, 0) = I * k(1);
  s(2, 2) = c(3);
  auto pushed = push_through_symbol(swf, SuperSymbol(2, 2, 0, s), false);
  EXPECT_EQ(pushed.kind, BoundKind::Image);
  for (const auto& lambda : nullspace(swf.pieces[0].constraints)) {
    for (const auto& e : pushed.pieces[0].constraints.apply(s.apply(lambda))) EXPECT_TRUE(e.is_zero());
  }
  EXPECT_EQ(nullspace(pushed.pieces[0].constraints).size(), nullspace(swf.pieces[0].constraints).size());

  // A symbol killing the fiber leaves only the zero polarization.
  Matrix<SymExpr> kill(4, 4);
  kill(3, 3) = c(1);
  auto dead = push_through_symbol(swf, SuperSymbol(2, 2, 0, kill), false);
  EXPECT_EQ(dead.pieces[0].constraints.rows(), 4u);
}

TEST(SuperWF, ContainmentUnderOperators) {
  auto u = delta_pair(1);
  auto swf = swf_upper_bound(u, auto_annihilators(u));
  // A = d_x1 on every component, then A = projection onto the body.
  SuperOperator d1(2, 2, 1);
  for (const auto& i : all_multi_indices(2)) d1.set(i, i, DiffOp::partial(2, 1));
  SuperOperator body(2, 2, 0);
  body.set(mi(2, {}), mi(2, {}), DiffOp(2, c(1)));
  for (const auto& a : {d1, body}) {
    auto au = apply_op(a, u);
    auto bound = swf_upper_bound(au, auto_annihilators(au));
    auto pushed = push_through_symbol(swf, principal_symbol(a), false);
    EXPECT_TRUE(swf_contains(bound, pushed));
  }
}

/// U^{2|2} -> V^{2|2}: y = A x + b, z1 = th1 + th2 scaled, z2 = th2.
SuperMorphism affine_iso(long a01, long b0, long shear) {
  Superfunction y1(2, x(1) + c(a01) * x(2) + c(b0));
  Superfunction y2(2, x(2));
  Superfunction z1 = Superfunction::generator(2, 1) + Superfunction::generator(2, 2) * c(shear);
  Superfunction z2 = Superfunction::generator(2, 2);
  return SuperMorphism(2, 2, 2, 2, {y1, y2}, {z1, z2});
}

TEST(Transform, IdentityAndTranslation) {
  SuperDistribution u(2, 2);
  u.set(mi(2, {}), delta0(2));
  u.set(mi(2, {1}), delta0(2));
  auto swf = swf_upper_bound(u, auto_annihilators(u));
  EXPECT_EQ(transform(swf, SuperMorphism::identity(2, 2)), swf);
  auto moved = transform(swf, affine_iso(0, 3, 0));
  ASSERT_EQ(moved.pieces.size(), 1u);
  EXPECT_EQ(moved.pieces[0].stratum.base, AffineSubspace::point(rv({-3, 0})));
  EXPECT_EQ(moved.pieces[0].constraints, swf.pieces[0].constraints);
}

TEST(Transform, OddShearMatchesDirectBound) {
  SuperDistribution u(2, 2);
  u.set(mi(2, {}), delta0(2));
  u.set(mi(2, {1}), delta0(2));
  auto chi = affine_iso(0, 0, 1);
  auto swf = swf_upper_bound(u, auto_annihilators(u));
  auto pulled = pullback_check(chi, u).reduced;
  ASSERT_TRUE(pulled.has_value());
  // chi* u = v + v th1 + v th2
  EXPECT_EQ(pulled->component(mi(2, {2})), delta0(2));
  auto direct = swf_upper_bound(*pulled, auto_annihilators(*pulled));
  EXPECT_EQ(transform(swf, chi), direct);
}

TEST(Transform, Functoriality) {
  SuperDistribution u(2, 2);
  u.set(mi(2, {}), CatalogSum::heaviside(rv({1, 2}), 1));
  u.set(mi(2, {2}), CatalogSum::heaviside(rv({1, 2}), 1));
  u.set(mi(2, {1, 2}), delta0(2));
  auto swf = swf_upper_bound(u, auto_annihilators(u));
  auto chi = affine_iso(2, 1, 3);
  auto chi2 = affine_iso(-1, 4, -2);
  EXPECT_EQ(transform(transform(swf, chi), chi2), transform(swf, compose(chi, chi2)));
}

SuperMorphism point_inclusion(const RVector& p) {
  std::vector<Superfunction> even;
  for (const auto& e : p) even.emplace_back(0, SymExpr(Complex(e)));
  return SuperMorphism(0, 0, 2, 2, even, {Superfunction(0), Superfunction(0)});
}

TEST(Pullback, PointInclusion) {
  SuperDistribution u(2, 2);
  u.set(mi(2, {}), CatalogSum::smooth(2, x(1).numerator()));
  u.set(mi(2, {1}), delta0(2));
  u.set(mi(2, {1, 2}), delta0(2).derivative({0, 1}));
  EXPECT_EQ(pullback_check(point_inclusion(rv({0, 0})), u).verdict, Admissibility::Admissible);

  u.set(mi(2, {}), delta0(2));
  auto bad = pullback_check(point_inclusion(rv({0, 0})), u);
  EXPECT_EQ(bad.verdict, Admissibility::NotGuaranteed);
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(bad.witness->point, rv({0, 0}));
  EXPECT_EQ(pullback_check(point_inclusion(rv({1, 0})), u).verdict, Admissibility::Admissible);
}

TEST(Pullback, SubmersionAlwaysAdmissible) {
  SuperDistribution u(1, 0);
  u.set(mi(0, {}), delta0(1).derivative({2}));
  SuperMorphism proj(2, 0, 1, 0, {Superfunction(0, x(1) - x(2))}, {});
  EXPECT_EQ(pullback_check(proj, u).verdict, Admissibility::Admissible);
  SuperMorphism curved(1, 0, 1, 0, {Superfunction(0, x(1) * x(1))}, {});
  EXPECT_EQ(pullback_check(curved, u).verdict, Admissibility::Unknown);
}

TEST(Multiply, OddFilter) {
  SuperDistribution u(2, 1);
  u.set(mi(1, {1}), delta0(2));
  auto r = multiply_check(u, u);
  EXPECT_EQ(r.verdict, Admissibility::Admissible);
  ASSERT_TRUE(r.product.has_value());
  EXPECT_TRUE(r.product->components().empty());
}

TEST(Multiply, DeltaSquaredNotGuaranteed) {
  SuperDistribution u(2, 0);
  u.set(mi(0, {}), delta0(2));
  auto r = multiply_check(u, u);
  EXPECT_EQ(r.verdict, Admissibility::NotGuaranteed);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->point, rv({0, 0}));
  EXPECT_NE(r.witness->covector, rv({0, 0}));
}

TEST(Multiply, TransversalHyperplanes) {
  SuperDistribution h(2, 0), d(2, 0);
  h.set(mi(0, {}), CatalogSum::heaviside(rv({1, 0}), 0));
  d.set(mi(0, {}), CatalogSum::delta_hyperplane(rv({0, 1}), 0));
  EXPECT_EQ(multiply_check(h, d).verdict, Admissibility::Admissible);
  // Sufficient, not necessary: H * H is classical but the pair test fails.
  EXPECT_EQ(multiply_check(h, h).verdict, Admissibility::NotGuaranteed);
}

TEST(Multiply, CatalogProducts) {
  SuperDistribution u(2, 1), v(2, 1);
  u.set(mi(1, {}), delta0(2));
  v.set(mi(1, {1}), CatalogSum::smooth(2, (x(1) + c(2)).numerator()));
  auto r = multiply_check(u, v);
  ASSERT_TRUE(r.product.has_value());
  EXPECT_EQ(r.product->component(mi(1, {1})), Complex(2) * delta0(2));

  SuperDistribution w(2, 1);
  w.set(mi(1, {1}), CatalogSum::heaviside(rv({1, 0}), -1));
  auto s = multiply_check(u, w);
  ASSERT_TRUE(s.product.has_value());
  EXPECT_EQ(s.product->component(mi(1, {1})), delta0(2));
}

}  // namespace
}  // namespace sml
