#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sml/error.hpp"
#include "sml/propagation.hpp"

namespace sml {
namespace {

using namespace sml::testing;

SymExpr gkk() { return k(1) * k(1) - k(2) * k(2) - k(3) * k(3); }

/// Block matrix in (phi, psi1, psi2, F) order from the printed 3x3 layout.
Matrix<SymExpr> blocks(const SymExpr& tl, const Matrix<SymExpr>& mid, const SymExpr& tr, const SymExpr& bl,
                       const SymExpr& br) {
  Matrix<SymExpr> m(4, 4);
  m(0, 0) = tl;
  m(0, 3) = tr;
  m(3, 0) = bl;
  m(3, 3) = br;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) m(1 + a, 1 + b) = mid(a, b);
  }
  return m;
}

TEST(Gamma, CliffordRelation) {
  EXPECT_TRUE(clifford_relation_holds(gamma_matrices(), minkowski_metric()));
  Matrix<SymExpr> gk = slashed_covector();
  EXPECT_EQ(determinant(gk), -gkk());
  EXPECT_EQ(gk * gk, gkk() * Matrix<SymExpr>::identity(2));
}

TEST(WessZumino, SymbolInverseVerdictCompanion) {
  SymExpr m = p("m");
  HyperbolicSystem wz = wz_model(m);
  Matrix<SymExpr> gk = slashed_covector();
  SuperSymbol s = principal_symbol(wz.p);
  EXPECT_EQ(s.matrix(), blocks(c(0), -gk, c(-1), -gkk(), c(0)));
  SuperSymbol inv = symbol_inverse(s);
  Matrix<SymExpr> mid = gk.map([](const SymExpr& e) { return -e / gkk(); });
  EXPECT_EQ(inv.matrix(), blocks(c(0), mid, c(-1) / gkk(), c(-1), c(0)));
  auto v = ellipticity_verdict(s);
  EXPECT_EQ(v.tag, Verdict::Hyperbolic);
  ASSERT_TRUE(v.quadratic_form);
  EXPECT_EQ(*v.quadratic_form, gkk().numerator());
  DiffOp box = DiffOp::partial(3, 1, 2) - DiffOp::partial(3, 2, 2) - DiffOp::partial(3, 3, 2);
  EXPECT_EQ(wz.q, box + DiffOp(3, m * m));
  EXPECT_EQ(subprincipal_symbol(wz.p).matrix(), m * Matrix<SymExpr>::identity(4));
}

TEST(WessZumino, MassZeroCompanion) {
  HyperbolicSystem wz = wz_model(c(0));
  EXPECT_EQ(wz.q.order(), 2u);
  EXPECT_EQ(wz.q.coefficient({0, 0, 0}), SymExpr(0));
}

TEST(Companion, RejectsMismatchedPair) {
  HyperbolicSystem wz = wz_model(c(1));
  auto r = verify_companion(wz.p, wz.p);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.failure.empty());
  auto id = verify_companion(SuperOperator::identity(3, 2), SuperOperator::identity(3, 2));
  EXPECT_TRUE(id.ok);
  EXPECT_EQ(id.q, DiffOp(3, c(1)));
}

TEST(Characteristic, ConeAndCurve) {
  auto cs = characteristic_set(wz_model(c(1)).q);
  EXPECT_TRUE(cs.contains({1, 1, 0}));
  EXPECT_FALSE(cs.contains({1, 0, 0}));
  auto curve = hamiltonian_curve(cs, {0, 0, 0}, {1, 1, 0});
  EXPECT_EQ(curve.point(Rational(1)), (RVector{2, -2, 0}));
  EXPECT_EQ(curve.point(Rational(0)), (RVector{0, 0, 0}));
  auto other = hamiltonian_curve(cs, {0, 0, 0}, {1, 0, 1});
  EXPECT_EQ(other.point(Rational(1)), (RVector{2, 0, -2}));
  EXPECT_THROW(hamiltonian_curve(cs, {0, 0, 0}, {0, 0, 0}), Error);
  EXPECT_THROW(hamiltonian_curve(cs, {0, 0, 0}, {1, 0, 0}), Error);
}

TEST(Propagation, WessZumino) {
  SymExpr m = p("m");
  HyperbolicSystem wz = wz_model(m);
  auto pc = partial_connection(wz);
  Matrix<SymExpr> pt = principal_symbol(wz.p_tilde).matrix();
  EXPECT_EQ(pc.coefficient, (I * m) * pt);
  EXPECT_EQ(pc.coefficient(3, 0), I * m * gkk());
  ASSERT_EQ(pc.cone_entries.size(), 1u);
  EXPECT_EQ(pc.cone_entries[0], std::make_pair(std::size_t{3}, std::size_t{0}));
  auto cs = characteristic_set(wz.q);
  for (RVector k0 : {RVector{1, 1, 0}, RVector{1, 0, 1}, RVector{5, 3, 4}}) {
    auto curve = hamiltonian_curve(cs, {0, 0, 0}, k0);
    auto kernel = kernel_bundle(wz.p, curve);
    ASSERT_EQ(kernel.size(), 2u);
    EXPECT_TRUE(reduced_action(pc, curve, kernel).is_zero());
  }
  auto orbit = hamiltonian_orbit(wz, {0, 0, 0}, {1, 1, 0}, {1, 0, 0, 0});
  EXPECT_TRUE(orbit.section.constant());
  EXPECT_THROW(hamiltonian_orbit(wz, {0, 0, 0}, {1, 1, 0}, {0, 0, 0, 0}), Error);
  EXPECT_THROW(hamiltonian_orbit(wz, {0, 0, 0}, {1, 1, 0}, {0, 0, 0, 1}), Error);
}

TEST(Propagation, NonzeroActionTransport) {
  SymExpr cc = c(3);
  SuperOperator pop(2, 0, 1);
  pop.set(mi(0, {}), mi(0, {}), DiffOp::partial(2, 1) + DiffOp::partial(2, 2) + DiffOp(2, cc));
  SuperOperator pt(2, 0, 1);
  pt.set(mi(0, {}), mi(0, {}), DiffOp::partial(2, 1) - DiffOp::partial(2, 2));
  HyperbolicSystem sys = make_system(pop, pt);
  auto orbit = hamiltonian_orbit(sys, {0, 0}, {1, -1}, {1});
  EXPECT_EQ(orbit.section.rate, c(-6));
  auto pc = partial_connection(sys);
  EXPECT_TRUE(section_solves_transport(orbit.section, connection_at(pc, orbit.curve)));
  OrbitSection wrong = orbit.section;
  wrong.rate = c(6);
  EXPECT_FALSE(section_solves_transport(wrong, connection_at(pc, orbit.curve)));
}

}  // namespace
}  // namespace sml
