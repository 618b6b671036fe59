#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sml/diffop.hpp"
#include "sml/geometry.hpp"
#include "sml/matrix.hpp"
#include "sml/superop.hpp"

namespace sml {

using CVector = std::vector<Complex>;
using SVector = std::vector<SymExpr>;

/// gamma^0 = sigma_2, gamma^1 = i sigma_1, gamma^2 = i sigma_3; they satisfy
/// {gamma^mu, gamma^nu} = 2 g^{mu nu} for g = diag(1, -1, -1).
std::array<Matrix<Complex>, 3> gamma_matrices();
Matrix<Rational> minkowski_metric();
/// Whether {gamma^mu, gamma^nu} = 2 g^{mu nu} holds exactly.
bool clifford_relation_holds(const std::array<Matrix<Complex>, 3>& gamma, const Matrix<Rational>& g);
/// gamma^mu k_mu with k1, k2, k3 standing for k_0, k_1, k_2.
Matrix<SymExpr> slashed_covector();

struct HyperbolicSystem {
  SuperOperator p;
  SuperOperator p_tilde;
  DiffOp q;
  Matrix<Rational> metric;
};

/// P o~ P = q id check: returns q, or the offending slot.
struct CompanionResult {
  bool ok = false;
  DiffOp q;
  std::string failure;
};
CompanionResult verify_companion(const SuperOperator& p, const SuperOperator& p_tilde);

/// The 3|2 Wess-Zumino operator and its companion on Minkowski space.
HyperbolicSystem wz_model(const SymExpr& mass);
/// Builds a system from a verified companion pair; throws Error if the
/// companion check fails or the coefficients are not constant.
HyperbolicSystem make_system(const SuperOperator& p, const SuperOperator& p_tilde);

struct CharacteristicSet {
  /// sigma_2(Q) = -g^{mu nu} k_mu k_nu.
  Poly principal;
  Matrix<Rational> metric;
  Inertia signature;
  bool contains(const RVector& k) const;
  /// g(k, k) as a polynomial in k.
  Poly quadratic() const;
  std::string description() const;
};
/// Throws Error if sigma_2(Q) is not a constant real quadratic form.
CharacteristicSet characteristic_set(const DiffOp& q);

struct IntegralCurve {
  RVector x0;
  RVector k0;
  RVector direction;  // 2 g k0
  RVector point(const Rational& s) const;
};
/// Throws Error for k0 = 0 or a covector off the characteristic set.
IntegralCurve hamiltonian_curve(const CharacteristicSet& cs, const RVector& x0, const RVector& k0);

/// Exact basis of ker sigma(P)(x0, k0); throws Error if the kernel is trivial.
std::vector<CVector> kernel_bundle(const SuperOperator& p, const IntegralCurve& curve);

struct PartialConnection {
  Matrix<SymExpr> bracket;       // {sigma(P~), sigma(P)}
  Matrix<SymExpr> subprincipal;  // subprincipal symbol of P
  Matrix<SymExpr> coefficient;   // M = 1/2 bracket + i sigma(P~) sigma_sub(P)
  Matrix<SymExpr> reduced;       // M with every entry reduced modulo g(k, k)
  /// Entries of M that are nonzero but divisible by g(k, k).
  std::vector<std::pair<std::size_t, std::size_t>> cone_entries;
};
/// Throws Unsupported for non-constant coefficients.
PartialConnection partial_connection(const HyperbolicSystem& system);

/// M evaluated at the curve's (x0, k0); parameters stay symbolic.
Matrix<SymExpr> connection_at(const PartialConnection& pc, const IntegralCurve& curve);

/// Matrix R with M v_j = sum_i R_ij v_i on the kernel basis at the curve.
/// Throws Error if M does not preserve the kernel.
Matrix<SymExpr> reduced_action(const PartialConnection& pc, const IntegralCurve& curve,
                               const std::vector<CVector>& kernel);

/// w(s) = exp(-rate s) sum_j s^j terms[j], solving w' + M w = 0.
struct OrbitSection {
  SymExpr rate;
  std::vector<SVector> terms;
  bool constant() const { return rate.is_zero() && terms.size() <= 1; }
  std::string to_string() const;
};

struct HamiltonianOrbit {
  IntegralCurve curve;
  std::vector<CVector> kernel;
  Matrix<SymExpr> action;
  OrbitSection section;
};

/// Throws Error if lambda0 is zero or outside the kernel, Unsupported if the
/// reduced action is not scalar plus nilpotent.
HamiltonianOrbit hamiltonian_orbit(const HyperbolicSystem& system, const RVector& x0, const RVector& k0,
                                   const CVector& lambda0);

/// Differentiates the closed form: checks p' - rate p + M p = 0 for the
/// polynomial part p(s), with M the connection matrix at the curve.
bool section_solves_transport(const OrbitSection& section, const Matrix<SymExpr>& m_at_curve);

}  // namespace sml
