#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sml/diffop.hpp"
#include "sml/geometry.hpp"
#include "sml/grassmann.hpp"
#include "sml/matrix.hpp"

namespace sml {

/// Morphism U^{m|n} -> V^{m'|n'} given by the images of the target
/// coordinates y^1..y^{m'} (even) and zeta^1..zeta^{n'} (odd). Coefficients
/// are polynomials in the source variables x1..xm.
class SuperMorphism {
 public:
  SuperMorphism() = default;
  SuperMorphism(unsigned source_m, unsigned source_n, unsigned target_m, unsigned target_n,
                std::vector<Superfunction> even_images, std::vector<Superfunction> odd_images);
  static SuperMorphism identity(unsigned m, unsigned n);

  unsigned source_m() const { return source_m_; }
  unsigned source_n() const { return source_n_; }
  unsigned target_m() const { return target_m_; }
  unsigned target_n() const { return target_n_; }
  const std::vector<Superfunction>& even_images() const { return even_; }
  const std::vector<Superfunction>& odd_images() const { return odd_; }
  /// Body map components chi~^j(x).
  std::vector<SymExpr> body_map() const;

  friend bool operator==(const SuperMorphism&, const SuperMorphism&) = default;

 private:
  unsigned source_m_ = 0;
  unsigned source_n_ = 0;
  unsigned target_m_ = 0;
  unsigned target_n_ = 0;
  std::vector<Superfunction> even_;
  std::vector<Superfunction> odd_;
};

/// Factorization chi* f = sum_{J,I,alpha} c^{J,I}_alpha(x) chi~*(d^alpha f_I) theta^J.
struct FactorizationData {
  unsigned source_m = 0;
  unsigned source_n = 0;
  unsigned target_m = 0;
  unsigned target_n = 0;
  std::vector<SymExpr> body_map;
  /// (J over n, I over n') -> alpha over target variables -> coefficient in x.
  std::map<std::pair<MultiIndex, MultiIndex>, std::map<DerivIndex, SymExpr>> dchi;

  Superfunction apply(const Superfunction& f) const;
};

/// Substitutes x -> image in every coefficient (simultaneously).
SymExpr pull_back_body(const SymExpr& f, const std::vector<SymExpr>& body_map);

Superfunction pullback_superfunction(const SuperMorphism& chi, const Superfunction& f);
FactorizationData factorize(const SuperMorphism& chi);

/// Block (J, I) = sum_{|alpha|=(|J|-|I|)/2} c^{J,I}_alpha(x) (i k)^alpha, with
/// x the source variables and k1..km' the target covector.
Matrix<SymExpr> polarization_map(const SuperMorphism& chi);
Matrix<Complex> polarization_map_at(const SuperMorphism& chi, const RVector& x, const RVector& k);

/// The composite outer o inner.
SuperMorphism compose(const SuperMorphism& outer, const SuperMorphism& inner);

/// P*(inner)(x, T*chi~'(chi~(x)) k) * P*(outer)(chi~(x), k), the right-hand
/// side of the functoriality law for outer o inner.
Matrix<SymExpr> polarization_map_product(const SuperMorphism& outer, const SuperMorphism& inner);

/// Jacobian d chi~^i / d x^j (m' x m).
Matrix<SymExpr> body_jacobian(const SuperMorphism& chi);

/// Affine body y = A x + b with rational A, b, if the body map is affine.
struct AffineBody {
  Matrix<Rational> linear;
  RVector offset;
};
std::optional<AffineBody> affine_body(const SuperMorphism& chi);

/// Inverse morphism; requires an invertible affine body and an odd part whose
/// theta-linear coefficients are constant and invertible. Throws Unsupported
/// otherwise, SingularError for non-invertible data.
SuperMorphism inverse(const SuperMorphism& chi);

struct NormalSetDescriptor {
  std::vector<SymExpr> body_map;
  Matrix<SymExpr> jacobian;
  bool affine = false;
  /// Affine case only: image of the body map and ker(A^T).
  AffineSubspace image;
  LinearSubspace covectors;
  std::vector<RVector> kernel_basis;
};
NormalSetDescriptor normal_set(const SuperMorphism& chi);

struct Chart {
  std::string name;
  unsigned m = 0;
  unsigned n = 0;
};

struct Transition {
  std::string from;
  std::string to;
  SuperMorphism map;
};

struct AtlasReport {
  bool valid = true;
  std::vector<std::string> failures;
  unsigned checks = 0;
};

AtlasReport validate_atlas(const std::vector<Chart>& charts, const std::vector<Transition>& transitions);

}  // namespace sml
