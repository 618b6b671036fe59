#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sml/diffop.hpp"
#include "sml/geometry.hpp"
#include "sml/grassmann.hpp"
#include "sml/poly.hpp"

namespace sml {

enum class CatalogKind { DeltaPoint = 0, DeltaHyperplane = 1, Heaviside = 2 };

/// A singular model distribution without its coefficient:
///   DeltaPoint       d^beta delta_p
///   DeltaHyperplane  delta^(r)(<a,x> - c)
///   Heaviside        H(<a,x> - c)
/// Hyperplane data is normalized so that the first nonzero entry of a is 1.
struct CatalogAtom {
  CatalogKind kind = CatalogKind::DeltaPoint;
  RVector point;
  DerivIndex beta;
  RVector normal;
  Rational offset;
  unsigned order = 0;

  std::string to_string() const;
  friend bool operator==(const CatalogAtom& a, const CatalogAtom& b) {
    return a.kind == b.kind && a.point == b.point && a.beta == b.beta && a.normal == b.normal &&
           a.offset == b.offset && a.order == b.order;
  }
};

struct CatalogAtomLess {
  bool operator()(const CatalogAtom& a, const CatalogAtom& b) const;
};

/// Finite sum of a polynomial and Q(i)-multiples of catalog atoms on R^m,
/// kept in canonical form (like atoms merged, zero terms dropped).
class CatalogSum {
 public:
  using AtomMap = std::map<CatalogAtom, Complex, CatalogAtomLess>;

  CatalogSum() = default;
  explicit CatalogSum(unsigned m) : m_(m) {}
  static CatalogSum smooth(unsigned m, const Poly& p);
  static CatalogSum delta_point(const RVector& p, const DerivIndex& beta = {});
  static CatalogSum delta_hyperplane(const RVector& a, const Rational& c, unsigned order = 0);
  static CatalogSum heaviside(const RVector& a, const Rational& c);

  unsigned dim() const { return m_; }
  const Poly& smooth_part() const { return smooth_; }
  const AtomMap& atoms() const { return atoms_; }
  bool is_zero() const { return smooth_.is_zero() && atoms_.empty(); }
  bool is_smooth() const { return atoms_.empty(); }

  CatalogSum& operator+=(const CatalogSum& o);
  CatalogSum& operator-=(const CatalogSum& o);
  CatalogSum& operator*=(const Complex& c);
  friend CatalogSum operator+(CatalogSum a, const CatalogSum& b) { return a += b; }
  friend CatalogSum operator-(CatalogSum a, const CatalogSum& b) { return a -= b; }
  friend CatalogSum operator*(const Complex& c, CatalogSum a) { return a *= c; }
  friend bool operator==(const CatalogSum& a, const CatalogSum& b) {
    return a.m_ == b.m_ && a.smooth_ == b.smooth_ && a.atoms_ == b.atoms_;
  }

  CatalogSum derivative(const DerivIndex& alpha) const;
  /// Product with a polynomial in x; throws Unsupported when a non-constant
  /// polynomial meets a hyperplane atom.
  CatalogSum multiply(const Poly& p) const;

  /// `(x1^2) + (2)*d[x1]*delta(0, 0) + heaviside(1, 0; 0)`; `0` when zero.
  std::string to_string() const;

  void add_atom(const CatalogAtom& atom, const Complex& c);

 private:
  unsigned m_ = 0;
  Poly smooth_;
  AtomMap atoms_;
};

/// c with a = c b for nonzero b, if it exists.
std::optional<Complex> proportional(const CatalogSum& a, const CatalogSum& b);

/// sum_alpha c_alpha(x) d^alpha u; coefficients must be polynomials in x.
CatalogSum apply(const DiffOp& op, const CatalogSum& u);

/// Product of two catalog sums when it is representable in the catalog
/// (smooth factors, disjoint supports, parallel hyperplanes), else nullopt.
std::optional<CatalogSum> product(const CatalogSum& a, const CatalogSum& b);

/// Superdistribution sum_I u_I theta^I on U^{m|n}; zero components are not stored.
class SuperDistribution {
 public:
  SuperDistribution() = default;
  SuperDistribution(unsigned m, unsigned n) : m_(m), n_(n) {}

  unsigned m() const { return m_; }
  unsigned n() const { return n_; }
  const std::map<MultiIndex, CatalogSum>& components() const { return components_; }
  CatalogSum component(const MultiIndex& index) const;
  void set(const MultiIndex& index, const CatalogSum& u);
  void add(const MultiIndex& index, const CatalogSum& u);
  bool is_smooth() const;

  friend bool operator==(const SuperDistribution&, const SuperDistribution&) = default;
  std::string to_string() const;

 private:
  unsigned m_ = 0;
  unsigned n_ = 0;
  std::map<MultiIndex, CatalogSum> components_;
};

}  // namespace sml
