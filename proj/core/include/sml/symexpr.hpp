#pragma once

#include <map>
#include <string>

#include "sml/number.hpp"
#include "sml/poly.hpp"

namespace sml {

/// Exact rational function over Q(i) in base variables x, cotangent
/// variables k and symbolic parameters.
///
/// The representation is canonical: numerator and denominator are coprime
/// and the denominator has leading coefficient 1, so equality is structural.
class SymExpr {
 public:
  SymExpr() = default;
  SymExpr(Poly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  SymExpr(Complex c) : num_(std::move(c)), den_(1) {}  // NOLINT(google-explicit-constructor)
  SymExpr(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  static SymExpr fraction(Poly num, Poly den);
  static SymExpr variable(Var v) { return SymExpr(Poly::variable(v)); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  std::optional<Complex> constant_value() const;
  bool depends_on(VarKind kind) const { return num_.depends_on(kind) || den_.depends_on(kind); }
  bool depends_on(Var v) const { return num_.depends_on(v) || den_.depends_on(v); }
  std::set<Var> variables() const;
  /// Number of terms, used to pick cheap pivots.
  std::size_t size() const { return num_.terms().size() + den_.terms().size(); }

  SymExpr& operator+=(const SymExpr& o);
  SymExpr& operator-=(const SymExpr& o);
  SymExpr& operator*=(const SymExpr& o);
  SymExpr& operator/=(const SymExpr& o);
  friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
  friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
  friend SymExpr operator*(SymExpr a, const SymExpr& b) { return a *= b; }
  friend SymExpr operator/(SymExpr a, const SymExpr& b) { return a /= b; }
  SymExpr operator-() const;
  SymExpr pow(int e) const;

  friend bool operator==(const SymExpr& a, const SymExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  SymExpr derivative(Var v) const;
  /// Simultaneous substitution.
  SymExpr substitute(const std::map<Var, SymExpr>& images) const;
  /// Throws SingularError when the denominator vanishes at the point.
  Complex evaluate(const std::map<Var, Complex>& point) const;

  /// `k1^2 + k2^2`, `-1/k1^2`, `(x1 + 1)/(k1^2 + k2^2)`.
  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_{1};
};

inline bool is_zero(const SymExpr& e) { return e.is_zero(); }
inline std::size_t pivot_cost(const SymExpr& e) { return e.size(); }
inline std::string to_string(const SymExpr& e) { return e.to_string(); }
inline std::string to_string(const Complex& c) { return c.to_string(); }

enum class HomogeneityKind { Degree, Zero, NotHomogeneous };

struct Homogeneity {
  HomogeneityKind kind = HomogeneityKind::NotHomogeneous;
  int degree = 0;
  bool is_degree(int d) const {
    return kind == HomogeneityKind::Zero || (kind == HomogeneityKind::Degree && degree == d);
  }
};

/// Degree d with e(x, t k) = t^d e(x, k), decided by substituting a fresh
/// scale variable and comparing exactly.
Homogeneity k_homogeneity(const SymExpr& e);

/// The part of a polynomial that is homogeneous of degree d in k.
Poly k_graded_part(const Poly& p, unsigned d);

}  // namespace sml
