#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sml/matrix.hpp"
#include "sml/number.hpp"

namespace sml {

using RVector = std::vector<Rational>;

/// Linear subspace of Q^d, kept as a reduced row-echelon basis so that
/// equal subspaces compare equal.
class LinearSubspace {
 public:
  LinearSubspace() = default;
  static LinearSubspace zero(unsigned ambient);
  static LinearSubspace full(unsigned ambient);
  static LinearSubspace span(unsigned ambient, const std::vector<RVector>& vectors);
  /// {v : a v = 0}.
  static LinearSubspace kernel(const Matrix<Rational>& a);

  unsigned ambient() const { return ambient_; }
  unsigned dim() const { return static_cast<unsigned>(basis_.rows()); }
  bool is_zero() const { return dim() == 0; }
  const Matrix<Rational>& basis() const { return basis_; }
  std::vector<RVector> basis_vectors() const;
  /// Rows spanning the orthogonal complement; the subspace is their kernel.
  Matrix<Rational> annihilator() const;

  bool contains(const RVector& v) const;
  LinearSubspace intersect(const LinearSubspace& o) const;
  LinearSubspace sum(const LinearSubspace& o) const;
  /// a: ambient' x ambient.
  LinearSubspace image(const Matrix<Rational>& a) const;
  /// {v : a v in this}, a: ambient x d.
  LinearSubspace preimage(const Matrix<Rational>& a) const;

  friend bool operator==(const LinearSubspace&, const LinearSubspace&) = default;
  std::string to_string() const;

 private:
  unsigned ambient_ = 0;
  Matrix<Rational> basis_;
};

/// Affine subspace {x : E x = c} of Q^d, or empty.
class AffineSubspace {
 public:
  AffineSubspace() = default;
  static AffineSubspace all(unsigned ambient);
  static AffineSubspace point(const RVector& p);
  static AffineSubspace solutions(const Matrix<Rational>& e, const RVector& c);
  static AffineSubspace through(const RVector& p, const LinearSubspace& direction);

  unsigned ambient() const { return ambient_; }
  bool is_empty() const { return empty_; }
  unsigned dim() const;
  const Matrix<Rational>& equations() const { return eq_; }
  const RVector& rhs() const { return rhs_; }
  LinearSubspace direction() const;
  /// Some point of the subspace; precondition: nonempty.
  RVector base_point() const;

  bool contains(const RVector& p) const;
  AffineSubspace intersect(const AffineSubspace& o) const;
  /// {x : a x + b in this}.
  AffineSubspace preimage(const Matrix<Rational>& a, const RVector& b) const;
  /// {a x + b : x in this}.
  AffineSubspace image(const Matrix<Rational>& a, const RVector& b) const;

  friend bool operator==(const AffineSubspace&, const AffineSubspace&) = default;
  std::string to_string() const;

 private:
  void canonicalize();
  unsigned ambient_ = 0;
  bool empty_ = false;
  Matrix<Rational> eq_;
  RVector rhs_;
};

std::string to_string(const RVector& v);

}  // namespace sml
