#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sml/diffop.hpp"
#include "sml/geometry.hpp"
#include "sml/grassmann.hpp"
#include "sml/matrix.hpp"
#include "sml/symexpr.hpp"

namespace sml {

class SuperMorphism;

using Slot = std::pair<MultiIndex, MultiIndex>;  // (row J, column I)

/// Order bound (|J|-|I|)/2 + l of slot (J, I).
Rational slot_bound(const MultiIndex& row, const MultiIndex& col, const Rational& order);

/// Block matrix of differential operators on U^{m|n}; component (J, I)
/// maps the theta^I coefficient of the input to the theta^J coefficient of
/// the output and has order at most (|J|-|I|)/2 + l.
class SuperOperator {
 public:
  SuperOperator() = default;
  SuperOperator(unsigned m, unsigned n, Rational order);
  static SuperOperator identity(unsigned m, unsigned n);

  unsigned m() const { return m_; }
  unsigned n() const { return n_; }
  const Rational& order() const { return order_; }
  const std::map<Slot, DiffOp>& components() const { return components_; }

  /// Throws OrderViolation when op exceeds the slot bound.
  void set(const MultiIndex& row, const MultiIndex& col, const DiffOp& op);
  DiffOp component(const MultiIndex& row, const MultiIndex& col) const;
  bool is_zero() const { return components_.empty(); }
  /// True when no coefficient depends on x.
  bool constant_coefficients() const;

  Superfunction apply(const Superfunction& f) const;
  SuperOperator substitute(const std::map<Var, SymExpr>& images) const;

  friend bool operator==(const SuperOperator& a, const SuperOperator& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.order_ == b.order_ && a.components_ == b.components_;
  }

 private:
  unsigned m_ = 0;
  unsigned n_ = 0;
  Rational order_{0};
  std::map<Slot, DiffOp> components_;
};

/// Block matrix of k-homogeneous symbols in multi-index order.
class SuperSymbol {
 public:
  SuperSymbol() = default;
  /// Throws OrderViolation unless entry (J, I) is homogeneous of degree
  /// (|J|-|I|)/2 + l or zero.
  SuperSymbol(unsigned m, unsigned n, Rational order, Matrix<SymExpr> entries);
  static SuperSymbol identity(unsigned m, unsigned n);

  unsigned m() const { return m_; }
  unsigned n() const { return n_; }
  const Rational& order() const { return order_; }
  const Matrix<SymExpr>& matrix() const { return entries_; }
  SymExpr entry(const MultiIndex& row, const MultiIndex& col) const;

  friend bool operator==(const SuperSymbol& a, const SuperSymbol& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  unsigned m_ = 0;
  unsigned n_ = 0;
  Rational order_{0};
  Matrix<SymExpr> entries_;
};

SymExpr diff_op_principal_symbol(const DiffOp& op, const Rational& order);
SymExpr diff_op_subprincipal_symbol(const DiffOp& op, const Rational& order);

SuperSymbol principal_symbol(const SuperOperator& a);
SuperSymbol subprincipal_symbol(const SuperOperator& a);
/// Symbol of B o A.
SuperSymbol compose_symbols(const SuperSymbol& b, const SuperSymbol& a);
/// Exact composition B o A.
SuperOperator compose_ops(const SuperOperator& b, const SuperOperator& a);
/// Exact inverse of order -l; throws SingularError when det vanishes identically.
SuperSymbol symbol_inverse(const SuperSymbol& s);

/// Entrywise-product Poisson bracket
/// {a,b} = sum_mu (d a/d k_mu)(d b/d x^mu) - (d a/d x^mu)(d b/d k_mu).
Matrix<SymExpr> poisson_bracket(const Matrix<SymExpr>& a, const Matrix<SymExpr>& b, unsigned m);

/// The operator chi*^{-1} o A o chi*. Requires chi to be invertible with an
/// affine body and linear odd part; throws Unsupported otherwise.
SuperOperator conjugate(const SuperOperator& a, const SuperMorphism& chi);

enum class Verdict { Elliptic, Hyperbolic, Degenerate, Unknown };
std::string to_string(Verdict v);

struct EllipticityVerdict {
  Verdict tag = Verdict::Unknown;
  SymExpr determinant;
  /// Square-free factorization of the determinant, e.g. `-1 * (k1^2 - k2^2)^2`.
  std::string factored;
  std::optional<Poly> quadratic_form;
  /// Base point and covector at which the determinant vanishes.
  std::optional<std::pair<RVector, RVector>> witness;
  std::string reason;
};

/// Seed for the sampling stage of the witness search.
std::uint64_t sampling_seed();

EllipticityVerdict ellipticity_verdict(const SuperSymbol& s, std::uint64_t seed = sampling_seed());

/// Signature (positive, negative, zero) of a real symmetric rational matrix.
struct Inertia {
  unsigned positive = 0;
  unsigned negative = 0;
  unsigned zero = 0;
};
Inertia inertia(Matrix<Rational> g);

/// Symmetric matrix G with q(k) = k^T G k, or nullopt if q is not a real
/// homogeneous quadratic form in k1..km.
std::optional<Matrix<Rational>> quadratic_form_matrix(const Poly& q, unsigned m);

}  // namespace sml
