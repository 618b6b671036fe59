#pragma once

#include <map>
#include <string>
#include <vector>

#include "sml/symexpr.hpp"

namespace sml {

/// Exponent vector alpha of a derivative d^alpha, one entry per base variable.
using DerivIndex = std::vector<unsigned>;

unsigned total_order(const DerivIndex& alpha);
/// Product of factorials alpha!.
Rational factorial(const DerivIndex& alpha);
/// d^alpha f with respect to x1..xm.
SymExpr apply_derivative(const DerivIndex& alpha, const SymExpr& f);
/// (i k)^alpha.
SymExpr symbol_monomial(const DerivIndex& alpha);

/// Scalar linear differential operator sum_alpha c_alpha(x) d^alpha on R^m.
/// Coefficients may depend on x and parameters, never on k.
class DiffOp {
 public:
  using TermMap = std::map<DerivIndex, SymExpr>;

  DiffOp() = default;
  explicit DiffOp(unsigned m) : m_(m) {}
  /// Multiplication by c.
  DiffOp(unsigned m, const SymExpr& c);
  static DiffOp partial(unsigned m, unsigned j, unsigned power = 1);
  static DiffOp derivative(const DerivIndex& alpha, const SymExpr& c = SymExpr(1));

  unsigned dim() const { return m_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest |alpha| with a nonzero coefficient; 0 for the zero operator.
  unsigned order() const;
  SymExpr coefficient(const DerivIndex& alpha) const;
  void add_term(const DerivIndex& alpha, const SymExpr& c);

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp operator-() const;
  friend DiffOp operator*(const SymExpr& c, const DiffOp& a);
  /// Composition (b * a) f = b(a f).
  friend DiffOp operator*(const DiffOp& b, const DiffOp& a);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.m_ == b.m_ && a.terms_ == b.terms_; }

  SymExpr apply(const SymExpr& f) const;
  /// sum over |alpha| = d of c_alpha (i k)^alpha.
  SymExpr symbol_part(unsigned d) const;
  /// Full symbol sum c_alpha (i k)^alpha.
  SymExpr full_symbol() const;
  DiffOp substitute(const std::map<Var, SymExpr>& images) const;

  /// `(x1)*d[x1]^2*d[x2] + (-1)*d[x2] + (m)`; `0` for the zero operator.
  std::string to_string() const;

 private:
  unsigned m_ = 0;
  TermMap terms_;
};

}  // namespace sml
