#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sml/number.hpp"

namespace sml {

/// Base variables x^j, cotangent variables k_j, and named symbolic parameters.
enum class VarKind : std::uint8_t { X = 0, K = 1, Param = 2 };

class Var {
 public:
  static Var x(unsigned index);
  static Var k(unsigned index);
  /// Interned by name; safe to call from several threads.
  static Var param(std::string_view name);

  VarKind kind() const { return kind_; }
  /// 1-based index for X/K variables, intern slot for parameters.
  unsigned index() const { return id_; }
  std::string name() const;

  friend bool operator==(Var a, Var b) { return a.kind_ == b.kind_ && a.id_ == b.id_; }
  /// X before K before parameters; parameters compare by name so that
  /// printing order never depends on interning order.
  friend std::strong_ordering operator<=>(Var a, Var b);

 private:
  Var(VarKind kind, std::uint32_t id) : kind_(kind), id_(id) {}
  VarKind kind_;
  std::uint32_t id_;
};

class Monomial {
 public:
  using Factor = std::pair<Var, unsigned>;

  Monomial() = default;
  explicit Monomial(Var v, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree(Var v) const;
  unsigned degree(VarKind kind) const;
  unsigned total_degree() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// Requires divides(o) of the divisor; returns this / o.
  Monomial operator/(const Monomial& o) const;
  Monomial without(Var v) const;
  Monomial gcd(const Monomial& o) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;  // sorted by variable, exponents > 0
};

/// Lexicographic order; a smaller variable is more significant.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
class Poly {
 public:
  using TermMap = std::map<Monomial, Complex, MonomialLess>;

  Poly() = default;
  Poly(Complex c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Complex(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(Var v);
  static Poly term(Monomial m, Complex c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::optional<Complex> constant_value() const;
  Complex constant_term() const;

  /// Leading term in lexicographic order. Precondition: nonzero.
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Complex& leading_coefficient() const { return terms_.rbegin()->second; }

  unsigned degree(Var v) const;
  unsigned degree(VarKind kind) const;
  unsigned total_degree() const;
  /// Coefficient of v^e, as a polynomial in the remaining variables.
  Poly coefficient(Var v, unsigned e) const;
  std::set<Var> variables() const;
  bool depends_on(VarKind kind) const;
  bool depends_on(Var v) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Complex& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Complex& c) { return a *= c; }
  friend Poly operator*(const Complex& c, Poly a) { return a *= c; }
  Poly operator-() const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly derivative(Var v) const;
  /// Simultaneous substitution of variables by polynomials.
  Poly substitute(const std::map<Var, Poly>& images) const;
  /// Requires every variable to be bound.
  Complex evaluate(const std::map<Var, Complex>& point) const;
  /// Scaled so that the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Complex& c);
  TermMap terms_;
};

/// Exact quotient a / b if b divides a, otherwise nullopt. b must be nonzero.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

/// Multivariate division by a single divisor (lexicographic order):
/// a = q * b + r with no term of r divisible by lm(b).
std::pair<Poly, Poly> divide_with_remainder(const Poly& a, const Poly& b);

/// Monic greatest common divisor over Q(i); gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Square-free decomposition: p = c * prod factors[j].first ^ factors[j].second
/// with pairwise coprime, square-free, monic factors.
struct SquareFreeFactorization {
  Complex unit;
  std::vector<std::pair<Poly, unsigned>> factors;
};
SquareFreeFactorization square_free(const Poly& p);

}  // namespace sml
