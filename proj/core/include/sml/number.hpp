#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sml {

using Rational = mpq_class;

std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
Rational parse_rational(std::string_view text);

/// Gaussian rational a + b i with a, b in Q. This is the coefficient field
/// of every polynomial in the library.
class Complex {
 public:
  Complex() = default;
  Complex(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Complex(Rational re, Rational im = 0);

  static Complex i() { return Complex(0, 1); }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Complex conj() const { return Complex(re_, -im_); }
  Complex inverse() const;

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re_, -im_); }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Arbitrary but fixed total order (real part first), used for sorting only.
  friend std::strong_ordering operator<=>(const Complex& a, const Complex& b);

  Complex pow(unsigned e) const;

  /// Canonical text: `3`, `-1/2`, `i`, `-2*i`, `1+2*i`, `1/2-i`.
  std::string to_string() const;
  /// True when the canonical text needs parentheses inside a product.
  bool needs_parens() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

inline bool is_zero(const Complex& c) { return c.is_zero(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

std::ostream& operator<<(std::ostream& os, const Complex& c);

}  // namespace sml
