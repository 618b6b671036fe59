#include "sml/number.hpp"

#include <stdexcept>

namespace sml {

std::string to_string(const Rational& q) {
  return q.get_str();
}

bool is_integer(const Rational& q) {
  return q.get_den() == 1;
}

Rational parse_rational(std::string_view text) {
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) {
    throw std::invalid_argument("not a rational number: " + std::string(text));
  }
  q.canonicalize();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  return q;
}

Complex::Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Complex Complex::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(i)");
  Rational norm = re_ * re_ + im_ * im_;
  return Complex(re_ / norm, -im_ / norm);
}

Complex& Complex::operator+=(const Complex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.is_real()) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero in Q(i)");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const Complex& a, const Complex& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Complex Complex::pow(unsigned e) const {
  Complex result(1);
  Complex base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

std::string Complex::to_string() const {
  if (is_real()) return sml::to_string(re_);
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = sml::to_string(im_) + "*i";
  }
  if (sgn(re_) == 0) return im_part;
  std::string out = sml::to_string(re_);
  if (im_part.front() != '-') out += "+";
  return out + im_part;
}

bool Complex::needs_parens() const {
  if (is_real()) return !is_integer(re_) || sgn(re_) < 0;
  return sgn(re_) != 0 || im_ != 1;
}

std::ostream& operator<<(std::ostream& os, const Complex& c) {
  return os << c.to_string();
}

}  // namespace sml
