#include "sml/symexpr.hpp"

#include "sml/error.hpp"

namespace sml {

SymExpr SymExpr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw SingularError("rational function with zero denominator");
  SymExpr e;
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  e.normalize();
  return e;
}

void SymExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (auto c = den_.constant_value()) {
    if (!c->is_one()) {
      num_ *= c->inverse();
      den_ = Poly(1);
    }
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = *divide_exact(num_, g);
    den_ = *divide_exact(den_, g);
  }
  Complex lc = den_.leading_coefficient();
  if (!lc.is_one()) {
    Complex inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
  if (den_.is_constant()) den_ = Poly(1);
}

std::optional<Complex> SymExpr::constant_value() const {
  if (!is_polynomial()) return std::nullopt;
  return num_.constant_value();
}

std::set<Var> SymExpr::variables() const {
  auto v = num_.variables();
  auto d = den_.variables();
  v.insert(d.begin(), d.end());
  return v;
}

SymExpr& SymExpr::operator+=(const SymExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& o) {
  return *this += -o;
}

SymExpr& SymExpr::operator*=(const SymExpr& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = SymExpr();
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross-cancel before multiplying to keep the gcds small.
  Poly g1 = gcd(num_, o.den_);
  Poly g2 = gcd(o.num_, den_);
  Poly n1 = *divide_exact(num_, g1);
  Poly d2 = *divide_exact(o.den_, g1);
  Poly n2 = *divide_exact(o.num_, g2);
  Poly d1 = *divide_exact(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  normalize();
  return *this;
}

SymExpr& SymExpr::operator/=(const SymExpr& o) {
  if (o.is_zero()) throw SingularError("division by zero expression");
  SymExpr inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.normalize();
  return *this *= inv;
}

SymExpr SymExpr::operator-() const {
  SymExpr out = *this;
  out.num_ = -out.num_;
  return out;
}

SymExpr SymExpr::pow(int e) const {
  if (e < 0) return SymExpr(1) / pow(-e);
  SymExpr out;
  out.num_ = num_.pow(static_cast<unsigned>(e));
  out.den_ = den_.pow(static_cast<unsigned>(e));
  return out;
}

SymExpr SymExpr::derivative(Var v) const {
  if (is_polynomial()) return SymExpr(num_.derivative(v));
  return fraction(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {

SymExpr substitute_poly(const Poly& p, const std::map<Var, SymExpr>& images) {
  SymExpr out;
  for (const auto& [m, c] : p.terms()) {
    SymExpr term(c);
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = images.find(v);
      if (it == images.end()) {
        kept = kept * Monomial(v, e);
      } else {
        term *= it->second.pow(static_cast<int>(e));
      }
    }
    if (!kept.is_one()) term *= SymExpr(Poly::term(kept, Complex(1)));
    out += term;
  }
  return out;
}

}  // namespace

SymExpr SymExpr::substitute(const std::map<Var, SymExpr>& images) const {
  bool polynomial_images = true;
  for (const auto& kv : images) polynomial_images = polynomial_images && kv.second.is_polynomial();
  if (polynomial_images) {
    std::map<Var, Poly> poly_images;
    for (const auto& [v, e] : images) poly_images.emplace(v, e.numerator());
    Poly n = num_.substitute(poly_images);
    if (is_polynomial()) return SymExpr(n);
    return fraction(std::move(n), den_.substitute(poly_images));
  }
  SymExpr n = substitute_poly(num_, images);
  if (is_polynomial()) return n;
  return n / substitute_poly(den_, images);
}

Complex SymExpr::evaluate(const std::map<Var, Complex>& point) const {
  Complex d = den_.evaluate(point);
  if (d.is_zero()) throw SingularError("denominator vanishes at evaluation point");
  return num_.evaluate(point) / d;
}

namespace {

bool single_factor(const Poly& p) {
  return p.is_monomial() && p.leading_coefficient().is_one() &&
         p.leading_monomial().factors().size() == 1;
}

}  // namespace

std::string SymExpr::to_string() const {
  if (is_polynomial()) return num_.to_string();
  std::string n = num_.to_string();
  if (!num_.is_monomial() ||
      (num_.leading_monomial().is_one() && num_.leading_coefficient().needs_parens() &&
       !num_.leading_coefficient().is_real())) {
    n = "(" + n + ")";
  }
  std::string d = den_.to_string();
  if (!single_factor(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

Poly k_graded_part(const Poly& p, unsigned d) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree(VarKind::K) == d) out += Poly::term(m, c);
  }
  return out;
}

namespace {

std::optional<unsigned> homogeneous_k_degree(const Poly& p) {
  std::optional<unsigned> d;
  for (const auto& t : p.terms()) {
    unsigned td = t.first.degree(VarKind::K);
    if (d && *d != td) return std::nullopt;
    d = td;
  }
  return d;
}

}  // namespace

Homogeneity k_homogeneity(const SymExpr& e) {
  if (e.is_zero()) return {HomogeneityKind::Zero, 0};
  auto dn = homogeneous_k_degree(e.numerator());
  auto dd = homogeneous_k_degree(e.denominator());
  if (!dn || !dd) return {HomogeneityKind::NotHomogeneous, 0};
  int degree = static_cast<int>(*dn) - static_cast<int>(*dd);
  // Confirm by exact substitution k -> t k.
  Var t = Var::param("__scale");
  std::map<Var, SymExpr> scaled;
  for (Var v : e.variables()) {
    if (v.kind() == VarKind::K) scaled.emplace(v, SymExpr(Poly::variable(t) * Poly::variable(v)));
  }
  SymExpr lhs = e.substitute(scaled);
  SymExpr rhs = SymExpr(Poly::variable(t)).pow(degree) * e;
  if (!(lhs == rhs)) return {HomogeneityKind::NotHomogeneous, 0};
  return {HomogeneityKind::Degree, degree};
}

}  // namespace sml
