#include "sml/poly.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace sml {

namespace {

struct ParamRegistry {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, std::uint32_t> ids;
};

ParamRegistry& registry() {
  static ParamRegistry reg;
  return reg;
}

const std::string& param_name(std::uint32_t id) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  return reg.names.at(id);
}

}  // namespace

Var Var::x(unsigned index) {
  if (index == 0) throw std::invalid_argument("variable indices are 1-based");
  return Var(VarKind::X, index);
}

Var Var::k(unsigned index) {
  if (index == 0) throw std::invalid_argument("variable indices are 1-based");
  return Var(VarKind::K, index);
}

Var Var::param(std::string_view name) {
  auto& reg = registry();
  std::lock_guard lock(reg.mutex);
  std::string key(name);
  auto it = reg.ids.find(key);
  if (it != reg.ids.end()) return Var(VarKind::Param, it->second);
  auto id = static_cast<std::uint32_t>(reg.names.size());
  reg.names.push_back(key);
  reg.ids.emplace(std::move(key), id);
  return Var(VarKind::Param, id);
}

std::string Var::name() const {
  switch (kind_) {
    case VarKind::X: return "x" + std::to_string(id_);
    case VarKind::K: return "k" + std::to_string(id_);
    case VarKind::Param: return param_name(id_);
  }
  return {};
}

std::strong_ordering operator<=>(Var a, Var b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.id_ == b.id_) return std::strong_ordering::equal;
  if (a.kind_ != VarKind::Param) return a.id_ <=> b.id_;
  int c = param_name(a.id_).compare(param_name(b.id_));
  return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

// ---------------------------------------------------------------------------

Monomial::Monomial(Var v, unsigned exponent) {
  if (exponent != 0) factors_.emplace_back(v, exponent);
}

unsigned Monomial::degree(Var v) const {
  for (const auto& [var, e] : factors_) {
    if (var == v) return e;
  }
  return 0;
}

unsigned Monomial::degree(VarKind kind) const {
  unsigned d = 0;
  for (const auto& [var, e] : factors_) {
    if (var.kind() == kind) d += e;
  }
  return d;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    if (a->first == b->first) {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    } else if (a->first < b->first) {
      out.factors_.push_back(*a++);
    } else {
      out.factors_.push_back(*b++);
    }
  }
  out.factors_.insert(out.factors_.end(), a, factors_.end());
  out.factors_.insert(out.factors_.end(), b, o.factors_.end());
  return out;
}

bool Monomial::divides(const Monomial& o) const {
  for (const auto& [v, e] : factors_) {
    if (o.degree(v) < e) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial out;
  for (const auto& [v, e] : factors_) {
    unsigned d = o.degree(v);
    if (d > e) throw std::logic_error("monomial division is not exact");
    if (e > d) out.factors_.emplace_back(v, e - d);
  }
  return out;
}

Monomial Monomial::without(Var v) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (!(f.first == v)) out.factors_.push_back(f);
  }
  return out;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial out;
  for (const auto& [v, e] : factors_) {
    unsigned d = std::min(e, o.degree(v));
    if (d != 0) out.factors_.emplace_back(v, d);
  }
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += "*";
    out += v.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  for (; i < fa.size() && i < fb.size(); ++i) {
    if (fa[i].first == fb[i].first) {
      if (fa[i].second != fb[i].second) return fa[i].second < fb[i].second;
      continue;
    }
    return fa[i].first > fb[i].first;
  }
  return fa.size() < fb.size();
}

// ---------------------------------------------------------------------------

Poly::Poly(Complex c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), std::move(c));
}

Poly Poly::variable(Var v) {
  return term(Monomial(v), Complex(1));
}

Poly Poly::term(Monomial m, Complex c) {
  Poly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::optional<Complex> Poly::constant_value() const {
  if (terms_.empty()) return Complex(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

Complex Poly::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? Complex(0) : it->second;
}

unsigned Poly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree(v));
  return d;
}

unsigned Poly::degree(VarKind kind) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree(kind));
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

Poly Poly::coefficient(Var v, unsigned e) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    if (m.degree(v) == e) out.terms_.emplace(m.without(v), c);
  }
  return out;
}

std::set<Var> Poly::variables() const {
  std::set<Var> vars;
  for (const auto& t : terms_) {
    for (const auto& f : t.first.factors()) vars.insert(f.first);
  }
  return vars;
}

bool Poly::depends_on(VarKind kind) const {
  for (const auto& t : terms_) {
    if (t.first.degree(kind) != 0) return true;
  }
  return false;
}

bool Poly::depends_on(Var v) const {
  for (const auto& t : terms_) {
    if (t.first.degree(v) != 0) return true;
  }
  return false;
}

void Poly::add_term(const Monomial& m, const Complex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Complex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Poly Poly::derivative(Var v) const {
  Poly out;
  for (const auto& [m, c] : terms_) {
    unsigned e = m.degree(v);
    if (e == 0) continue;
    out.add_term(m.without(v) * Monomial(v, e - 1), c * Complex(static_cast<long>(e)));
  }
  return out;
}

Poly Poly::substitute(const std::map<Var, Poly>& images) const {
  Poly out;
  std::map<std::pair<Var, unsigned>, Poly> powers;
  for (const auto& [m, c] : terms_) {
    Poly termp(c);
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = images.find(v);
      if (it == images.end()) {
        kept = kept * Monomial(v, e);
        continue;
      }
      auto key = std::make_pair(v, e);
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
      termp *= pit->second;
    }
    if (!kept.is_one()) termp *= Poly::term(kept, Complex(1));
    out += termp;
  }
  return out;
}

Complex Poly::evaluate(const std::map<Var, Complex>& point) const {
  Complex sum(0);
  for (const auto& [m, c] : terms_) {
    Complex value = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = point.find(v);
      if (it == point.end()) throw std::invalid_argument("unbound variable " + v.name());
      value *= it->second.pow(e);
    }
    sum += value;
  }
  return sum;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Complex lc = leading_coefficient();
  if (lc.is_one()) return *this;
  return *this * lc.inverse();
}

namespace {

bool is_negative_like(const Complex& c) {
  int s = sgn(c.real());
  if (s != 0) return s < 0;
  return sgn(c.imag()) < 0;
}

std::string term_text(const Monomial& m, const Complex& c) {
  if (m.is_one()) return c.to_string();
  if (c.is_one()) return m.to_string();
  if (c == Complex::i()) return "i*" + m.to_string();
  if (c.is_real() && is_integer(c.real())) return c.to_string() + "*" + m.to_string();
  return "(" + c.to_string() + ")*" + m.to_string();
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = is_negative_like(c);
    // A constant with both real and imaginary parts keeps its own sign text.
    bool mixed_constant = m.is_one() && !c.is_real() && sgn(c.real()) != 0;
    if (mixed_constant) neg = false;
    std::string body = term_text(m, neg ? -c : c);
    if (first) {
      out = neg ? "-" + body : body;
      first = false;
    } else {
      out += neg ? " - " : " + ";
      out += mixed_constant ? "(" + body + ")" : body;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (auto c = b.constant_value()) return a * c->inverse();
  Poly q;
  Poly r = a;
  const Monomial& lm = b.leading_monomial();
  Complex lc_inv = b.leading_coefficient().inverse();
  while (!r.is_zero()) {
    const Monomial& rm = r.leading_monomial();
    if (!lm.divides(rm)) return std::nullopt;
    Poly t = Poly::term(rm / lm, r.leading_coefficient() * lc_inv);
    q += t;
    r -= t * b;
  }
  return q;
}

std::pair<Poly, Poly> divide_with_remainder(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly q;
  Poly rem;
  Poly p = a;
  const Monomial& lm = b.leading_monomial();
  Complex lc_inv = b.leading_coefficient().inverse();
  while (!p.is_zero()) {
    Monomial pm = p.leading_monomial();
    Complex pc = p.leading_coefficient();
    if (lm.divides(pm)) {
      Poly t = Poly::term(pm / lm, pc * lc_inv);
      q += t;
      p -= t * b;
    } else {
      Poly t = Poly::term(pm, pc);
      rem += t;
      p -= t;
    }
  }
  return {q, rem};
}

namespace {

// Pseudo-remainder of f by g as polynomials in v.
Poly pseudo_remainder(Poly f, const Poly& g, Var v) {
  unsigned dg = g.degree(v);
  Poly lc = g.coefficient(v, dg);
  while (!f.is_zero()) {
    unsigned df = f.degree(v);
    if (df < dg) break;
    Poly lf = f.coefficient(v, df);
    f = lc * f - lf * Poly::term(Monomial(v, df - dg), Complex(1)) * g;
  }
  return f;
}

Poly content_in(const Poly& p, Var v) {
  Poly c;
  unsigned d = p.degree(v);
  for (unsigned e = 0; e <= d; ++e) {
    Poly coeff = p.coefficient(v, e);
    if (coeff.is_zero()) continue;
    c = gcd(c, coeff);
    if (c.is_constant()) return Poly(1);
  }
  return c;
}

Poly primitive_part(const Poly& p, Var v) {
  if (p.is_zero()) return p;
  Poly c = content_in(p, v);
  return *divide_exact(p, c);
}

Poly monomial_content(const Poly& p) {
  Monomial g = p.terms().begin()->first;
  for (const auto& t : p.terms()) g = g.gcd(t.first);
  return Poly::term(g, Complex(1));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.is_monomial() || b.is_monomial()) {
    Monomial ga = monomial_content(a).leading_monomial();
    Monomial gb = monomial_content(b).leading_monomial();
    return Poly::term(ga.gcd(gb), Complex(1));
  }
  if (a == b) return a.monic();

  auto va = a.variables();
  auto vb = b.variables();
  // A variable in only one argument cannot occur in the gcd.
  for (Var v : va) {
    if (!vb.count(v)) return gcd(content_in(a, v), b);
  }
  for (Var v : vb) {
    if (!va.count(v)) return gcd(a, content_in(b, v));
  }

  Var main = *va.begin();
  unsigned best = a.degree(main) + b.degree(main);
  for (Var v : va) {
    unsigned d = a.degree(v) + b.degree(v);
    if (d < best) {
      best = d;
      main = v;
    }
  }

  Poly ca = content_in(a, main);
  Poly cb = content_in(b, main);
  Poly c = gcd(ca, cb);
  Poly f = *divide_exact(a, ca);
  Poly g = *divide_exact(b, cb);
  if (f.degree(main) < g.degree(main)) std::swap(f, g);
  while (true) {
    Poly r = pseudo_remainder(f, g, main);
    if (r.is_zero()) break;
    if (r.degree(main) == 0) {
      g = Poly(1);
      break;
    }
    f = std::move(g);
    g = primitive_part(r, main);
  }
  return (c * primitive_part(g, main)).monic();
}

SquareFreeFactorization square_free(const Poly& p) {
  SquareFreeFactorization out;
  if (p.is_zero()) {
    out.unit = Complex(0);
    return out;
  }
  if (p.is_constant()) {
    out.unit = *p.constant_value();
    return out;
  }
  Poly repeated = p;
  for (Var v : p.variables()) repeated = gcd(repeated, p.derivative(v));
  repeated = gcd(repeated, p);
  Poly w = *divide_exact(p, repeated);
  Poly r = repeated;
  unsigned mult = 1;
  Poly product(1);
  while (!w.is_constant()) {
    Poly y = gcd(w, r);
    Poly factor = divide_exact(w, y)->monic();
    if (!factor.is_constant()) {
      out.factors.emplace_back(factor, mult);
      product *= factor.pow(mult);
    }
    r = *divide_exact(r, y);
    w = y;
    ++mult;
  }
  out.unit = *divide_exact(p, product)->constant_value();
  return out;
}

}  // namespace sml
