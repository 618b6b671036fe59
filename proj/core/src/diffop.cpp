#include "sml/diffop.hpp"

#include <algorithm>

#include "sml/error.hpp"

namespace sml {

unsigned total_order(const DerivIndex& alpha) {
  unsigned s = 0;
  for (unsigned a : alpha) s += a;
  return s;
}

Rational factorial(const DerivIndex& alpha) {
  mpz_class f = 1;
  for (unsigned a : alpha) {
    for (unsigned j = 2; j <= a; ++j) f *= j;
  }
  return Rational(f);
}

SymExpr apply_derivative(const DerivIndex& alpha, const SymExpr& f) {
  SymExpr out = f;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (unsigned e = 0; e < alpha[j] && !out.is_zero(); ++e) out = out.derivative(Var::x(j + 1));
  }
  return out;
}

SymExpr symbol_monomial(const DerivIndex& alpha) {
  Poly p(Complex::i().pow(total_order(alpha)));
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j]) p *= Poly::variable(Var::k(j + 1)).pow(alpha[j]);
  }
  return SymExpr(p);
}

namespace {

Rational binomial(const DerivIndex& beta, const DerivIndex& gamma) {
  mpz_class num = 1;
  mpz_class den = 1;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    for (unsigned t = 0; t < gamma[j]; ++t) {
      num *= beta[j] - t;
      den *= t + 1;
    }
  }
  return Rational(num, den);
}

/// All gamma <= beta componentwise.
std::vector<DerivIndex> lower_indices(const DerivIndex& beta) {
  std::vector<DerivIndex> out{DerivIndex(beta.size(), 0)};
  for (std::size_t j = 0; j < beta.size(); ++j) {
    std::vector<DerivIndex> next;
    for (const auto& g : out) {
      for (unsigned e = 0; e <= beta[j]; ++e) {
        DerivIndex h = g;
        h[j] = e;
        next.push_back(std::move(h));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string coefficient_text(const SymExpr& c) {
  return "(" + c.to_string() + ")";
}

}  // namespace

DiffOp::DiffOp(unsigned m, const SymExpr& c) : m_(m) {
  add_term(DerivIndex(m, 0), c);
}

DiffOp DiffOp::partial(unsigned m, unsigned j, unsigned power) {
  if (j == 0 || j > m) throw DimensionError("partial derivative index out of range");
  DerivIndex alpha(m, 0);
  alpha[j - 1] = power;
  return derivative(alpha);
}

DiffOp DiffOp::derivative(const DerivIndex& alpha, const SymExpr& c) {
  DiffOp d(static_cast<unsigned>(alpha.size()));
  d.add_term(alpha, c);
  return d;
}

unsigned DiffOp::order() const {
  unsigned o = 0;
  for (const auto& kv : terms_) o = std::max(o, total_order(kv.first));
  return o;
}

SymExpr DiffOp::coefficient(const DerivIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? SymExpr() : it->second;
}

void DiffOp::add_term(const DerivIndex& alpha, const SymExpr& c) {
  if (alpha.size() != m_) throw DimensionError("derivative index length does not match dimension");
  if (c.depends_on(VarKind::K)) throw Error("operator coefficients may not depend on covector variables");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (o.m_ != m_) throw DimensionError("operators on different dimensions");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  return *this += -o;
}

DiffOp DiffOp::operator-() const {
  DiffOp out(m_);
  for (const auto& [a, c] : terms_) out.terms_.emplace(a, -c);
  return out;
}

DiffOp operator*(const SymExpr& c, const DiffOp& a) {
  DiffOp out(a.m_);
  if (c.is_zero()) return out;
  for (const auto& [alpha, ca] : a.terms_) out.add_term(alpha, c * ca);
  return out;
}

DiffOp operator*(const DiffOp& b, const DiffOp& a) {
  if (a.m_ != b.m_) throw DimensionError("composing operators on different dimensions");
  DiffOp out(a.m_);
  // b_beta d^beta (a_alpha d^alpha) = sum_{gamma<=beta} C(beta,gamma) b_beta (d^gamma a_alpha) d^(beta-gamma+alpha)
  for (const auto& [beta, cb] : b.terms_) {
    for (const auto& gamma : lower_indices(beta)) {
      Rational binom = binomial(beta, gamma);
      for (const auto& [alpha, ca] : a.terms_) {
        SymExpr da = apply_derivative(gamma, ca);
        if (da.is_zero()) continue;
        DerivIndex idx(a.m_);
        for (unsigned j = 0; j < a.m_; ++j) idx[j] = beta[j] - gamma[j] + alpha[j];
        out.add_term(idx, SymExpr(Complex(binom)) * cb * da);
      }
    }
  }
  return out;
}

SymExpr DiffOp::apply(const SymExpr& f) const {
  SymExpr out;
  for (const auto& [alpha, c] : terms_) out += c * apply_derivative(alpha, f);
  return out;
}

SymExpr DiffOp::symbol_part(unsigned d) const {
  SymExpr out;
  for (const auto& [alpha, c] : terms_) {
    if (total_order(alpha) == d) out += c * symbol_monomial(alpha);
  }
  return out;
}

SymExpr DiffOp::full_symbol() const {
  SymExpr out;
  for (const auto& [alpha, c] : terms_) out += c * symbol_monomial(alpha);
  return out;
}

DiffOp DiffOp::substitute(const std::map<Var, SymExpr>& images) const {
  DiffOp out(m_);
  for (const auto& [alpha, c] : terms_) out.add_term(alpha, c.substitute(images));
  return out;
}

std::string DiffOp::to_string() const {
  if (terms_.empty()) return "0";
  // Highest order first, then by exponent vector.
  std::vector<std::pair<DerivIndex, SymExpr>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    unsigned oa = total_order(a.first);
    unsigned ob = total_order(b.first);
    if (oa != ob) return oa > ob;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [alpha, c] : sorted) {
    if (!out.empty()) out += " + ";
    std::string d;
    for (unsigned j = 0; j < m_; ++j) {
      if (alpha[j] == 0) continue;
      if (!d.empty()) d += "*";
      d += "d[x" + std::to_string(j + 1) + "]";
      if (alpha[j] > 1) d += "^" + std::to_string(alpha[j]);
    }
    if (d.empty()) {
      out += coefficient_text(c);
    } else if (c == SymExpr(1)) {
      out += d;
    } else {
      out += coefficient_text(c) + "*" + d;
    }
  }
  return out;
}

}  // namespace sml
