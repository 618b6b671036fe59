#include "sml/catalog.hpp"

#include "sml/error.hpp"

namespace sml {

namespace {

int compare(const Rational& a, const Rational& b) {
  return cmp(a, b) < 0 ? -1 : (cmp(a, b) > 0 ? 1 : 0);
}

int compare(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare(a[i], b[i])) return c;
  }
  return 0;
}

std::string list_text(const RVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out;
}

/// Scales (a, c) so that the first nonzero entry of a is 1; returns the scale s.
Rational normalize_hyperplane(RVector& a, Rational& c) {
  Rational s = 0;
  for (const auto& e : a) {
    if (sgn(e) != 0) {
      s = e;
      break;
    }
  }
  if (sgn(s) == 0) throw Error("hyperplane normal must be nonzero");
  for (auto& e : a) e /= s;
  c /= s;
  return s;
}

std::map<Var, Complex> point_map(const RVector& p) {
  std::map<Var, Complex> pt;
  for (std::size_t j = 0; j < p.size(); ++j) pt.emplace(Var::x(j + 1), Complex(p[j]));
  return pt;
}

Rational pairing(const RVector& a, const RVector& p) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * p[j];
  return s;
}

}  // namespace

std::string CatalogAtom::to_string() const {
  switch (kind) {
    case CatalogKind::DeltaPoint: {
      std::string d;
      for (std::size_t j = 0; j < beta.size(); ++j) {
        if (beta[j] == 0) continue;
        d += "d[x" + std::to_string(j + 1) + "]";
        if (beta[j] > 1) d += "^" + std::to_string(beta[j]);
        d += "*";
      }
      return d + "delta(" + list_text(point) + ")";
    }
    case CatalogKind::DeltaHyperplane: {
      std::string out = "deltah(" + list_text(normal) + "; " + sml::to_string(offset);
      if (order > 0) out += "; " + std::to_string(order);
      return out + ")";
    }
    case CatalogKind::Heaviside:
      return "heaviside(" + list_text(normal) + "; " + sml::to_string(offset) + ")";
  }
  return "";
}

bool CatalogAtomLess::operator()(const CatalogAtom& a, const CatalogAtom& b) const {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (int c = compare(a.point, b.point)) return c < 0;
  if (a.beta != b.beta) return a.beta < b.beta;
  if (int c = compare(a.normal, b.normal)) return c < 0;
  if (int c = compare(a.offset, b.offset)) return c < 0;
  return a.order < b.order;
}

CatalogSum CatalogSum::smooth(unsigned m, const Poly& p) {
  for (Var v : p.variables()) {
    if (v.kind() != VarKind::X || v.index() > m) throw Error("smooth catalog term must be a polynomial in x1..xm");
  }
  CatalogSum s(m);
  s.smooth_ = p;
  return s;
}

CatalogSum CatalogSum::delta_point(const RVector& p, const DerivIndex& beta) {
  CatalogSum s(static_cast<unsigned>(p.size()));
  CatalogAtom a;
  a.kind = CatalogKind::DeltaPoint;
  a.point = p;
  a.beta = beta.empty() ? DerivIndex(p.size(), 0) : beta;
  if (a.beta.size() != p.size()) throw DimensionError("derivative index does not match point dimension");
  s.add_atom(a, Complex(1));
  return s;
}

CatalogSum CatalogSum::delta_hyperplane(const RVector& a, const Rational& c, unsigned order) {
  CatalogSum s(static_cast<unsigned>(a.size()));
  CatalogAtom atom;
  atom.kind = CatalogKind::DeltaHyperplane;
  atom.normal = a;
  atom.offset = c;
  atom.order = order;
  Rational scale = normalize_hyperplane(atom.normal, atom.offset);
  // delta^(r)(s L) = s^(-r) |s|^(-1) delta^(r)(L)
  Rational factor = 1 / abs(scale);
  for (unsigned j = 0; j < order; ++j) factor /= scale;
  s.add_atom(atom, Complex(factor));
  return s;
}

CatalogSum CatalogSum::heaviside(const RVector& a, const Rational& c) {
  CatalogSum s(static_cast<unsigned>(a.size()));
  CatalogAtom atom;
  atom.kind = CatalogKind::Heaviside;
  atom.normal = a;
  atom.offset = c;
  Rational scale = normalize_hyperplane(atom.normal, atom.offset);
  if (sgn(scale) > 0) {
    s.add_atom(atom, Complex(1));
  } else {
    s.smooth_ = Poly(1);
    s.add_atom(atom, Complex(-1));
  }
  return s;
}

void CatalogSum::add_atom(const CatalogAtom& atom, const Complex& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = atoms_.try_emplace(atom, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) atoms_.erase(it);
  }
}

CatalogSum& CatalogSum::operator+=(const CatalogSum& o) {
  if (o.m_ != m_) throw DimensionError("catalog sums on different dimensions");
  smooth_ += o.smooth_;
  for (const auto& [a, c] : o.atoms_) add_atom(a, c);
  return *this;
}

CatalogSum& CatalogSum::operator-=(const CatalogSum& o) {
  CatalogSum neg = o;
  neg *= Complex(-1);
  return *this += neg;
}

CatalogSum& CatalogSum::operator*=(const Complex& c) {
  if (c.is_zero()) {
    smooth_ = Poly();
    atoms_.clear();
    return *this;
  }
  smooth_ *= c;
  for (auto& kv : atoms_) kv.second *= c;
  return *this;
}

CatalogSum CatalogSum::derivative(const DerivIndex& alpha) const {
  if (alpha.size() != m_) throw DimensionError("derivative index does not match dimension");
  unsigned total = total_order(alpha);
  CatalogSum out(m_);
  if (total == 0) return *this;
  Poly s = smooth_;
  for (unsigned j = 0; j < m_; ++j) {
    for (unsigned e = 0; e < alpha[j]; ++e) s = s.derivative(Var::x(j + 1));
  }
  out.smooth_ = s;
  for (const auto& [atom, c] : atoms_) {
    CatalogAtom next = atom;
    Complex coeff = c;
    switch (atom.kind) {
      case CatalogKind::DeltaPoint:
        for (unsigned j = 0; j < m_; ++j) next.beta[j] += alpha[j];
        break;
      case CatalogKind::DeltaHyperplane:
      case CatalogKind::Heaviside: {
        // d_j F(<a,x> - c) = a_j F'(<a,x> - c)
        Rational f = 1;
        for (unsigned j = 0; j < m_; ++j) {
          for (unsigned e = 0; e < alpha[j]; ++e) f *= atom.normal[j];
        }
        coeff *= Complex(f);
        if (atom.kind == CatalogKind::Heaviside) {
          next.kind = CatalogKind::DeltaHyperplane;
          next.order = total - 1;
        } else {
          next.order = atom.order + total;
        }
        break;
      }
    }
    out.add_atom(next, coeff);
  }
  return out;
}

CatalogSum CatalogSum::multiply(const Poly& p) const {
  for (Var v : p.variables()) {
    if (v.kind() != VarKind::X || v.index() > m_) throw Unsupported("coefficient is not a polynomial in x");
  }
  CatalogSum out(m_);
  out.smooth_ = smooth_ * p;
  if (atoms_.empty()) return out;
  if (auto c = p.constant_value()) {
    for (const auto& [atom, coeff] : atoms_) out.add_atom(atom, coeff * *c);
    return out;
  }
  for (const auto& [atom, coeff] : atoms_) {
    if (atom.kind != CatalogKind::DeltaPoint) {
      throw Unsupported("non-constant coefficient times " + atom.to_string() + " is outside the catalog");
    }
    // p d^beta delta_q = sum_{gamma <= beta} (-1)^|gamma| C(beta,gamma) (d^gamma p)(q) d^(beta-gamma) delta_q
    auto pt = point_map(atom.point);
    std::vector<DerivIndex> gammas{DerivIndex(m_, 0)};
    for (unsigned j = 0; j < m_; ++j) {
      std::vector<DerivIndex> next;
      for (const auto& g : gammas) {
        for (unsigned e = 0; e <= atom.beta[j]; ++e) {
          DerivIndex h = g;
          h[j] = e;
          next.push_back(h);
        }
      }
      gammas = std::move(next);
    }
    for (const auto& gamma : gammas) {
      Poly dp = p;
      mpz_class binom = 1;
      for (unsigned j = 0; j < m_; ++j) {
        for (unsigned e = 0; e < gamma[j]; ++e) {
          dp = dp.derivative(Var::x(j + 1));
          binom *= atom.beta[j] - e;
          binom /= e + 1;
        }
      }
      Complex value = dp.evaluate(pt);
      if (value.is_zero()) continue;
      if (total_order(gamma) % 2 == 1) value = -value;
      CatalogAtom lower = atom;
      for (unsigned j = 0; j < m_; ++j) lower.beta[j] -= gamma[j];
      out.add_atom(lower, coeff * value * Complex(Rational(binom)));
    }
  }
  return out;
}

std::string CatalogSum::to_string() const {
  std::string out;
  if (!smooth_.is_zero()) out = "(" + smooth_.to_string() + ")";
  for (const auto& [atom, c] : atoms_) {
    if (!out.empty()) out += " + ";
    if (!c.is_one()) out += "(" + c.to_string() + ")*";
    out += atom.to_string();
  }
  return out.empty() ? "0" : out;
}

std::optional<Complex> proportional(const CatalogSum& a, const CatalogSum& b) {
  if (b.is_zero() || a.dim() != b.dim()) return std::nullopt;
  std::optional<Complex> ratio;
  if (!b.smooth_part().is_zero()) {
    ratio = a.smooth_part().is_zero() ? Complex(0)
                                      : a.smooth_part().leading_coefficient() / b.smooth_part().leading_coefficient();
  } else {
    const auto& [atom, c] = *b.atoms().begin();
    auto it = a.atoms().find(atom);
    ratio = it == a.atoms().end() ? Complex(0) : it->second / c;
  }
  if (ratio->is_zero()) return std::nullopt;
  CatalogSum scaled = b;
  scaled *= *ratio;
  if (!(scaled == a)) return std::nullopt;
  return ratio;
}

CatalogSum apply(const DiffOp& op, const CatalogSum& u) {
  if (op.dim() != u.dim()) throw DimensionError("operator and distribution on different dimensions");
  CatalogSum out(u.dim());
  for (const auto& [alpha, c] : op.terms()) {
    if (!c.is_polynomial() || c.depends_on(VarKind::Param)) {
      throw Unsupported("operator coefficient " + c.to_string() + " is not a numeric polynomial");
    }
    out += u.derivative(alpha).multiply(c.numerator());
  }
  return out;
}

namespace {

std::optional<CatalogSum> atom_product(unsigned m, const CatalogAtom& a, const CatalogAtom& b) {
  auto single = [m](const CatalogAtom& atom, const Complex& c) {
    CatalogSum s(m);
    s.add_atom(atom, c);
    return s;
  };
  if (b.kind == CatalogKind::DeltaPoint && a.kind != CatalogKind::DeltaPoint) return atom_product(m, b, a);
  if (a.kind == CatalogKind::DeltaPoint) {
    if (b.kind == CatalogKind::DeltaPoint) {
      if (compare(a.point, b.point) != 0) return CatalogSum(m);
      return std::nullopt;
    }
    Rational side = pairing(b.normal, a.point) - b.offset;
    if (sgn(side) == 0) return std::nullopt;
    if (b.kind == CatalogKind::DeltaHyperplane) return CatalogSum(m);
    // Heaviside is locally constant near the point.
    return sgn(side) > 0 ? single(a, Complex(1)) : CatalogSum(m);
  }
  // Two hyperplane atoms: only parallel, distinct hyperplanes are handled.
  if (compare(a.normal, b.normal) != 0) return std::nullopt;
  if (compare(a.offset, b.offset) == 0) {
    return std::nullopt;
  }
  if (a.kind == CatalogKind::Heaviside && b.kind == CatalogKind::Heaviside) {
    return single(compare(a.offset, b.offset) > 0 ? a : b, Complex(1));
  }
  if (a.kind == CatalogKind::DeltaHyperplane && b.kind == CatalogKind::DeltaHyperplane) return CatalogSum(m);
  const CatalogAtom& h = a.kind == CatalogKind::Heaviside ? a : b;
  const CatalogAtom& d = a.kind == CatalogKind::Heaviside ? b : a;
  return cmp(d.offset, h.offset) > 0 ? single(d, Complex(1)) : CatalogSum(m);
}

}  // namespace

std::optional<CatalogSum> product(const CatalogSum& a, const CatalogSum& b) {
  if (a.dim() != b.dim()) throw DimensionError("catalog sums on different dimensions");
  unsigned m = a.dim();
  CatalogSum out(m);
  try {
    out += b.multiply(a.smooth_part());
    CatalogSum a_singular = a;
    a_singular -= CatalogSum::smooth(m, a.smooth_part());
    out += a_singular.multiply(b.smooth_part());
  } catch (const Unsupported&) {
    return std::nullopt;
  }
  for (const auto& [x, cx] : a.atoms()) {
    for (const auto& [y, cy] : b.atoms()) {
      auto p = atom_product(m, x, y);
      if (!p) return std::nullopt;
      *p *= cx * cy;
      out += *p;
    }
  }
  return out;
}

CatalogSum SuperDistribution::component(const MultiIndex& index) const {
  auto it = components_.find(index);
  return it == components_.end() ? CatalogSum(m_) : it->second;
}

void SuperDistribution::set(const MultiIndex& index, const CatalogSum& u) {
  if (index.n() != n_) throw DimensionError("component multi-index over wrong generator count");
  if (u.dim() != m_) throw DimensionError("component lives on the wrong base dimension");
  if (u.is_zero()) {
    components_.erase(index);
  } else {
    components_[index] = u;
  }
}

void SuperDistribution::add(const MultiIndex& index, const CatalogSum& u) {
  set(index, component(index) + u);
}

bool SuperDistribution::is_smooth() const {
  for (const auto& kv : components_) {
    if (!kv.second.is_smooth()) return false;
  }
  return true;
}

std::string SuperDistribution::to_string() const {
  std::string out;
  for (const auto& [i, u] : components_) {
    if (!out.empty()) out += " + ";
    out += "[" + u.to_string() + "]*" + i.to_string();
  }
  return out.empty() ? "0" : out;
}

}  // namespace sml
