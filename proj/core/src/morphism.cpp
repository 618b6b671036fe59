#include "sml/morphism.hpp"

#include <functional>

#include "sml/error.hpp"

namespace sml {

namespace {

void check_coefficients(const Superfunction& f, unsigned m) {
  for (const auto& [i, c] : f.coeffs()) {
    if (!c.is_polynomial()) throw Error("morphism coordinate images must be polynomial");
    for (Var v : c.variables()) {
      if (v.kind() == VarKind::K) throw Error("morphism coordinate images may not involve covector variables");
      if (v.kind() == VarKind::X && v.index() > m) throw DimensionError("coordinate image uses " + v.name());
    }
  }
}

/// All alpha over m variables with |alpha| <= max_order, in increasing order.
std::vector<DerivIndex> indices_up_to(unsigned m, unsigned max_order) {
  std::vector<DerivIndex> out;
  DerivIndex alpha(m, 0);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned j, unsigned left) {
    if (j == m) {
      out.push_back(alpha);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      alpha[j] = e;
      rec(j + 1, left - e);
    }
    alpha[j] = 0;
  };
  rec(0, max_order);
  return out;
}

/// chi*(zeta^I) as the ordered wedge of odd images.
Superfunction odd_monomial_image(const SuperMorphism& chi, const MultiIndex& index) {
  Superfunction z(chi.source_n(), SymExpr(1));
  for (unsigned a : index.generators()) z = z * chi.odd_images()[a - 1];
  return z;
}

/// (1/alpha!) s^alpha for the souls of the even images; zero entries omitted.
std::vector<std::pair<DerivIndex, Superfunction>> soul_powers(const SuperMorphism& chi) {
  unsigned m = chi.target_m();
  unsigned n = chi.source_n();
  std::vector<Superfunction> souls;
  for (const auto& e : chi.even_images()) souls.push_back(e.soul());
  std::vector<std::pair<DerivIndex, Superfunction>> out;
  for (const auto& alpha : indices_up_to(m, n / 2)) {
    Superfunction p(n, SymExpr(1));
    for (unsigned j = 0; j < m && !p.is_zero(); ++j) {
      if (alpha[j]) p = p * souls[j].pow(alpha[j]);
    }
    if (p.is_zero()) continue;
    p *= SymExpr(Complex(Rational(1) / factorial(alpha)));
    out.emplace_back(alpha, std::move(p));
  }
  return out;
}

Superfunction evaluate_polynomial(const Poly& p, const std::vector<Superfunction>& args, unsigned n) {
  Superfunction out(n);
  std::map<std::pair<unsigned, unsigned>, Superfunction> powers;
  for (const auto& [mono, c] : p.terms()) {
    Superfunction term(n, SymExpr(c));
    Poly rest(1);
    for (const auto& [v, e] : mono.factors()) {
      if (v.kind() == VarKind::X) {
        auto key = std::make_pair(v.index(), e);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, args[v.index() - 1].pow(e)).first;
        term = term * it->second;
      } else {
        rest *= Poly::variable(v).pow(e);
      }
    }
    if (!rest.is_constant()) term *= SymExpr(rest);
    out += term;
  }
  return out;
}

Matrix<SymExpr> substitute_matrix(const Matrix<SymExpr>& m, const std::map<Var, SymExpr>& images) {
  return m.map([&](const SymExpr& e) { return e.substitute(images); });
}

}  // namespace

SuperMorphism::SuperMorphism(unsigned source_m, unsigned source_n, unsigned target_m, unsigned target_n,
                             std::vector<Superfunction> even_images, std::vector<Superfunction> odd_images)
    : source_m_(source_m),
      source_n_(source_n),
      target_m_(target_m),
      target_n_(target_n),
      even_(std::move(even_images)),
      odd_(std::move(odd_images)) {
  if (even_.size() != target_m || odd_.size() != target_n) {
    throw DimensionError("morphism needs one image per target coordinate");
  }
  for (std::size_t j = 0; j < even_.size(); ++j) {
    if (even_[j].n() != source_n) throw DimensionError("coordinate image over wrong generator count");
    if (!even_[j].is_even()) throw Error("image of even coordinate y" + std::to_string(j + 1) + " is not even");
    check_coefficients(even_[j], source_m);
  }
  for (std::size_t a = 0; a < odd_.size(); ++a) {
    if (odd_[a].n() != source_n) throw DimensionError("coordinate image over wrong generator count");
    if (!odd_[a].is_odd()) throw Error("image of odd coordinate z" + std::to_string(a + 1) + " is not odd");
    check_coefficients(odd_[a], source_m);
  }
}

SuperMorphism SuperMorphism::identity(unsigned m, unsigned n) {
  std::vector<Superfunction> even;
  std::vector<Superfunction> odd;
  for (unsigned j = 1; j <= m; ++j) even.emplace_back(n, SymExpr::variable(Var::x(j)));
  for (unsigned a = 1; a <= n; ++a) odd.push_back(Superfunction::generator(n, a));
  return SuperMorphism(m, n, m, n, std::move(even), std::move(odd));
}

std::vector<SymExpr> SuperMorphism::body_map() const {
  std::vector<SymExpr> out;
  for (const auto& e : even_) out.push_back(e.body());
  return out;
}

SymExpr pull_back_body(const SymExpr& f, const std::vector<SymExpr>& body_map) {
  std::map<Var, SymExpr> images;
  for (std::size_t j = 0; j < body_map.size(); ++j) images.emplace(Var::x(j + 1), body_map[j]);
  return f.substitute(images);
}

Superfunction pullback_superfunction(const SuperMorphism& chi, const Superfunction& f) {
  if (f.n() != chi.target_n()) throw DimensionError("superfunction over wrong generator count for pullback");
  unsigned n = chi.source_n();
  Superfunction out(n);
  std::vector<std::pair<DerivIndex, Superfunction>> taylor;
  bool have_taylor = false;
  for (const auto& [index, coeff] : f.coeffs()) {
    Superfunction z = odd_monomial_image(chi, index);
    if (z.is_zero()) continue;
    Superfunction value(n);
    if (coeff.is_polynomial()) {
      value = evaluate_polynomial(coeff.numerator(), chi.even_images(), n);
    } else {
      // Rational coefficient: finite Taylor expansion in the nilpotent souls.
      if (!have_taylor) {
        taylor = soul_powers(chi);
        have_taylor = true;
      }
      auto body = chi.body_map();
      for (const auto& [alpha, s] : taylor) {
        value += pull_back_body(apply_derivative(alpha, coeff), body) * s;
      }
    }
    out += value * z;
  }
  return out;
}

Superfunction FactorizationData::apply(const Superfunction& f) const {
  if (f.n() != target_n) throw DimensionError("superfunction over wrong generator count");
  Superfunction out(source_n);
  for (const auto& [slot, terms] : dchi) {
    SymExpr fi = f.coefficient(slot.second);
    if (fi.is_zero()) continue;
    for (const auto& [alpha, c] : terms) {
      out.add(slot.first, c * pull_back_body(apply_derivative(alpha, fi), body_map));
    }
  }
  return out;
}

FactorizationData factorize(const SuperMorphism& chi) {
  FactorizationData out;
  out.source_m = chi.source_m();
  out.source_n = chi.source_n();
  out.target_m = chi.target_m();
  out.target_n = chi.target_n();
  out.body_map = chi.body_map();
  auto powers = soul_powers(chi);
  for (const auto& index : all_multi_indices(chi.target_n())) {
    Superfunction z = odd_monomial_image(chi, index);
    if (z.is_zero()) continue;
    for (const auto& [alpha, s] : powers) {
      Superfunction p = s * z;
      for (const auto& [j, c] : p.coeffs()) {
        auto& terms = out.dchi[{j, index}];
        auto [it, inserted] = terms.try_emplace(alpha, c);
        if (!inserted) {
          it->second += c;
          if (it->second.is_zero()) terms.erase(it);
        }
      }
    }
  }
  std::erase_if(out.dchi, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

Matrix<SymExpr> polarization_map(const SuperMorphism& chi) {
  auto data = factorize(chi);
  std::size_t rows = std::size_t{1} << chi.source_n();
  std::size_t cols = std::size_t{1} << chi.target_n();
  Matrix<SymExpr> out(rows, cols);
  for (const auto& [slot, terms] : data.dchi) {
    int diff = static_cast<int>(slot.first.degree()) - static_cast<int>(slot.second.degree());
    if (diff < 0 || diff % 2 != 0) continue;
    unsigned d = static_cast<unsigned>(diff / 2);
    SymExpr block;
    for (const auto& [alpha, c] : terms) {
      if (total_order(alpha) == d) block += c * symbol_monomial(alpha);
    }
    out(block_position(slot.first), block_position(slot.second)) = block;
  }
  return out;
}

Matrix<Complex> polarization_map_at(const SuperMorphism& chi, const RVector& x, const RVector& k) {
  if (x.size() != chi.source_m() || k.size() != chi.target_m()) throw DimensionError("evaluation point mismatch");
  std::map<Var, Complex> pt;
  for (std::size_t j = 0; j < x.size(); ++j) pt.emplace(Var::x(j + 1), Complex(x[j]));
  for (std::size_t j = 0; j < k.size(); ++j) pt.emplace(Var::k(j + 1), Complex(k[j]));
  return polarization_map(chi).map([&](const SymExpr& e) { return e.evaluate(pt); });
}

SuperMorphism compose(const SuperMorphism& outer, const SuperMorphism& inner) {
  if (inner.target_m() != outer.source_m() || inner.target_n() != outer.source_n()) {
    throw DimensionError("composition of morphisms with mismatched domains");
  }
  std::vector<Superfunction> even;
  std::vector<Superfunction> odd;
  for (const auto& e : outer.even_images()) even.push_back(pullback_superfunction(inner, e));
  for (const auto& o : outer.odd_images()) odd.push_back(pullback_superfunction(inner, o));
  return SuperMorphism(inner.source_m(), inner.source_n(), outer.target_m(), outer.target_n(), std::move(even),
                       std::move(odd));
}

Matrix<SymExpr> body_jacobian(const SuperMorphism& chi) {
  auto body = chi.body_map();
  Matrix<SymExpr> jac(chi.target_m(), chi.source_m());
  for (unsigned i = 0; i < chi.target_m(); ++i) {
    for (unsigned j = 0; j < chi.source_m(); ++j) jac(i, j) = body[i].derivative(Var::x(j + 1));
  }
  return jac;
}

Matrix<SymExpr> polarization_map_product(const SuperMorphism& outer, const SuperMorphism& inner) {
  if (inner.target_m() != outer.source_m() || inner.target_n() != outer.source_n()) {
    throw DimensionError("composition of morphisms with mismatched domains");
  }
  auto body = inner.body_map();
  std::map<Var, SymExpr> at_body;
  for (std::size_t j = 0; j < body.size(); ++j) at_body.emplace(Var::x(j + 1), body[j]);
  // Covector at chi~(x) obtained by pulling back k along the outer body map.
  Matrix<SymExpr> jac = substitute_matrix(body_jacobian(outer), at_body);
  std::map<Var, SymExpr> pulled_k;
  for (unsigned j = 0; j < outer.source_m(); ++j) {
    SymExpr kj;
    for (unsigned i = 0; i < outer.target_m(); ++i) kj += jac(i, j) * SymExpr::variable(Var::k(i + 1));
    pulled_k.emplace(Var::k(j + 1), kj);
  }
  Matrix<SymExpr> left = substitute_matrix(polarization_map(inner), pulled_k);
  Matrix<SymExpr> right = substitute_matrix(polarization_map(outer), at_body);
  return left * right;
}

std::optional<AffineBody> affine_body(const SuperMorphism& chi) {
  AffineBody out{Matrix<Rational>(chi.target_m(), chi.source_m()), RVector(chi.target_m(), Rational(0))};
  auto body = chi.body_map();
  for (unsigned i = 0; i < chi.target_m(); ++i) {
    const SymExpr& b = body[i];
    if (!b.is_polynomial() || b.depends_on(VarKind::Param) || b.numerator().total_degree() > 1) return std::nullopt;
    for (const auto& [mono, c] : b.numerator().terms()) {
      if (!c.is_real()) return std::nullopt;
      if (mono.is_one()) {
        out.offset[i] = c.real();
      } else {
        out.linear(i, mono.factors()[0].first.index() - 1) = c.real();
      }
    }
  }
  return out;
}

SuperMorphism inverse(const SuperMorphism& chi) {
  unsigned m = chi.source_m();
  unsigned n = chi.source_n();
  if (chi.target_m() != m || chi.target_n() != n) throw SingularError("morphism between superdomains of different dimension");
  auto affine = affine_body(chi);
  if (!affine) throw Unsupported("inverse requires an affine body map");
  auto a_inv = inverse(affine->linear);
  if (!a_inv) throw SingularError("body map is not invertible");
  Matrix<Complex> lin(n, n);
  std::vector<Superfunction> rest;
  for (unsigned a = 0; a < n; ++a) {
    Superfunction r = chi.odd_images()[a];
    for (unsigned b = 1; b <= n; ++b) {
      MultiIndex g = MultiIndex::of(n, {b});
      SymExpr c = r.coefficient(g);
      auto value = c.constant_value();
      if (!value) throw Unsupported("odd coordinate images have non-constant linear part");
      lin(a, b - 1) = *value;
      r.set(g, SymExpr());
    }
    rest.push_back(std::move(r));
  }
  auto l_inv = inverse(lin);
  if (!l_inv) throw SingularError("odd linear part is not invertible");

  std::vector<Superfunction> souls;
  for (const auto& e : chi.even_images()) souls.push_back(e.soul());
  std::vector<SymExpr> base(m);
  for (unsigned i = 0; i < m; ++i) {
    SymExpr v;
    for (unsigned j = 0; j < m; ++j) {
      if (sgn((*a_inv)(i, j)) == 0) continue;
      v += SymExpr(Complex((*a_inv)(i, j))) * (SymExpr::variable(Var::x(j + 1)) - SymExpr(Complex(affine->offset[j])));
    }
    base[i] = v;
  }
  std::vector<Superfunction> xs(m);
  std::vector<Superfunction> ths(n);
  for (unsigned i = 0; i < m; ++i) xs[i] = Superfunction(n, base[i]);
  for (unsigned b = 0; b < n; ++b) {
    ths[b] = Superfunction(n);
    for (unsigned a = 0; a < n; ++a) ths[b] += Superfunction::generator(n, a + 1) * SymExpr((*l_inv)(b, a));
  }
  // Each pass fixes one more order of the nilpotent filtration.
  for (unsigned pass = 0; pass <= n + 1; ++pass) {
    SuperMorphism psi(m, n, m, n, xs, ths);
    std::vector<Superfunction> next_x(m);
    std::vector<Superfunction> next_th(n);
    std::vector<Superfunction> pulled_souls;
    for (const auto& s : souls) pulled_souls.push_back(pullback_superfunction(psi, s));
    for (unsigned i = 0; i < m; ++i) {
      next_x[i] = Superfunction(n, base[i]);
      for (unsigned j = 0; j < m; ++j) {
        if (sgn((*a_inv)(i, j)) != 0) next_x[i] -= pulled_souls[j] * SymExpr(Complex((*a_inv)(i, j)));
      }
    }
    std::vector<Superfunction> pulled_rest;
    for (const auto& r : rest) pulled_rest.push_back(pullback_superfunction(psi, r));
    for (unsigned b = 0; b < n; ++b) {
      next_th[b] = Superfunction(n);
      for (unsigned a = 0; a < n; ++a) {
        next_th[b] += (Superfunction::generator(n, a + 1) - pulled_rest[a]) * SymExpr((*l_inv)(b, a));
      }
    }
    bool stable = next_x == xs && next_th == ths;
    xs = std::move(next_x);
    ths = std::move(next_th);
    if (stable) break;
  }
  SuperMorphism psi(m, n, m, n, xs, ths);
  SuperMorphism id = SuperMorphism::identity(m, n);
  if (!(compose(psi, chi) == id) || !(compose(chi, psi) == id)) {
    throw Unsupported("inverse morphism is not polynomially representable");
  }
  return psi;
}

NormalSetDescriptor normal_set(const SuperMorphism& chi) {
  NormalSetDescriptor out;
  out.body_map = chi.body_map();
  out.jacobian = body_jacobian(chi);
  if (auto affine = affine_body(chi)) {
    out.affine = true;
    out.image = AffineSubspace::all(chi.source_m()).image(affine->linear, affine->offset);
    out.covectors = LinearSubspace::kernel(affine->linear.transpose());
    out.kernel_basis = out.covectors.basis_vectors();
  }
  return out;
}

AtlasReport validate_atlas(const std::vector<Chart>& charts, const std::vector<Transition>& transitions) {
  AtlasReport report;
  std::map<std::string, const Chart*> by_name;
  for (const auto& c : charts) by_name[c.name] = &c;
  std::map<std::pair<std::string, std::string>, const SuperMorphism*> maps;
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.failures.push_back(std::move(msg));
  };
  for (const auto& t : transitions) {
    auto from = by_name.find(t.from);
    auto to = by_name.find(t.to);
    ++report.checks;
    if (from == by_name.end() || to == by_name.end()) {
      fail("transition " + t.from + "->" + t.to + " refers to an unknown chart");
      continue;
    }
    const SuperMorphism& f = t.map;
    if (f.source_m() != from->second->m || f.source_n() != from->second->n || f.target_m() != to->second->m ||
        f.target_n() != to->second->n) {
      fail("transition " + t.from + "->" + t.to + " does not match chart dimensions");
      continue;
    }
    maps[{t.from, t.to}] = &f;
  }
  for (const auto& [key, f] : maps) {
    if (key.first != key.second) continue;
    ++report.checks;
    if (!(*f == SuperMorphism::identity(f->source_m(), f->source_n()))) {
      fail("identity: " + key.first + "->" + key.first + " is not the identity");
    }
  }
  for (const auto& [ab, f_ab] : maps) {
    for (const auto& [bc, f_bc] : maps) {
      if (ab.second != bc.first || ab.first == ab.second || bc.first == bc.second) continue;
      const std::string& a = ab.first;
      const std::string& c = bc.second;
      std::string triple = a + "->" + ab.second + "->" + c;
      const SuperMorphism* f_ac = nullptr;
      SuperMorphism id;
      if (a == c) {
        id = SuperMorphism::identity(f_ab->source_m(), f_ab->source_n());
        f_ac = &id;
      } else {
        auto it = maps.find({a, c});
        if (it == maps.end()) continue;
        f_ac = it->second;
      }
      ++report.checks;
      if (!(compose(*f_bc, *f_ab) == *f_ac)) fail("cocycle: " + triple + " differs from " + a + "->" + c);
      ++report.checks;
      if (!(polarization_map_product(*f_bc, *f_ab) == polarization_map(*f_ac))) {
        fail("polarization cocycle: " + triple);
      }
    }
  }
  return report;
}

}  // namespace sml
