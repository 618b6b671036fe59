#include "sml/propagation.hpp"

#include "sml/error.hpp"

namespace sml {

std::array<Matrix<Complex>, 3> gamma_matrices() {
  std::array<Matrix<Complex>, 3> g{Matrix<Complex>(2, 2), Matrix<Complex>(2, 2), Matrix<Complex>(2, 2)};
  Complex i = Complex::i();
  g[0](0, 1) = -i;
  g[0](1, 0) = i;
  g[1](0, 1) = i;
  g[1](1, 0) = i;
  g[2](0, 0) = i;
  g[2](1, 1) = -i;
  return g;
}

Matrix<Rational> minkowski_metric() {
  Matrix<Rational> g(3, 3);
  g(0, 0) = 1;
  g(1, 1) = -1;
  g(2, 2) = -1;
  return g;
}

bool clifford_relation_holds(const std::array<Matrix<Complex>, 3>& gamma, const Matrix<Rational>& g) {
  for (std::size_t mu = 0; mu < 3; ++mu) {
    for (std::size_t nu = 0; nu < 3; ++nu) {
      Matrix<Complex> anti = gamma[mu] * gamma[nu] + gamma[nu] * gamma[mu];
      Matrix<Complex> expected = Complex(2 * g(mu, nu)) * Matrix<Complex>::identity(2);
      if (!(anti == expected)) return false;
    }
  }
  return true;
}

Matrix<SymExpr> slashed_covector() {
  auto gamma = gamma_matrices();
  Matrix<SymExpr> out(2, 2);
  for (unsigned mu = 0; mu < 3; ++mu) {
    SymExpr kmu = SymExpr::variable(Var::k(mu + 1));
    out = out + gamma[mu].map([&](const Complex& c) { return SymExpr(c) * kmu; });
  }
  return out;
}

namespace {

bool constant_coefficients(const SuperOperator& a) {
  return a.constant_coefficients();
}

DiffOp dirac(const Complex& sign, unsigned a, unsigned b, const SymExpr& mass) {
  auto gamma = gamma_matrices();
  DiffOp op(3);
  for (unsigned mu = 0; mu < 3; ++mu) {
    Complex c = sign * Complex::i() * gamma[mu](a, b);
    if (!c.is_zero()) op += SymExpr(c) * DiffOp::partial(3, mu + 1);
  }
  if (a == b) op += DiffOp(3, mass);
  return op;
}

DiffOp box() {
  return DiffOp::partial(3, 1, 2) - DiffOp::partial(3, 2, 2) - DiffOp::partial(3, 3, 2);
}

SuperOperator wz_operator(const SymExpr& mass, const Complex& sign) {
  SuperOperator p(3, 2, 1);
  MultiIndex body = MultiIndex::empty(2);
  MultiIndex top = MultiIndex::full(2);
  p.set(body, body, DiffOp(3, mass));
  p.set(body, top, DiffOp(3, SymExpr(-sign)));
  p.set(top, body, SymExpr(sign) * box());
  p.set(top, top, DiffOp(3, mass));
  for (unsigned a = 0; a < 2; ++a) {
    for (unsigned b = 0; b < 2; ++b) {
      p.set(MultiIndex::of(2, {a + 1}), MultiIndex::of(2, {b + 1}), dirac(sign, a, b, mass));
    }
  }
  return p;
}

}  // namespace

CompanionResult verify_companion(const SuperOperator& p, const SuperOperator& p_tilde) {
  CompanionResult out;
  if (!constant_coefficients(p) || !constant_coefficients(p_tilde)) {
    out.failure = "operators must have constant coefficients";
    return out;
  }
  SuperOperator c = compose_ops(p_tilde, p);
  MultiIndex body = MultiIndex::empty(p.n());
  DiffOp q = c.component(body, body);
  for (const auto& row : all_multi_indices(p.n())) {
    for (const auto& col : all_multi_indices(p.n())) {
      DiffOp entry = c.component(row, col);
      DiffOp expected = row == col ? q : DiffOp(p.m());
      if (!(entry == expected)) {
        out.failure = "composite slot (" + row.to_string() + "|" + col.to_string() + ") is " + entry.to_string() +
                      ", expected " + expected.to_string();
        return out;
      }
    }
  }
  out.ok = true;
  out.q = q;
  return out;
}

HyperbolicSystem make_system(const SuperOperator& p, const SuperOperator& p_tilde) {
  auto companion = verify_companion(p, p_tilde);
  if (!companion.ok) throw Error("companion check failed: " + companion.failure);
  HyperbolicSystem s{p, p_tilde, companion.q, Matrix<Rational>()};
  s.metric = characteristic_set(companion.q).metric;
  return s;
}

HyperbolicSystem wz_model(const SymExpr& mass) {
  return make_system(wz_operator(mass, Complex(1)), wz_operator(mass, Complex(-1)));
}

CharacteristicSet characteristic_set(const DiffOp& q) {
  CharacteristicSet cs;
  SymExpr sigma2 = q.symbol_part(2);
  if (q.order() != 2 || !sigma2.is_polynomial() || sigma2.depends_on(VarKind::X) ||
      sigma2.depends_on(VarKind::Param)) {
    throw Error("principal symbol of the companion is not a constant second-order form");
  }
  auto g = quadratic_form_matrix(sigma2.numerator(), q.dim());
  if (!g) throw Error("principal symbol of the companion is not a real quadratic form");
  cs.principal = sigma2.numerator();
  cs.metric = Matrix<Rational>(q.dim(), q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = 0; j < q.dim(); ++j) cs.metric(i, j) = -(*g)(i, j);
  }
  cs.signature = inertia(cs.metric);
  return cs;
}

Poly CharacteristicSet::quadratic() const {
  return -principal;
}

bool CharacteristicSet::contains(const RVector& k) const {
  if (k.size() != metric.rows()) throw DimensionError("covector dimension mismatch");
  bool nonzero = false;
  for (const auto& e : k) nonzero = nonzero || sgn(e) != 0;
  if (!nonzero) return false;
  Rational v = 0;
  RVector gk = metric.apply(k);
  for (std::size_t i = 0; i < k.size(); ++i) v += k[i] * gk[i];
  return sgn(v) == 0;
}

std::string CharacteristicSet::description() const {
  std::string sig = "(" + std::to_string(signature.positive) + "," + std::to_string(signature.negative) + "," +
                    std::to_string(signature.zero) + ")";
  std::string shape;
  if (signature.zero == 0 && (signature.positive == 0 || signature.negative == 0)) {
    shape = "empty off k = 0";
  } else if (signature.zero == 0 && (signature.positive == 1 || signature.negative == 1)) {
    shape = "light cone";
  } else {
    shape = "quadric cone";
  }
  return shape + " " + quadratic().to_string() + " = 0, signature " + sig;
}

RVector IntegralCurve::point(const Rational& s) const {
  RVector p = x0;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += s * direction[i];
  return p;
}

IntegralCurve hamiltonian_curve(const CharacteristicSet& cs, const RVector& x0, const RVector& k0) {
  if (x0.size() != cs.metric.rows() || k0.size() != cs.metric.rows()) {
    throw DimensionError("curve data has wrong dimension");
  }
  bool nonzero = false;
  for (const auto& e : k0) nonzero = nonzero || sgn(e) != 0;
  if (!nonzero) throw Error("covector must be nonzero");
  if (!cs.contains(k0)) throw Error("covector " + to_string(k0) + " is not on the characteristic set");
  IntegralCurve c{x0, k0, cs.metric.apply(k0)};
  for (auto& d : c.direction) d *= 2;
  return c;
}

namespace {

std::map<Var, SymExpr> point_images(const RVector& x, const RVector& k) {
  std::map<Var, SymExpr> images;
  for (std::size_t j = 0; j < x.size(); ++j) images.emplace(Var::x(j + 1), SymExpr(Complex(x[j])));
  for (std::size_t j = 0; j < k.size(); ++j) images.emplace(Var::k(j + 1), SymExpr(Complex(k[j])));
  return images;
}

Matrix<SymExpr> at_point(const Matrix<SymExpr>& m, const RVector& x, const RVector& k) {
  auto images = point_images(x, k);
  return m.map([&](const SymExpr& e) { return e.substitute(images); });
}

Matrix<SymExpr> kernel_matrix(const std::vector<CVector>& kernel) {
  Matrix<SymExpr> kmat(kernel.front().size(), kernel.size());
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    for (std::size_t i = 0; i < kernel[j].size(); ++i) kmat(i, j) = SymExpr(kernel[j][i]);
  }
  return kmat;
}

}  // namespace

std::vector<CVector> kernel_bundle(const SuperOperator& p, const IntegralCurve& curve) {
  Matrix<SymExpr> sigma = at_point(principal_symbol(p).matrix(), curve.x0, curve.k0);
  Matrix<Complex> numeric(sigma.rows(), sigma.cols());
  for (std::size_t i = 0; i < sigma.rows(); ++i) {
    for (std::size_t j = 0; j < sigma.cols(); ++j) {
      auto v = sigma(i, j).constant_value();
      if (!v) throw Unsupported("principal symbol depends on parameters at the curve");
      numeric(i, j) = *v;
    }
  }
  auto basis = nullspace(numeric);
  if (basis.empty()) throw Error("principal symbol is invertible at " + to_string(curve.k0) + ": trivial kernel");
  return basis;
}

PartialConnection partial_connection(const HyperbolicSystem& system) {
  if (!system.p.constant_coefficients() || !system.p_tilde.constant_coefficients()) {
    throw Unsupported("partial connection requires constant coefficients");
  }
  PartialConnection pc;
  unsigned m = system.p.m();
  Matrix<SymExpr> sp = principal_symbol(system.p).matrix();
  Matrix<SymExpr> spt = principal_symbol(system.p_tilde).matrix();
  pc.bracket = poisson_bracket(spt, sp, m);
  pc.subprincipal = subprincipal_symbol(system.p).matrix();
  pc.coefficient = SymExpr(Complex(Rational(1, 2))) * pc.bracket + SymExpr(Complex::i()) * (spt * pc.subprincipal);
  Poly g = characteristic_set(system.q).quadratic();
  pc.reduced = Matrix<SymExpr>(pc.coefficient.rows(), pc.coefficient.cols());
  for (std::size_t i = 0; i < pc.coefficient.rows(); ++i) {
    for (std::size_t j = 0; j < pc.coefficient.cols(); ++j) {
      const SymExpr& e = pc.coefficient(i, j);
      if (e.is_zero()) continue;
      if (!e.is_polynomial()) throw Unsupported("connection entry is not polynomial");
      Poly r = divide_with_remainder(e.numerator(), g).second;
      if (r.is_zero()) pc.cone_entries.emplace_back(i, j);
      pc.reduced(i, j) = SymExpr(r);
    }
  }
  return pc;
}

Matrix<SymExpr> connection_at(const PartialConnection& pc, const IntegralCurve& curve) {
  return at_point(pc.reduced, curve.x0, curve.k0);
}

Matrix<SymExpr> reduced_action(const PartialConnection& pc, const IntegralCurve& curve,
                               const std::vector<CVector>& kernel) {
  Matrix<SymExpr> mat = connection_at(pc, curve);
  Matrix<SymExpr> kmat = kernel_matrix(kernel);
  Matrix<SymExpr> image = mat * kmat;
  Matrix<SymExpr> r(kernel.size(), kernel.size());
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    auto coords = solve(kmat, image.column(j));
    if (!coords) throw Error("connection does not preserve the kernel bundle");
    for (std::size_t i = 0; i < kernel.size(); ++i) r(i, j) = (*coords)[i];
  }
  return r;
}

HamiltonianOrbit hamiltonian_orbit(const HyperbolicSystem& system, const RVector& x0, const RVector& k0,
                                   const CVector& lambda0) {
  CharacteristicSet cs = characteristic_set(system.q);
  HamiltonianOrbit orbit;
  orbit.curve = hamiltonian_curve(cs, x0, k0);
  orbit.kernel = kernel_bundle(system.p, orbit.curve);
  bool nonzero = false;
  for (const auto& c : lambda0) nonzero = nonzero || !c.is_zero();
  if (!nonzero) throw Error("initial polarization must be nonzero");
  if (lambda0.size() != orbit.kernel.front().size()) throw DimensionError("initial polarization has wrong size");
  Matrix<Complex> kc(lambda0.size(), orbit.kernel.size());
  for (std::size_t j = 0; j < orbit.kernel.size(); ++j) {
    for (std::size_t i = 0; i < lambda0.size(); ++i) kc(i, j) = orbit.kernel[j][i];
  }
  auto a0 = solve(kc, lambda0);
  if (!a0) throw Error("initial polarization is not in the kernel of the principal symbol");

  PartialConnection pc = partial_connection(system);
  orbit.action = reduced_action(pc, orbit.curve, orbit.kernel);
  std::size_t r = orbit.kernel.size();
  SymExpr trace;
  for (std::size_t i = 0; i < r; ++i) trace += orbit.action(i, i);
  SymExpr rate = trace / SymExpr(static_cast<long>(r));
  Matrix<SymExpr> nil = orbit.action - rate * Matrix<SymExpr>::identity(r);
  Matrix<SymExpr> power = Matrix<SymExpr>::identity(r);
  for (std::size_t j = 0; j < r; ++j) power = power * nil;
  if (!power.is_zero()) throw Unsupported("reduced action is not scalar plus nilpotent");

  // a(s) = exp(-rate s) sum_j (-N s)^j / j! a0
  Matrix<SymExpr> kmat = kernel_matrix(orbit.kernel);
  SVector coeff(r);
  for (std::size_t i = 0; i < r; ++i) coeff[i] = SymExpr((*a0)[i]);
  orbit.section.rate = rate;
  for (std::size_t j = 0; j < r; ++j) {
    if (j > 0) {
      coeff = (-nil).apply(coeff);
      for (auto& e : coeff) e /= SymExpr(static_cast<long>(j));
    }
    bool zero = true;
    for (const auto& e : coeff) zero = zero && e.is_zero();
    if (zero) break;
    orbit.section.terms.push_back(kmat.apply(coeff));
  }
  return orbit;
}

bool section_solves_transport(const OrbitSection& section, const Matrix<SymExpr>& m_at_curve) {
  // Coefficient of s^j in p' - rate p + M p.
  std::size_t count = section.terms.size();
  for (std::size_t j = 0; j < count; ++j) {
    SVector lhs = m_at_curve.apply(section.terms[j]);
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      lhs[i] -= section.rate * section.terms[j][i];
      if (j + 1 < count) lhs[i] += SymExpr(static_cast<long>(j + 1)) * section.terms[j + 1][i];
      if (!lhs[i].is_zero()) return false;
    }
  }
  return true;
}

std::string OrbitSection::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (j) out += " + ";
    std::string v = "(";
    for (std::size_t i = 0; i < terms[j].size(); ++i) {
      if (i) v += ", ";
      v += terms[j][i].to_string();
    }
    v += ")";
    out += j == 0 ? v : "s^" + std::to_string(j) + "*" + v;
  }
  if (terms.empty()) out = "0";
  if (!rate.is_zero()) out = "exp(-(" + rate.to_string() + ")*s)*[" + out + "]";
  return out;
}

}  // namespace sml
