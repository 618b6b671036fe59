#include <algorithm>
#include <cstdlib>
#include <random>

#include "sml/error.hpp"
#include "sml/superop.hpp"

namespace sml {

std::uint64_t sampling_seed() {
  if (const char* env = std::getenv("SML_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return v;
  }
  return 1;
}

std::optional<Matrix<Rational>> quadratic_form_matrix(const Poly& q, unsigned m) {
  Matrix<Rational> g(m, m);
  for (const auto& [mono, c] : q.terms()) {
    if (!c.is_real() || mono.degree(VarKind::K) != 2 || mono.total_degree() != 2) return std::nullopt;
    const auto& f = mono.factors();
    unsigned i = f[0].first.index() - 1;
    if (i >= m) return std::nullopt;
    if (f.size() == 1) {
      g(i, i) = c.real();
    } else {
      unsigned j = f[1].first.index() - 1;
      if (j >= m) return std::nullopt;
      Rational half = c.real() / 2;
      g(i, j) = half;
      g(j, i) = half;
    }
  }
  return g;
}

Inertia inertia(Matrix<Rational> g) {
  std::size_t n = g.rows();
  Inertia out;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(g(i, i)) == 0) {
      std::size_t swap = n;
      for (std::size_t j = i + 1; j < n && swap == n; ++j) {
        if (sgn(g(j, j)) != 0) swap = j;
      }
      if (swap != n) {
        for (std::size_t t = 0; t < n; ++t) std::swap(g(i, t), g(swap, t));
        for (std::size_t t = 0; t < n; ++t) std::swap(g(t, i), g(t, swap));
      } else {
        std::size_t partner = n;
        for (std::size_t j = i + 1; j < n && partner == n; ++j) {
          if (sgn(g(i, j)) != 0) partner = j;
        }
        if (partner == n) {
          ++out.zero;
          continue;
        }
        // Congruence e_i -> e_i + e_partner makes the diagonal 2 g(i,partner) != 0.
        for (std::size_t t = 0; t < n; ++t) g(i, t) += g(partner, t);
        for (std::size_t t = 0; t < n; ++t) g(t, i) += g(t, partner);
      }
    }
    Rational p = g(i, i);
    if (sgn(p) > 0) {
      ++out.positive;
    } else {
      ++out.negative;
    }
    for (std::size_t r = i + 1; r < n; ++r) {
      if (sgn(g(r, i)) == 0) continue;
      Rational f = g(r, i) / p;
      for (std::size_t t = i; t < n; ++t) g(r, t) -= f * g(i, t);
      for (std::size_t t = i; t < n; ++t) g(t, r) = g(r, t);
    }
  }
  return out;
}

namespace {

enum class Shape { NonVanishing, Lorentzian, Other };

struct FactorShape {
  Shape shape = Shape::Other;
  std::optional<Poly> quadratic;
  /// Rational k != 0 at which the polynomial vanishes, found exactly.
  std::optional<RVector> zero;
};

RVector kernel_vector(const Matrix<Rational>& a) {
  auto basis = nullspace(a);
  return basis.front();
}

/// Shape of an x-independent polynomial that is homogeneous in k.
FactorShape classify(const Poly& p, unsigned m) {
  FactorShape out;
  if (p.is_constant()) {
    out.shape = Shape::NonVanishing;
    return out;
  }
  if (m == 1) {
    out.shape = Shape::NonVanishing;  // c * k1^d
    return out;
  }
  auto sf = square_free(p);
  for (const auto& [f, e] : sf.factors) {
    bool real = true;
    for (const auto& t : f.terms()) real = real && t.second.is_real();
    if (!real) continue;
    if (f.total_degree() == 1) {
      Matrix<Rational> row(1, m);
      for (const auto& [mono, c] : f.terms()) row(0, mono.factors()[0].first.index() - 1) = c.real();
      out.zero = kernel_vector(row);
      return out;
    }
  }
  if (sf.factors.size() != 1) return out;
  const Poly& q = sf.factors.front().first;
  auto g = quadratic_form_matrix(q, m);
  if (!g) return out;
  Inertia in = inertia(*g);
  if (in.zero > 0) {
    out.zero = kernel_vector(*g);
    return out;
  }
  if (in.positive == m || in.negative == m) {
    out.shape = Shape::NonVanishing;
  } else if (in.positive == 1 || in.negative == 1) {
    out.shape = Shape::Lorentzian;
    out.quadratic = q;
  }
  return out;
}

std::string factored_text(const Poly& p) {
  if (p.is_constant()) return p.to_string();
  auto sf = square_free(p);
  std::string out = sf.unit.to_string();
  for (const auto& [f, e] : sf.factors) {
    out += " * (" + f.to_string() + ")";
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::map<Var, Complex> point_map(const RVector& x, const RVector& k) {
  std::map<Var, Complex> pt;
  for (std::size_t j = 0; j < x.size(); ++j) pt.emplace(Var::x(j + 1), Complex(x[j]));
  for (std::size_t j = 0; j < k.size(); ++j) pt.emplace(Var::k(j + 1), Complex(k[j]));
  return pt;
}

bool is_witness(const SymExpr& det, const RVector& x, const RVector& k) {
  auto pt = point_map(x, k);
  return det.numerator().evaluate(pt).is_zero() && !det.denominator().evaluate(pt).is_zero();
}

/// Integer vectors with entries in [-r, r], smallest l1 norm first.
std::vector<RVector> grid(unsigned m, long r, bool skip_zero) {
  std::vector<std::vector<long>> pts{{}};
  for (unsigned j = 0; j < m; ++j) {
    std::vector<std::vector<long>> next;
    for (const auto& p : pts) {
      for (long v = -r; v <= r; ++v) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  auto norm = [](const std::vector<long>& v) {
    long s = 0;
    for (long e : v) s += std::labs(e);
    return s;
  };
  std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return norm(a) < norm(b); });
  std::vector<RVector> out;
  for (const auto& p : pts) {
    if (skip_zero && norm(p) == 0) continue;
    RVector v;
    for (long e : p) v.emplace_back(e);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

EllipticityVerdict ellipticity_verdict(const SuperSymbol& s, std::uint64_t seed) {
  unsigned m = s.m();
  EllipticityVerdict v;
  v.determinant = determinant(s.matrix());
  const SymExpr& det = v.determinant;
  RVector origin(m, Rational(0));
  if (det.is_zero()) {
    v.factored = "0";
    v.tag = Verdict::Degenerate;
    RVector e1(m, Rational(0));
    if (m > 0) e1[0] = 1;
    v.witness = std::make_pair(origin, e1);
    v.reason = "determinant vanishes identically";
    return v;
  }
  v.factored = factored_text(det.numerator());
  if (!det.is_polynomial()) v.factored = "(" + v.factored + ") / (" + factored_text(det.denominator()) + ")";
  if (m == 0) {
    v.tag = Verdict::Elliptic;
    v.reason = "nonzero constant determinant";
    return v;
  }
  if (det.depends_on(VarKind::Param)) {
    v.reason = "determinant depends on symbolic parameters";
    return v;
  }

  if (!det.depends_on(VarKind::X)) {
    FactorShape num = classify(det.numerator(), m);
    FactorShape den = classify(det.denominator(), m);
    if (num.shape == Shape::NonVanishing && den.shape == Shape::NonVanishing) {
      v.tag = Verdict::Elliptic;
      v.reason = m == 1 ? "determinant is c*k^d" : "determinant is a power of a definite quadratic form";
      return v;
    }
    if (num.shape == Shape::Lorentzian && den.shape == Shape::NonVanishing) {
      v.tag = Verdict::Hyperbolic;
      v.quadratic_form = num.quadratic;
      v.reason = "determinant is a power of a Lorentzian quadratic form";
      return v;
    }
    if (num.shape == Shape::NonVanishing && den.shape == Shape::Lorentzian) {
      v.tag = Verdict::Hyperbolic;
      v.quadratic_form = den.quadratic;
      v.reason = "determinant is a power of a Lorentzian quadratic form";
      return v;
    }
    if (num.zero && is_witness(det, origin, *num.zero)) {
      v.tag = Verdict::Degenerate;
      v.witness = std::make_pair(origin, *num.zero);
      v.reason = "determinant has a real linear or degenerate quadratic factor";
      return v;
    }
  }

  // Deterministic grid, then seeded samples. Neither can certify ellipticity.
  bool x_dependent = det.depends_on(VarKind::X);
  auto ks = grid(m, 2, true);
  auto xs = x_dependent ? grid(m, 2, false) : std::vector<RVector>{origin};
  for (const auto& x : xs) {
    for (const auto& k : ks) {
      if (is_witness(det, x, k)) {
        v.tag = Verdict::Degenerate;
        v.witness = std::make_pair(x, k);
        v.reason = "determinant vanishes at a grid point";
        return v;
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-6, 6);
  for (int sample = 0; sample < 256; ++sample) {
    RVector x(m);
    RVector k(m);
    for (auto& e : x) e = x_dependent ? coord(rng) : 0;
    bool nonzero = false;
    for (auto& e : k) {
      e = coord(rng);
      nonzero = nonzero || sgn(e) != 0;
    }
    if (!nonzero) continue;
    if (is_witness(det, x, k)) {
      v.tag = Verdict::Degenerate;
      v.witness = std::make_pair(x, k);
      v.reason = "determinant vanishes at a sampled point (seed " + std::to_string(seed) + ")";
      return v;
    }
  }
  v.reason = "no exact classification; no zero on the grid {-2..2}^m or 256 samples in {-6..6}^m (seed " +
             std::to_string(seed) + ")";
  return v;
}

}  // namespace sml
