#include "sml/wavefront.hpp"

#include <algorithm>

namespace sml {

namespace {

bool subspace_contains(const LinearSubspace& big, const LinearSubspace& small) {
  return small.intersect(big) == small;
}

void push_unique(std::vector<Stratum>& out, const Stratum& s) {
  if (s.is_empty()) return;
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

Stratum atom_stratum(unsigned m, const CatalogAtom& atom) {
  if (atom.kind == CatalogKind::DeltaPoint) {
    return {AffineSubspace::point(atom.point), LinearSubspace::full(m)};
  }
  Matrix<Rational> e(1, m);
  for (unsigned j = 0; j < m; ++j) e(0, j) = atom.normal[j];
  return {AffineSubspace::solutions(e, {atom.offset}), LinearSubspace::span(m, {atom.normal})};
}

std::vector<SymExpr> row_of(const Matrix<SymExpr>& a, std::size_t i) {
  std::vector<SymExpr> r(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) r[j] = a(i, j);
  return r;
}

Matrix<SymExpr> from_rows(const std::vector<std::vector<SymExpr>>& rows, std::size_t cols) {
  Matrix<SymExpr> out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

Matrix<SymExpr> stack(const Matrix<SymExpr>& a, const Matrix<SymExpr>& b) {
  std::vector<std::vector<SymExpr>> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(row_of(a, i));
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(row_of(b, i));
  return from_rows(rows, a.cols());
}

Matrix<SymExpr> substitute(const Matrix<SymExpr>& a, const std::map<Var, SymExpr>& images) {
  return a.map([&](const SymExpr& e) { return e.substitute(images); });
}

/// Generic point of the stratum: x = p + sum t_i d_i, k = sum s_j b_j.
std::map<Var, SymExpr> generic_point(const Stratum& s) {
  unsigned m = s.base.ambient();
  std::vector<SymExpr> x(m), k(m, SymExpr(0));
  RVector p = s.base.base_point();
  for (unsigned j = 0; j < m; ++j) x[j] = SymExpr(Poly(Complex(p[j])));
  auto dirs = s.base.direction().basis_vectors();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    SymExpr t = SymExpr::variable(Var::param("__t" + std::to_string(i + 1)));
    for (unsigned j = 0; j < m; ++j) x[j] += SymExpr(Poly(Complex(dirs[i][j]))) * t;
  }
  auto covs = s.covectors.basis_vectors();
  for (std::size_t i = 0; i < covs.size(); ++i) {
    SymExpr t = SymExpr::variable(Var::param("__s" + std::to_string(i + 1)));
    for (unsigned j = 0; j < m; ++j) k[j] += SymExpr(Poly(Complex(covs[i][j]))) * t;
  }
  std::map<Var, SymExpr> images;
  for (unsigned j = 0; j < m; ++j) {
    images.emplace(Var::x(j + 1), x[j]);
    images.emplace(Var::k(j + 1), k[j]);
  }
  return images;
}

std::size_t generic_rank(const SWFPiece& piece) {
  if (piece.constraints.rows() == 0) return 0;
  return rank(substitute(piece.constraints, generic_point(piece.stratum)));
}

void sort_pieces(std::vector<SWFPiece>& pieces) {
  std::stable_sort(pieces.begin(), pieces.end(), [](const SWFPiece& a, const SWFPiece& b) {
    return a.stratum.to_string() < b.stratum.to_string();
  });
}

}  // namespace

bool Stratum::meets(const Stratum& o) const { return !intersect(o).is_empty(); }

Stratum Stratum::intersect(const Stratum& o) const {
  return {base.intersect(o.base), covectors.intersect(o.covectors)};
}

bool Stratum::contains(const Stratum& o) const {
  if (o.is_empty()) return true;
  if (is_empty()) return false;
  return base.contains(o.base.base_point()) && subspace_contains(base.direction(), o.base.direction()) &&
         subspace_contains(covectors, o.covectors);
}

std::string Stratum::to_string() const { return base.to_string() + " x " + covectors.to_string(); }

std::string WFSetDescriptor::to_string() const {
  std::string out;
  for (const auto& s : strata) {
    if (!out.empty()) out += " u ";
    out += s.to_string();
  }
  return (out.empty() ? std::string("{}") : out) + (exact ? "" : " (upper bound)");
}

WFSetDescriptor wavefront(const CatalogSum& u) {
  WFSetDescriptor wf;
  // Atoms sharing a locus merge: a nonzero combination of conormal terms on
  // one hyperplane (or point) still has the full conormal set.
  for (const auto& kv : u.atoms()) push_unique(wf.strata, atom_stratum(u.dim(), kv.first));
  for (std::size_t i = 0; i < wf.strata.size(); ++i) {
    for (std::size_t j = i + 1; j < wf.strata.size(); ++j) {
      if (wf.strata[i].meets(wf.strata[j])) wf.exact = false;
    }
  }
  return wf;
}

std::map<MultiIndex, WFSetDescriptor> component_wf(const SuperDistribution& u) {
  std::map<MultiIndex, WFSetDescriptor> out;
  for (const auto& [i, c] : u.components()) out.emplace(i, wavefront(c));
  return out;
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Exact: return "exact";
    case BoundKind::UpperBound: return "upper-bound";
    case BoundKind::Image: return "image";
  }
  return "";
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
    case Tri::Unknown: return "unknown";
  }
  return "";
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Admissible: return "admissible";
    case Admissibility::NotGuaranteed: return "not-guaranteed";
    case Admissibility::Unknown: return "unknown";
  }
  return "";
}

Matrix<SymExpr> canonical_constraints(const Matrix<SymExpr>& c, std::size_t columns) {
  if (c.rows() == 0) return Matrix<SymExpr>(0, columns);
  auto e = row_reduce(c);
  std::vector<std::vector<SymExpr>> rows;
  for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) rows.push_back(row_of(e.reduced, i));
  return from_rows(rows, columns);
}

bool operator==(const SuperWFSet& a, const SuperWFSet& b) {
  if (a.m != b.m || a.n != b.n || a.kind != b.kind || a.pieces.size() != b.pieces.size()) return false;
  for (std::size_t i = 0; i < a.pieces.size(); ++i) {
    if (!(a.pieces[i].stratum == b.pieces[i].stratum)) return false;
    if (!(a.pieces[i].constraints == b.pieces[i].constraints)) return false;
  }
  return true;
}

std::string SuperWFSet::to_string() const {
  const auto& idx = all_multi_indices(n);
  std::string out = "sWF (" + sml::to_string(kind) + ")";
  if (pieces.empty()) return out + ": zero polarization only";
  for (const auto& p : pieces) {
    out += "\n  " + p.stratum.to_string() + ":";
    if (p.constraints.rows() == 0) out += " unconstrained";
    for (std::size_t r = 0; r < p.constraints.rows(); ++r) {
      std::string eq;
      for (std::size_t j = 0; j < p.constraints.cols(); ++j) {
        if (p.constraints(r, j).is_zero()) continue;
        if (!eq.empty()) eq += " + ";
        eq += "(" + p.constraints(r, j).to_string() + ")*l[" + idx[j].to_string() + "]";
      }
      out += (r ? ", " : " ") + eq + " = 0";
    }
  }
  return out;
}

SuperDistribution apply_op(const SuperOperator& a, const SuperDistribution& u) {
  if (a.m() != u.m() || a.n() != u.n()) throw DimensionError("operator and superdistribution shapes differ");
  SuperDistribution out(u.m(), u.n());
  for (const auto& [slot, op] : a.components()) {
    auto it = u.components().find(slot.second);
    if (it == u.components().end()) continue;
    out.add(slot.first, apply(op, it->second));
  }
  return out;
}

SuperWFSet swf_upper_bound(const SuperDistribution& u, const std::vector<SuperOperator>& annihilators) {
  std::size_t dim = std::size_t{1} << u.n();
  Matrix<SymExpr> constraints(0, dim);
  for (const auto& a : annihilators) {
    SuperDistribution au = apply_op(a, u);
    if (!au.is_smooth()) {
      SuperDistribution residue(u.m(), u.n());
      for (const auto& [i, c] : au.components()) {
        residue.add(i, c - CatalogSum::smooth(u.m(), c.smooth_part()));
      }
      std::string name;
      for (const auto& [slot, op] : a.components()) {
        if (!name.empty()) name += ", ";
        name += "(" + slot.first.to_string() + "|" + slot.second.to_string() + "): " + op.to_string();
      }
      throw NotSmoothing("{" + name + "}", residue);
    }
    constraints = stack(constraints, principal_symbol(a).matrix());
  }
  constraints = canonical_constraints(constraints, dim);

  SuperWFSet out{u.m(), u.n(), {}, BoundKind::UpperBound};
  std::vector<Stratum> base;
  for (const auto& [i, wf] : component_wf(u)) {
    for (const auto& s : wf.strata) push_unique(base, s);
  }
  for (const auto& s : base) out.pieces.push_back({s, constraints});
  sort_pieces(out.pieces);
  return out;
}

std::vector<SuperOperator> auto_annihilators(const SuperDistribution& u) {
  unsigned m = u.m();
  unsigned n = u.n();
  std::vector<SuperOperator> out;
  const auto& idx = all_multi_indices(n);
  for (const auto& i : idx) {
    if (!u.component(i).is_smooth()) continue;
    SuperOperator a(m, n, 0);
    a.set(i, i, DiffOp(m, SymExpr(1)));
    out.push_back(std::move(a));
  }
  // A lower component u_I may cancel u_J = c d^alpha u_I when the order-0 slot
  // (J, I) allows |alpha| <= (|J| - |I|) / 2.
  for (const auto& j : idx) {
    const CatalogSum uj = u.component(j);
    if (uj.is_smooth()) continue;
    for (const auto& i : idx) {
      if (i == j || i.degree() > j.degree() || (j.degree() - i.degree()) % 2 != 0) continue;
      if (i.degree() == j.degree() && !(i < j)) continue;
      const CatalogSum ui = u.component(i);
      if (ui.is_smooth()) continue;
      unsigned bound = (j.degree() - i.degree()) / 2;
      std::vector<DerivIndex> alphas{DerivIndex(m, 0)};
      for (unsigned d = 1; d <= bound; ++d) {
        std::vector<DerivIndex> next;
        for (const auto& al : alphas) {
          if (total_order(al) != d - 1) continue;
          for (unsigned v = 0; v < m; ++v) {
            DerivIndex b = al;
            ++b[v];
            if (std::find(next.begin(), next.end(), b) == next.end()) next.push_back(b);
          }
        }
        alphas.insert(alphas.end(), next.begin(), next.end());
      }
      for (const auto& alpha : alphas) {
        auto c = proportional(uj, ui.derivative(alpha));
        if (!c) continue;
        SuperOperator a(m, n, 0);
        a.set(j, j, DiffOp(m, SymExpr(1)));
        a.set(j, i, DiffOp::derivative(alpha, SymExpr(-*c)));
        out.push_back(std::move(a));
        break;
      }
    }
  }
  return out;
}

ProjectionReport projection_check(const SuperWFSet& swf, const SuperDistribution& u) {
  ProjectionReport report;
  for (const auto& [i, wf] : component_wf(u)) {
    if (!wf.exact) {
      report.detail = "component " + i.to_string() + " has only an upper-bound wavefront set";
      return report;
    }
    for (const auto& s : wf.strata) push_unique(report.components, s);
  }
  std::size_t dim = std::size_t{1} << swf.n;
  for (const auto& piece : swf.pieces) {
    if (generic_rank(piece) < dim) push_unique(report.projected, piece.stratum);
  }
  auto key = [](std::vector<Stratum> v) {
    std::vector<std::string> k;
    for (const auto& s : v) k.push_back(s.to_string());
    std::sort(k.begin(), k.end());
    return k;
  };
  bool equal = key(report.projected) == key(report.components);
  report.status = equal ? Tri::Holds : Tri::Fails;
  report.detail = equal ? "projection matches the union of component wavefront sets"
                        : "projection differs from the union of component wavefront sets";
  return report;
}

SuperWFSet push_through_symbol(const SuperWFSet& swf, const SuperSymbol& s, bool elliptic) {
  std::size_t dim = std::size_t{1} << swf.n;
  if (s.m() != swf.m || s.n() != swf.n) throw DimensionError("symbol and sWF shapes differ");
  const Matrix<SymExpr>& sm = s.matrix();
  auto inv = determinant(sm).is_zero() ? std::nullopt : inverse(sm);
  SuperWFSet out{swf.m, swf.n, {}, elliptic ? swf.kind : BoundKind::Image};
  for (const auto& piece : swf.pieces) {
    Matrix<SymExpr> c;
    if (inv) {
      c = piece.constraints.rows() ? piece.constraints * *inv : Matrix<SymExpr>(0, dim);
    } else {
      // Image of the fiber: span of S v over a kernel basis, described by its annihilator.
      std::vector<std::vector<SymExpr>> image;
      for (const auto& v : nullspace(piece.constraints.rows() ? piece.constraints : Matrix<SymExpr>(0, dim))) {
        auto w = sm.apply(v);
        if (std::any_of(w.begin(), w.end(), [](const SymExpr& e) { return !e.is_zero(); })) image.push_back(w);
      }
      if (image.empty()) {
        c = Matrix<SymExpr>::identity(dim);
      } else {
        c = from_rows(nullspace(from_rows(image, dim)), dim);
      }
    }
    out.pieces.push_back({piece.stratum, canonical_constraints(c, dim)});
  }
  return out;
}

bool swf_contains(const SuperWFSet& big, const SuperWFSet& small) {
  if (big.m != small.m || big.n != small.n) return false;
  std::size_t dim = std::size_t{1} << small.n;
  for (const auto& piece : small.pieces) {
    if (generic_rank(piece) == dim) continue;
    auto kernel = nullspace(piece.constraints.rows() ? piece.constraints : Matrix<SymExpr>(0, dim));
    bool covered = false;
    for (const auto& b : big.pieces) {
      if (!b.stratum.contains(piece.stratum)) continue;
      bool fibers = true;
      for (const auto& v : kernel) {
        auto w = b.constraints.rows() ? b.constraints.apply(v) : std::vector<SymExpr>{};
        auto at = generic_point(piece.stratum);
        for (const auto& e : w) {
          if (!e.substitute(at).is_zero()) fibers = false;
        }
      }
      if (fibers) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

SuperWFSet transform(const SuperWFSet& swf, const SuperMorphism& chi) {
  if (chi.target_m() != swf.m || chi.target_n() != swf.n) throw DimensionError("morphism target does not match sWF");
  if (chi.source_m() != chi.target_m() || chi.source_n() != chi.target_n()) {
    throw Unsupported("transform needs a morphism between equal dimensions");
  }
  auto body = affine_body(chi);
  if (!body) throw Unsupported("transform needs an affine body map");
  auto a_inv = inverse(body->linear);
  if (!a_inv) throw SingularError("body map is not invertible");
  unsigned m = swf.m;
  std::size_t dim = std::size_t{1} << swf.n;

  // k' = A^{-T} k
  Matrix<Rational> a_inv_t = a_inv->transpose();
  std::map<Var, SymExpr> at_k;
  for (unsigned i = 0; i < m; ++i) {
    Poly kp;
    for (unsigned j = 0; j < m; ++j) kp += Poly::variable(Var::k(j + 1)) * Complex(a_inv_t(i, j));
    at_k.emplace(Var::k(i + 1), SymExpr(kp));
  }
  std::map<Var, SymExpr> at_both = at_k;
  auto images = chi.body_map();
  for (unsigned j = 0; j < m; ++j) at_both.emplace(Var::x(j + 1), images[j]);

  auto p_inv = inverse(substitute(polarization_map(chi), at_k));
  if (!p_inv) throw SingularError("polarization map is not invertible");

  SuperWFSet out{m, swf.n, {}, swf.kind};
  for (const auto& piece : swf.pieces) {
    Stratum s{piece.stratum.base.preimage(body->linear, body->offset),
              piece.stratum.covectors.image(body->linear.transpose())};
    Matrix<SymExpr> c = piece.constraints.rows() ? substitute(piece.constraints, at_both) * *p_inv
                                                 : Matrix<SymExpr>(0, dim);
    out.pieces.push_back({s, canonical_constraints(c, dim)});
  }
  sort_pieces(out.pieces);
  return out;
}

PullbackVerdict pullback_check(const SuperMorphism& chi, const SuperDistribution& u) {
  if (u.m() != chi.target_m() || u.n() != chi.target_n()) throw DimensionError("distribution does not live on the target");
  PullbackVerdict out;
  auto ns = normal_set(chi);
  if (!ns.affine) {
    out.reason = "body map is not affine; normal set intersection is not decided";
    return out;
  }
  auto data = factorize(chi);
  bool constant = true;
  for (const auto& [slot, terms] : data.dchi) {
    for (const auto& [alpha, c] : terms) {
      if (!c.is_constant()) constant = false;
    }
  }
  // D^chi u on V, component by component over the source generators.
  std::map<MultiIndex, WFSetDescriptor> wf;
  SuperDistribution reduced(u.m(), chi.source_n());
  for (const auto& [slot, terms] : data.dchi) {
    const auto& [j, i] = slot;
    CatalogSum ui = u.component(i);
    if (ui.is_zero()) continue;
    for (const auto& [alpha, c] : terms) {
      if (c.is_zero()) continue;
      CatalogSum d = ui.derivative(alpha);
      if (constant) {
        reduced.add(j, *c.constant_value() * d);
      } else {
        // Smooth coefficients never enlarge the wavefront set.
        for (const auto& s : wavefront(d).strata) push_unique(wf[j].strata, s);
        wf[j].exact = false;
      }
    }
  }
  if (constant) {
    wf = component_wf(reduced);
    out.reduced = reduced;
  }
  Stratum normal{ns.image, ns.covectors};
  for (const auto& [j, desc] : wf) {
    for (const auto& s : desc.strata) {
      Stratum hit = s.intersect(normal);
      if (hit.is_empty()) continue;
      out.verdict = Admissibility::NotGuaranteed;
      out.witness = PullbackWitness{j, hit.base.base_point(), hit.covectors.basis_vectors().front()};
      out.reason = "WF(D^chi u)_" + j.to_string() + " meets the normal set";
      return out;
    }
  }
  out.verdict = Admissibility::Admissible;
  out.reason = ns.covectors.is_zero() ? "normal set is empty" : "WF(D^chi u) avoids the normal set";
  return out;
}

MultiplyVerdict multiply_check(const SuperDistribution& u, const SuperDistribution& v) {
  if (u.m() != v.m() || u.n() != v.n()) throw DimensionError("factors live on different superdomains");
  MultiplyVerdict out;
  auto wu = component_wf(u);
  auto wv = component_wf(v);
  for (const auto& [i, a] : wu) {
    for (const auto& [j, b] : wv) {
      if (reorder_sign(i, j) == 0) continue;
      for (const auto& s : a.strata) {
        for (const auto& t : b.strata) {
          // Covector loci are linear, so (x,-k) lies in t whenever (x,k) does.
          Stratum hit = s.intersect(t);
          if (hit.is_empty()) continue;
          out.verdict = Admissibility::NotGuaranteed;
          out.witness = MultiplyWitness{i, j, hit.base.base_point(), hit.covectors.basis_vectors().front()};
          out.reason = "WF(u_" + i.to_string() + ") and WF(v_" + j.to_string() + ") contain opposite covectors";
          return out;
        }
      }
    }
  }
  out.verdict = Admissibility::Admissible;
  SuperDistribution prod(u.m(), u.n());
  for (const auto& [i, a] : u.components()) {
    for (const auto& [j, b] : v.components()) {
      int sign = reorder_sign(i, j);
      if (sign == 0) continue;
      auto p = product(a, b);
      if (!p) {
        out.reason = "product of " + a.to_string() + " and " + b.to_string() + " is outside the catalog";
        return out;
      }
      prod.add(MultiIndex(u.n(), i.bits() | j.bits()), Complex(sign) * *p);
    }
  }
  out.product = prod;
  out.reason = "pair condition holds for every contributing component pair";
  return out;
}

}  // namespace sml
