#include "sml/geometry.hpp"

namespace sml {

namespace {

Matrix<Rational> rows_matrix(unsigned cols, const std::vector<RVector>& rows) {
  Matrix<Rational> m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("vector length mismatch");
    for (unsigned j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix<Rational> echelon_rows(const Matrix<Rational>& m) {
  auto e = row_reduce(m);
  Matrix<Rational> out(e.pivot_columns.size(), m.cols());
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = e.reduced(i, j);
  }
  return out;
}

Matrix<Rational> stack(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  Matrix<Rational> out(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  }
  return out;
}

}  // namespace

LinearSubspace LinearSubspace::zero(unsigned ambient) {
  LinearSubspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix<Rational>(0, ambient);
  return s;
}

LinearSubspace LinearSubspace::full(unsigned ambient) {
  LinearSubspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix<Rational>::identity(ambient);
  return s;
}

LinearSubspace LinearSubspace::span(unsigned ambient, const std::vector<RVector>& vectors) {
  LinearSubspace s;
  s.ambient_ = ambient;
  s.basis_ = echelon_rows(rows_matrix(ambient, vectors));
  return s;
}

LinearSubspace LinearSubspace::kernel(const Matrix<Rational>& a) {
  return span(static_cast<unsigned>(a.cols()), nullspace(a));
}

std::vector<RVector> LinearSubspace::basis_vectors() const {
  std::vector<RVector> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    RVector v(ambient_);
    for (unsigned j = 0; j < ambient_; ++j) v[j] = basis_(i, j);
    out.push_back(std::move(v));
  }
  return out;
}

Matrix<Rational> LinearSubspace::annihilator() const {
  return rows_matrix(ambient_, nullspace(basis_));
}

bool LinearSubspace::contains(const RVector& v) const {
  if (v.size() != ambient_) throw DimensionError("vector length mismatch");
  auto ann = annihilator();
  for (const auto& x : ann.apply(v)) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

LinearSubspace LinearSubspace::intersect(const LinearSubspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionError("subspaces of different spaces");
  return kernel(stack(annihilator(), o.annihilator()));
}

LinearSubspace LinearSubspace::sum(const LinearSubspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionError("subspaces of different spaces");
  LinearSubspace s;
  s.ambient_ = ambient_;
  s.basis_ = echelon_rows(stack(basis_, o.basis_));
  return s;
}

LinearSubspace LinearSubspace::image(const Matrix<Rational>& a) const {
  if (a.cols() != ambient_) throw DimensionError("linear map shape mismatch");
  std::vector<RVector> imgs;
  for (const auto& v : basis_vectors()) imgs.push_back(a.apply(v));
  return span(static_cast<unsigned>(a.rows()), imgs);
}

LinearSubspace LinearSubspace::preimage(const Matrix<Rational>& a) const {
  if (a.rows() != ambient_) throw DimensionError("linear map shape mismatch");
  return kernel(annihilator() * a);
}

std::string LinearSubspace::to_string() const {
  std::string out = "span{";
  auto vs = basis_vectors();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ", ";
    out += sml::to_string(vs[i]);
  }
  return out + "}";
}

AffineSubspace AffineSubspace::all(unsigned ambient) {
  AffineSubspace s;
  s.ambient_ = ambient;
  s.eq_ = Matrix<Rational>(0, ambient);
  return s;
}

AffineSubspace AffineSubspace::point(const RVector& p) {
  return solutions(Matrix<Rational>::identity(p.size()), p);
}

AffineSubspace AffineSubspace::solutions(const Matrix<Rational>& e, const RVector& c) {
  if (c.size() != e.rows()) throw DimensionError("equation count mismatch");
  AffineSubspace s;
  s.ambient_ = static_cast<unsigned>(e.cols());
  s.eq_ = e;
  s.rhs_ = c;
  s.canonicalize();
  return s;
}

AffineSubspace AffineSubspace::through(const RVector& p, const LinearSubspace& direction) {
  if (p.size() != direction.ambient()) throw DimensionError("point and direction mismatch");
  Matrix<Rational> ann = direction.annihilator();
  return solutions(ann, ann.apply(p));
}

void AffineSubspace::canonicalize() {
  Matrix<Rational> aug(eq_.rows(), ambient_ + 1);
  for (std::size_t i = 0; i < eq_.rows(); ++i) {
    for (unsigned j = 0; j < ambient_; ++j) aug(i, j) = eq_(i, j);
    aug(i, ambient_) = rhs_[i];
  }
  auto e = row_reduce(aug);
  if (!e.pivot_columns.empty() && e.pivot_columns.back() == ambient_) {
    empty_ = true;
    eq_ = Matrix<Rational>(0, ambient_);
    rhs_.clear();
    return;
  }
  std::size_t r = e.pivot_columns.size();
  eq_ = Matrix<Rational>(r, ambient_);
  rhs_.assign(r, Rational(0));
  for (std::size_t i = 0; i < r; ++i) {
    for (unsigned j = 0; j < ambient_; ++j) eq_(i, j) = e.reduced(i, j);
    rhs_[i] = e.reduced(i, ambient_);
  }
}

unsigned AffineSubspace::dim() const {
  return empty_ ? 0 : ambient_ - static_cast<unsigned>(eq_.rows());
}

LinearSubspace AffineSubspace::direction() const {
  return LinearSubspace::kernel(eq_);
}

RVector AffineSubspace::base_point() const {
  if (empty_) throw Error("empty affine subspace has no point");
  auto x = solve(eq_, rhs_);
  return *x;
}

bool AffineSubspace::contains(const RVector& p) const {
  if (p.size() != ambient_) throw DimensionError("point dimension mismatch");
  if (empty_) return false;
  return eq_.apply(p) == rhs_;
}

AffineSubspace AffineSubspace::intersect(const AffineSubspace& o) const {
  if (o.ambient_ != ambient_) throw DimensionError("subspaces of different spaces");
  if (empty_) return *this;
  if (o.empty_) return o;
  RVector c = rhs_;
  c.insert(c.end(), o.rhs_.begin(), o.rhs_.end());
  return solutions(stack(eq_, o.eq_), c);
}

AffineSubspace AffineSubspace::preimage(const Matrix<Rational>& a, const RVector& b) const {
  if (a.rows() != ambient_ || b.size() != ambient_) throw DimensionError("affine map shape mismatch");
  if (empty_) {
    AffineSubspace s = all(static_cast<unsigned>(a.cols()));
    s.empty_ = true;
    return s;
  }
  RVector c = rhs_;
  RVector eb = eq_.apply(b);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= eb[i];
  return solutions(eq_ * a, c);
}

AffineSubspace AffineSubspace::image(const Matrix<Rational>& a, const RVector& b) const {
  if (a.cols() != ambient_ || b.size() != a.rows()) throw DimensionError("affine map shape mismatch");
  if (empty_) {
    AffineSubspace s = all(static_cast<unsigned>(a.rows()));
    s.empty_ = true;
    return s;
  }
  RVector p = a.apply(base_point());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += b[i];
  return through(p, direction().image(a));
}

std::string AffineSubspace::to_string() const {
  if (empty_) return "empty";
  if (eq_.rows() == 0) return "all";
  std::string out;
  for (std::size_t i = 0; i < eq_.rows(); ++i) {
    if (i) out += ", ";
    std::string lhs;
    for (unsigned j = 0; j < ambient_; ++j) {
      const Rational& a = eq_(i, j);
      if (sgn(a) == 0) continue;
      std::string var = "x" + std::to_string(j + 1);
      if (lhs.empty()) {
        lhs = a == 1 ? var : a == -1 ? "-" + var : sml::to_string(a) + "*" + var;
      } else if (sgn(a) > 0) {
        lhs += a == 1 ? " + " + var : " + " + sml::to_string(a) + "*" + var;
      } else {
        Rational na = -a;
        lhs += na == 1 ? " - " + var : " - " + sml::to_string(na) + "*" + var;
      }
    }
    out += lhs + " = " + sml::to_string(rhs_[i]);
  }
  return out;
}

std::string to_string(const RVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

}  // namespace sml
