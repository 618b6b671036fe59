#include "sml/superop.hpp"

#include "sml/error.hpp"

namespace sml {

Rational slot_bound(const MultiIndex& row, const MultiIndex& col, const Rational& order) {
  Rational b = Rational(static_cast<long>(row.degree()) - static_cast<long>(col.degree()), 2) + order;
  b.canonicalize();
  return b;
}

namespace {

/// Integer value of a nonnegative integral bound, else nullopt.
std::optional<unsigned> integral_bound(const Rational& b) {
  if (!is_integer(b) || sgn(b) < 0) return std::nullopt;
  return static_cast<unsigned>(b.get_num().get_ui());
}

std::optional<int> integer_value(const Rational& b) {
  if (!is_integer(b)) return std::nullopt;
  return static_cast<int>(b.get_num().get_si());
}

}  // namespace

SuperOperator::SuperOperator(unsigned m, unsigned n, Rational order) : m_(m), n_(n), order_(std::move(order)) {
  order_.canonicalize();
  if (n > MultiIndex::kMaxGenerators) throw DimensionError("too many odd generators");
}

SuperOperator SuperOperator::identity(unsigned m, unsigned n) {
  SuperOperator id(m, n, 0);
  for (const auto& i : all_multi_indices(n)) id.set(i, i, DiffOp(m, SymExpr(1)));
  return id;
}

void SuperOperator::set(const MultiIndex& row, const MultiIndex& col, const DiffOp& op) {
  if (row.n() != n_ || col.n() != n_) throw DimensionError("slot multi-index over wrong generator count");
  if (op.dim() != m_) throw DimensionError("component acts on the wrong base dimension");
  Slot slot{row, col};
  if (op.is_zero()) {
    components_.erase(slot);
    return;
  }
  Rational b = slot_bound(row, col, order_);
  auto bound = integral_bound(b);
  if (!bound) {
    throw OrderViolation("slot (" + row.to_string() + "|" + col.to_string() + ") has order bound " + to_string(b) +
                         " and must vanish");
  }
  if (op.order() > *bound) {
    throw OrderViolation("slot (" + row.to_string() + "|" + col.to_string() + ") has order " +
                         std::to_string(op.order()) + " above its bound " + std::to_string(*bound));
  }
  components_[slot] = op;
}

DiffOp SuperOperator::component(const MultiIndex& row, const MultiIndex& col) const {
  auto it = components_.find({row, col});
  return it == components_.end() ? DiffOp(m_) : it->second;
}

bool SuperOperator::constant_coefficients() const {
  for (const auto& [slot, op] : components_) {
    for (const auto& [alpha, c] : op.terms()) {
      if (c.depends_on(VarKind::X)) return false;
    }
  }
  return true;
}

Superfunction SuperOperator::apply(const Superfunction& f) const {
  if (f.n() != n_) throw DimensionError("superfunction over wrong generator count");
  Superfunction out(n_);
  for (const auto& [slot, op] : components_) {
    SymExpr fi = f.coefficient(slot.second);
    if (fi.is_zero()) continue;
    out.add(slot.first, op.apply(fi));
  }
  return out;
}

SuperOperator SuperOperator::substitute(const std::map<Var, SymExpr>& images) const {
  SuperOperator out(m_, n_, order_);
  for (const auto& [slot, op] : components_) out.set(slot.first, slot.second, op.substitute(images));
  return out;
}

SuperSymbol::SuperSymbol(unsigned m, unsigned n, Rational order, Matrix<SymExpr> entries)
    : m_(m), n_(n), order_(std::move(order)), entries_(std::move(entries)) {
  order_.canonicalize();
  std::size_t size = std::size_t{1} << n;
  if (entries_.rows() != size || entries_.cols() != size) throw DimensionError("symbol matrix has wrong size");
  const auto& idx = all_multi_indices(n);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const SymExpr& e = entries_(r, c);
      if (e.is_zero()) continue;
      auto degree = integer_value(slot_bound(idx[r], idx[c], order_));
      if (!degree || !k_homogeneity(e).is_degree(*degree)) {
        throw OrderViolation("symbol entry (" + idx[r].to_string() + "|" + idx[c].to_string() +
                             ") is not homogeneous of degree " + to_string(slot_bound(idx[r], idx[c], order_)));
      }
    }
  }
}

SuperSymbol SuperSymbol::identity(unsigned m, unsigned n) {
  return SuperSymbol(m, n, 0, Matrix<SymExpr>::identity(std::size_t{1} << n));
}

SymExpr SuperSymbol::entry(const MultiIndex& row, const MultiIndex& col) const {
  if (row.n() != n_ || col.n() != n_) throw DimensionError("slot multi-index over wrong generator count");
  return entries_(block_position(row), block_position(col));
}

SymExpr diff_op_principal_symbol(const DiffOp& op, const Rational& order) {
  if (op.is_zero()) return SymExpr();
  auto d = integral_bound(order);
  if (!d || op.order() > *d) {
    throw OrderViolation("operator of order " + std::to_string(op.order()) + " exceeds requested order " +
                         to_string(order));
  }
  return op.symbol_part(*d);
}

SymExpr diff_op_subprincipal_symbol(const DiffOp& op, const Rational& order) {
  if (op.is_zero()) return SymExpr();
  SymExpr top = diff_op_principal_symbol(op, order);
  auto d = *integral_bound(order);
  SymExpr next = d >= 1 ? op.symbol_part(d - 1) : SymExpr();
  SymExpr correction;
  for (unsigned mu = 1; mu <= op.dim(); ++mu) {
    correction += top.derivative(Var::k(mu)).derivative(Var::x(mu));
  }
  // next - (1/(2i)) correction = next + (i/2) correction
  return next + SymExpr(Complex(0, Rational(1, 2))) * correction;
}

namespace {

template <class F>
SuperSymbol slotwise_symbol(const SuperOperator& a, const Rational& order, F f) {
  const auto& idx = all_multi_indices(a.n());
  Matrix<SymExpr> entries(idx.size(), idx.size());
  for (const auto& [slot, op] : a.components()) {
    entries(block_position(slot.first), block_position(slot.second)) =
        f(op, slot_bound(slot.first, slot.second, a.order()));
  }
  return SuperSymbol(a.m(), a.n(), order, std::move(entries));
}

void same_shape(unsigned m1, unsigned n1, unsigned m2, unsigned n2) {
  if (m1 != m2 || n1 != n2) throw DimensionError("operands over different superdomains");
}

}  // namespace

SuperSymbol principal_symbol(const SuperOperator& a) {
  return slotwise_symbol(a, a.order(), diff_op_principal_symbol);
}

SuperSymbol subprincipal_symbol(const SuperOperator& a) {
  return slotwise_symbol(a, a.order() - 1, diff_op_subprincipal_symbol);
}

SuperSymbol compose_symbols(const SuperSymbol& b, const SuperSymbol& a) {
  same_shape(b.m(), b.n(), a.m(), a.n());
  return SuperSymbol(a.m(), a.n(), a.order() + b.order(), b.matrix() * a.matrix());
}

SuperOperator compose_ops(const SuperOperator& b, const SuperOperator& a) {
  same_shape(b.m(), b.n(), a.m(), a.n());
  SuperOperator out(a.m(), a.n(), a.order() + b.order());
  std::map<Slot, DiffOp> acc;
  for (const auto& [sb, opb] : b.components()) {
    for (const auto& [sa, opa] : a.components()) {
      if (!(sb.second == sa.first)) continue;
      Slot s{sb.first, sa.second};
      auto [it, inserted] = acc.try_emplace(s, DiffOp(a.m()));
      it->second += opb * opa;
    }
  }
  for (const auto& [s, op] : acc) out.set(s.first, s.second, op);
  return out;
}

SuperSymbol symbol_inverse(const SuperSymbol& s) {
  auto inv = inverse(s.matrix());
  if (!inv) throw SingularError("super principal symbol has identically vanishing determinant");
  return SuperSymbol(s.m(), s.n(), -s.order(), std::move(*inv));
}

Matrix<SymExpr> poisson_bracket(const Matrix<SymExpr>& a, const Matrix<SymExpr>& b, unsigned m) {
  if (a.cols() != b.rows()) throw DimensionError("Poisson bracket shape mismatch");
  auto d = [](const Matrix<SymExpr>& mat, Var v) { return mat.map([v](const SymExpr& e) { return e.derivative(v); }); };
  Matrix<SymExpr> out(a.rows(), b.cols());
  for (unsigned mu = 1; mu <= m; ++mu) {
    Var k = Var::k(mu);
    Var x = Var::x(mu);
    out = out + d(a, k) * d(b, x) - d(a, x) * d(b, k);
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Elliptic:
      return "Elliptic";
    case Verdict::Hyperbolic:
      return "Hyperbolic";
    case Verdict::Degenerate:
      return "Degenerate";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

}  // namespace sml
