#include <algorithm>
#include <functional>

#include "sml/error.hpp"
#include "sml/morphism.hpp"
#include "sml/superop.hpp"

namespace sml {

namespace {

std::vector<DerivIndex> graded_indices(unsigned m, unsigned max_order) {
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
  std::stable_sort(out.begin(), out.end(),
                   [](const DerivIndex& a, const DerivIndex& b) { return total_order(a) < total_order(b); });
  return out;
}

bool below(const DerivIndex& a, const DerivIndex& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

SymExpr monomial(const DerivIndex& beta) {
  Poly p(1);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (beta[j]) p *= Poly::variable(Var::x(j + 1)).pow(beta[j]);
  }
  return SymExpr(p);
}

}  // namespace

SuperOperator conjugate(const SuperOperator& a, const SuperMorphism& chi) {
  if (chi.source_m() != a.m() || chi.source_n() != a.n()) {
    throw DimensionError("operator and morphism live on different superdomains");
  }
  SuperMorphism psi = inverse(chi);
  unsigned m = chi.target_m();
  unsigned n = chi.target_n();
  unsigned order = 0;
  for (const auto& kv : a.components()) order = std::max(order, kv.second.order());
  // chi* and psi* each contribute derivatives of order at most n/2.
  unsigned probe = order + n;
  auto betas = graded_indices(m, probe);

  std::map<Slot, DiffOp> parts;
  for (const auto& col : all_multi_indices(n)) {
    std::map<MultiIndex, std::map<DerivIndex, SymExpr>> coeffs;
    for (const auto& beta : betas) {
      Superfunction g = Superfunction::monomial(col, monomial(beta));
      Superfunction h = pullback_superfunction(psi, a.apply(pullback_superfunction(chi, g)));
      Rational beta_fact = factorial(beta);
      for (const auto& row : all_multi_indices(n)) {
        SymExpr value = h.coefficient(row);
        auto& known = coeffs[row];
        // Remove the contribution of lower-order coefficients: d^alpha y^beta = beta!/(beta-alpha)! y^(beta-alpha).
        for (const auto& [alpha, c] : known) {
          if (alpha == beta || !below(alpha, beta)) continue;
          DerivIndex rest(m);
          for (unsigned j = 0; j < m; ++j) rest[j] = beta[j] - alpha[j];
          value -= c * SymExpr(Complex(beta_fact / factorial(rest))) * monomial(rest);
        }
        if (!value.is_zero()) known[beta] = value / SymExpr(Complex(beta_fact));
      }
    }
    for (const auto& [row, terms] : coeffs) {
      DiffOp op(m);
      for (const auto& [alpha, c] : terms) op.add_term(alpha, c);
      if (!op.is_zero()) parts[{row, col}] = std::move(op);
    }
  }
  SuperOperator out(m, n, a.order());
  for (const auto& [slot, op] : parts) out.set(slot.first, slot.second, op);
  return out;
}

}  // namespace sml
