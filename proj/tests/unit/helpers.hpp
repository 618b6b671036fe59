#pragma once

#include "sml/grassmann.hpp"
#include "sml/symexpr.hpp"

namespace sml::testing {

inline SymExpr x(unsigned j) { return SymExpr::variable(Var::x(j)); }
inline SymExpr k(unsigned j) { return SymExpr::variable(Var::k(j)); }
inline SymExpr p(const char* name) { return SymExpr::variable(Var::param(name)); }
inline SymExpr c(long re, long im = 0) { return SymExpr(Complex(re, im)); }
inline SymExpr q(long num, long den) { return SymExpr(Complex(Rational(num, den))); }
inline const SymExpr I = SymExpr(Complex::i());

inline MultiIndex mi(unsigned n, std::initializer_list<unsigned> gens) { return MultiIndex::of(n, gens); }

}  // namespace sml::testing
