#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sml/catalog.hpp"
#include "sml/diffop.hpp"
#include "sml/grassmann.hpp"
#include "sml/morphism.hpp"
#include "sml/superop.hpp"
#include "sml/symexpr.hpp"

namespace sml {

// Expression grammar: x<j>, k<j>, th<a>, i, declared parameters, integers,
// + - * / ^, parentheses and derivative atoms d[x<j>]. Products compose
// (d[x1]*x1 = x1*d[x1] + 1); `^` followed by a th atom is the wedge product.
// All entry points throw ParseError with a 1-based line and column.

SymExpr parse_symexpr(std::string_view text, unsigned m, const std::vector<std::string>& params = {});
DiffOp parse_diffop(std::string_view text, unsigned m, const std::vector<std::string>& params = {});
Superfunction parse_superfunction(std::string_view text, unsigned m, unsigned n,
                                  const std::vector<std::string>& params = {});
/// Sums of polynomials and ops applied to delta(p...), deltah(a...; c[; r]), heaviside(a...; c).
CatalogSum parse_catalog(std::string_view text, unsigned m, const std::vector<std::string>& params = {});

struct DomainDecl {
  std::string name;
  unsigned m = 0;
  unsigned n = 0;
  friend bool operator==(const DomainDecl&, const DomainDecl&) = default;
};

struct OperatorDecl {
  std::string name;
  std::string domain;
  SuperOperator op;
  friend bool operator==(const OperatorDecl&, const OperatorDecl&) = default;
};

struct MorphismDecl {
  std::string name;
  std::string source;
  std::string target;
  SuperMorphism map;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct DistDecl {
  std::string name;
  std::string domain;
  SuperDistribution dist;
  friend bool operator==(const DistDecl&, const DistDecl&) = default;
};

/// Either an explicit pair of operators or the built-in Wess-Zumino model.
struct SystemDecl {
  std::string name;
  bool wess_zumino = false;
  SymExpr mass;
  std::string p;
  std::string p_tilde;
  friend bool operator==(const SystemDecl&, const SystemDecl&) = default;
};

struct OrbitDecl {
  std::string name;
  std::string system;
  RVector x;
  RVector k;
  std::optional<std::vector<Complex>> lambda;
  friend bool operator==(const OrbitDecl&, const OrbitDecl&) = default;
};

struct AtlasDecl {
  struct Edge {
    std::string from;
    std::string to;
    std::string morphism;
    friend bool operator==(const Edge&, const Edge&) = default;
  };
  std::string name;
  std::vector<std::string> charts;
  std::vector<Edge> transitions;
  friend bool operator==(const AtlasDecl&, const AtlasDecl&) = default;
};

using Declaration =
    std::variant<DomainDecl, OperatorDecl, MorphismDecl, DistDecl, SystemDecl, OrbitDecl, AtlasDecl>;

struct Document {
  std::vector<std::string> params;
  std::vector<Declaration> decls;

  template <class T>
  const T* find(std::string_view name) const {
    for (const auto& d : decls) {
      if (const T* t = std::get_if<T>(&d); t && t->name == name) return t;
    }
    return nullptr;
  }
  template <class T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (const auto& d : decls) {
      if (const T* t = std::get_if<T>(&d)) out.push_back(t);
    }
    return out;
  }
  friend bool operator==(const Document&, const Document&) = default;
};

Document parse_document(std::string_view text);
/// Canonical text; parse_document(print_document(d)) == d.
std::string print_document(const Document& doc);

}  // namespace sml
