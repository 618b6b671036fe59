#include "sml/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "sml/error.hpp"

namespace sml {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t c = 0; c < count; ++c, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::Sym, "", line, col};
    std::size_t j = i;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Int;
    } else if (ch == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      j = i + 2;
    } else if (std::string_view("+-*/^()[]{},;:|=").find(ch) != std::string_view::npos) {
      j = i + 1;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    t.text = std::string(s.substr(i, j - i));
    advance(j - i);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::End, "", line, col});
  return out;
}

/// Indexed name like x12 or th3; returns the index or 0.
unsigned indexed(const std::string& text, std::string_view prefix) {
  if (text.size() <= prefix.size() || text.compare(0, prefix.size(), prefix) != 0) return 0;
  if (text[prefix.size()] == '0') return 0;
  unsigned v = 0;
  for (std::size_t p = prefix.size(); p < text.size(); ++p) {
    if (!std::isdigit(static_cast<unsigned char>(text[p]))) return 0;
    v = v * 10 + static_cast<unsigned>(text[p] - '0');
    if (v > 1000000) return 0;
  }
  return v;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> words{"i",      "d",         "delta",     "deltah", "heaviside",
                                           "param",  "domain",    "dim",       "operator", "on",
                                           "order",  "morphism",  "dist",      "system", "wess_zumino",
                                           "orbit",  "atlas",     "chart",     "transition"};
  return words;
}

bool is_reserved(const std::string& name) {
  return reserved().count(name) || indexed(name, "x") || indexed(name, "k") || indexed(name, "th") ||
         indexed(name, "y") || indexed(name, "z");
}

// Theta-graded differential operators with coefficients in SymExpr; k may
// appear in coefficients so that symbols parse through the same path.
using OpTerms = std::map<DerivIndex, SymExpr>;

void add_into(OpTerms& t, const DerivIndex& alpha, const SymExpr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

/// (a d^alpha) o (b d^beta) = sum_{gamma <= alpha} C(alpha, gamma) a (d^gamma b) d^(alpha - gamma + beta)
OpTerms compose(const OpTerms& a, const OpTerms& b, unsigned m) {
  OpTerms out;
  for (const auto& [alpha, ca] : a) {
    std::vector<DerivIndex> gammas{DerivIndex(m, 0)};
    for (unsigned j = 0; j < m; ++j) {
      std::vector<DerivIndex> next;
      for (const auto& g : gammas) {
        for (unsigned e = 0; e <= alpha[j]; ++e) {
          DerivIndex h = g;
          h[j] = e;
          next.push_back(h);
        }
      }
      gammas = std::move(next);
    }
    for (const auto& gamma : gammas) {
      Rational binom = factorial(alpha) / (factorial(gamma) * factorial([&] {
                         DerivIndex r(m);
                         for (unsigned j = 0; j < m; ++j) r[j] = alpha[j] - gamma[j];
                         return r;
                       }()));
      for (const auto& [beta, cb] : b) {
        SymExpr coeff = ca * apply_derivative(gamma, cb) * SymExpr(Complex(binom));
        DerivIndex total(m);
        for (unsigned j = 0; j < m; ++j) total[j] = alpha[j] - gamma[j] + beta[j];
        add_into(out, total, coeff);
      }
    }
  }
  return out;
}

struct Value {
  unsigned m = 0;
  unsigned n = 0;
  std::map<MultiIndex, OpTerms> parts;

  static Value scalar(unsigned m, unsigned n, const SymExpr& c) {
    Value v{m, n, {}};
    OpTerms t;
    add_into(t, DerivIndex(m, 0), c);
    if (!t.empty()) v.parts.emplace(MultiIndex::empty(n), t);
    return v;
  }
  void add(const MultiIndex& i, const OpTerms& t, const SymExpr& factor) {
    auto& dst = parts[i];
    for (const auto& [alpha, c] : t) add_into(dst, alpha, c * factor);
    if (dst.empty()) parts.erase(i);
  }
  std::optional<SymExpr> as_scalar() const {
    if (parts.empty()) return SymExpr(0);
    if (parts.size() != 1 || !parts.begin()->first.is_empty()) return std::nullopt;
    const auto& t = parts.begin()->second;
    if (t.size() != 1 || total_order(t.begin()->first) != 0) return std::nullopt;
    return t.begin()->second;
  }
};

Value operator+(Value a, const Value& b) {
  for (const auto& [i, t] : b.parts) a.add(i, t, SymExpr(1));
  return a;
}

Value operator-(Value a, const Value& b) {
  for (const auto& [i, t] : b.parts) a.add(i, t, SymExpr(-1));
  return a;
}

Value operator*(const Value& a, const Value& b) {
  Value out{a.m, a.n, {}};
  for (const auto& [i, ta] : a.parts) {
    for (const auto& [j, tb] : b.parts) {
      int sign = reorder_sign(i, j);
      if (sign == 0) continue;
      out.add(MultiIndex(a.n, i.bits() | j.bits()), compose(ta, tb, a.m), SymExpr(sign));
    }
  }
  return out;
}

struct Scope {
  unsigned m = 0;
  unsigned n = 0;
  const std::vector<std::string>* params = nullptr;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool at(std::string_view text) const { return peek().kind != Tok::End && peek().text == text; }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    next();
    return true;
  }
  Token expect(std::string_view text) {
    if (!at(text)) fail(peek(), "expected '" + std::string(text) + "'");
    return next();
  }
  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw ParseError(message + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"), t.line,
                     t.col);
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
  }
  std::string name() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected a name");
    return next().text;
  }
  unsigned integer() {
    if (peek().kind != Tok::Int) fail(peek(), "expected an integer");
    Token t = next();
    if (t.text.size() > 6) fail(t, "integer too large");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Value expr(const Scope& s) {
    Value v = term(s);
    while (at("+") || at("-")) {
      bool plus = next().text == "+";
      Value r = term(s);
      v = plus ? v + r : v - r;
    }
    return v;
  }

  Value term(const Scope& s) {
    Value v = unary(s);
    while (at("*") || at("/")) {
      Token op = next();
      Value r = unary(s);
      v = op.text == "*" ? v * r : divide(v, r, op);
    }
    return v;
  }

  Value divide(const Value& a, const Value& b, const Token& where) {
    auto d = b.as_scalar();
    if (!d) fail(where, "divisor must be a scalar expression");
    if (d->is_zero()) fail(where, "division by zero");
    SymExpr inv = SymExpr(1) / *d;
    Value out{a.m, a.n, {}};
    for (const auto& [i, t] : a.parts) out.add(i, t, inv);
    return out;
  }

  Value unary(const Scope& s) {
    if (accept("-")) return Value::scalar(s.m, s.n, SymExpr(-1)) * unary(s);
    if (accept("+")) return unary(s);
    return power(s);
  }

  Value power(const Scope& s) {
    Value v = primary(s);
    while (at("^")) {
      Token op = next();
      if (peek().kind == Tok::Ident && indexed(peek().text, "th")) {
        v = v * primary(s);
        continue;
      }
      bool negative = accept("-");
      long e = integer();
      if (negative) e = -e;
      if (e < 0) {
        auto base = v.as_scalar();
        if (!base) fail(op, "negative powers need a scalar base");
        if (base->is_zero()) fail(op, "division by zero");
        v = Value::scalar(s.m, s.n, base->pow(static_cast<int>(e)));
      } else {
        Value r = Value::scalar(s.m, s.n, SymExpr(1));
        for (long c = 0; c < e; ++c) r = r * v;
        v = r;
      }
    }
    return v;
  }

  Value primary(const Scope& s) {
    const Token t = peek();
    if (t.kind == Tok::Int) {
      next();
      return Value::scalar(s.m, s.n, SymExpr(Complex(Rational(mpz_class(t.text)))));
    }
    if (accept("(")) {
      Value v = expr(s);
      expect(")");
      return v;
    }
    if (t.kind != Tok::Ident) fail(t, "expected an expression");
    next();
    if (t.text == "i") return Value::scalar(s.m, s.n, SymExpr(Complex::i()));
    if (t.text == "d") {
      expect("[");
      Token var = next();
      unsigned j = indexed(var.text, "x");
      if (!j) fail(var, "expected a base variable inside d[...]");
      if (j > s.m) fail(var, "variable out of range for base dimension " + std::to_string(s.m));
      expect("]");
      DerivIndex alpha(s.m, 0);
      alpha[j - 1] = 1;
      Value v{s.m, s.n, {}};
      v.parts[MultiIndex::empty(s.n)][alpha] = SymExpr(1);
      return v;
    }
    if (unsigned j = indexed(t.text, "x")) {
      if (j > s.m) fail(t, "variable out of range for base dimension " + std::to_string(s.m));
      return Value::scalar(s.m, s.n, SymExpr::variable(Var::x(j)));
    }
    if (unsigned j = indexed(t.text, "k")) {
      if (j > s.m) fail(t, "covector variable out of range for base dimension " + std::to_string(s.m));
      return Value::scalar(s.m, s.n, SymExpr::variable(Var::k(j)));
    }
    if (unsigned a = indexed(t.text, "th")) {
      if (a > s.n) fail(t, "odd generator out of range for " + std::to_string(s.n) + " generators");
      Value v{s.m, s.n, {}};
      v.parts[MultiIndex::of(s.n, {a})][DerivIndex(s.m, 0)] = SymExpr(1);
      return v;
    }
    if (s.params && std::find(s.params->begin(), s.params->end(), t.text) != s.params->end()) {
      return Value::scalar(s.m, s.n, SymExpr::variable(Var::param(t.text)));
    }
    fail(t, "unknown identifier");
  }

  Rational rational_constant(const Scope& s) {
    Token start = peek();
    auto v = expr(Scope{0, 0, s.params}).as_scalar();
    if (!v || !v->is_constant() || !v->constant_value()->is_real()) fail(start, "expected a rational constant");
    return v->constant_value()->real();
  }

  Complex complex_constant(const Scope& s) {
    Token start = peek();
    auto v = expr(Scope{0, 0, s.params}).as_scalar();
    if (!v || !v->is_constant()) fail(start, "expected a numeric constant");
    return *v->constant_value();
  }

  DiffOp to_diffop(const Value& v, const Token& where) {
    DiffOp op(v.m);
    for (const auto& [i, t] : v.parts) {
      if (!i.is_empty()) fail(where, "odd generators are not allowed in an operator entry");
      for (const auto& [alpha, c] : t) {
        if (c.depends_on(VarKind::K)) fail(where, "operator coefficients may not depend on k");
        op.add_term(alpha, c);
      }
    }
    return op;
  }

  Superfunction to_superfunction(const Value& v, const Token& where) {
    Superfunction f(v.n);
    for (const auto& [i, t] : v.parts) {
      for (const auto& [alpha, c] : t) {
        if (total_order(alpha) != 0) fail(where, "derivatives are not allowed in a superfunction");
        f.set(i, c);
      }
    }
    return f;
  }

  CatalogSum catalog(const Scope& s) {
    CatalogSum sum(s.m);
    bool negative = accept("-");
    if (!negative) accept("+");
    while (true) {
      CatalogSum t = catalog_term(s);
      if (negative) t *= Complex(-1);
      sum += t;
      if (accept("+")) {
        negative = false;
      } else if (accept("-")) {
        negative = true;
      } else {
        return sum;
      }
    }
  }

  CatalogSum catalog_term(const Scope& s) {
    Token start = peek();
    Value ops = Value::scalar(s.m, 0, SymExpr(1));
    Scope plain{s.m, 0, s.params};
    while (true) {
      if (peek().kind == Tok::Ident &&
          (peek().text == "delta" || peek().text == "deltah" || peek().text == "heaviside")) {
        CatalogSum atom = catalog_atom(s);
        if (at("*") || at("/")) fail(peek(), "a catalog atom must be the last factor");
        try {
          return apply(to_diffop(ops, start), atom);
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          fail(start, e.what());
        }
      }
      ops = ops * power(plain);
      if (accept("*")) continue;
      if (at("/")) {
        Token op = next();
        ops = divide(ops, power(plain), op);
        if (accept("*")) continue;
      }
      break;
    }
    auto c = ops.as_scalar();
    if (!c || !c->is_polynomial() || c->depends_on(VarKind::K) || c->depends_on(VarKind::Param)) {
      fail(start, "smooth catalog terms must be numeric polynomials in x");
    }
    return CatalogSum::smooth(s.m, c->numerator());
  }

  CatalogSum catalog_atom(const Scope& s) {
    Token head = next();
    expect("(");
    RVector v;
    for (unsigned j = 0; j < s.m; ++j) {
      if (j) expect(",");
      v.push_back(rational_constant(s));
    }
    if (head.text == "delta") {
      expect(")");
      return CatalogSum::delta_point(v);
    }
    expect(";");
    Rational c = rational_constant(s);
    unsigned order = 0;
    if (head.text == "deltah" && accept(";")) order = integer();
    expect(")");
    if (std::all_of(v.begin(), v.end(), [](const Rational& e) { return sgn(e) == 0; })) {
      fail(head, "hyperplane normal must be nonzero");
    }
    return head.text == "deltah" ? CatalogSum::delta_hyperplane(v, c, order) : CatalogSum::heaviside(v, c);
  }

  MultiIndex multi_index(unsigned n) {
    Token start = peek();
    if (peek().kind == Tok::Int) {
      if (next().text != "1") fail(start, "expected 1 or a wedge of th generators");
      return MultiIndex::empty(n);
    }
    std::vector<unsigned> gens;
    do {
      Token t = next();
      unsigned a = indexed(t.text, "th");
      if (!a) fail(t, "expected a th generator");
      if (a > n) fail(t, "odd generator out of range for " + std::to_string(n) + " generators");
      if (!gens.empty() && a <= gens.back()) fail(t, "generators must be strictly increasing");
      gens.push_back(a);
    } while (accept("^"));
    return MultiIndex::of(n, gens);
  }

  RVector rational_tuple(const Scope& s) {
    expect("(");
    RVector out;
    if (!at(")")) {
      do out.push_back(rational_constant(s));
      while (accept(","));
    }
    expect(")");
    return out;
  }

  std::vector<Complex> complex_tuple(const Scope& s) {
    expect("(");
    std::vector<Complex> out;
    if (!at(")")) {
      do out.push_back(complex_constant(s));
      while (accept(","));
    }
    expect(")");
    return out;
  }

  Document document();

 private:
  void declare(const Token& where, const std::string& name) {
    if (is_reserved(name)) fail(where, "reserved name");
    if (!names_.insert(name).second) fail(where, "duplicate name");
  }
  const DomainDecl& domain_ref(const Document& doc, const Token& where, const std::string& name) {
    const DomainDecl* d = doc.find<DomainDecl>(name);
    if (!d) fail(where, "unknown domain");
    return *d;
  }
  void param_decl(Document& doc);
  void domain_decl(Document& doc);
  void operator_decl(Document& doc);
  void morphism_decl(Document& doc);
  void dist_decl(Document& doc);
  void system_decl(Document& doc);
  void orbit_decl(Document& doc);
  void atlas_decl(Document& doc);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> names_;
  std::string last_domain_;
};

void Parser::param_decl(Document& doc) {
  do {
    Token t = peek();
    std::string n = name();
    declare(t, n);
    doc.params.push_back(n);
  } while (accept(","));
  expect(";");
}

void Parser::domain_decl(Document& doc) {
  Token t = peek();
  DomainDecl d;
  d.name = name();
  declare(t, d.name);
  expect("dim");
  d.m = integer();
  expect("|");
  Token nt = peek();
  d.n = integer();
  if (d.n > MultiIndex::kMaxGenerators) fail(nt, "too many odd generators");
  expect(";");
  last_domain_ = d.name;
  doc.decls.emplace_back(d);
}

void Parser::operator_decl(Document& doc) {
  Token t = peek();
  OperatorDecl d;
  d.name = name();
  declare(t, d.name);
  Token dt = peek();
  d.domain = accept("on") ? (dt = peek(), name()) : last_domain_;
  const DomainDecl& dom = domain_ref(doc, dt, d.domain);
  expect("order");
  Scope s{dom.m, 0, &doc.params};
  d.op = SuperOperator(dom.m, dom.n, rational_constant(s));
  expect("{");
  while (!accept("}")) {
    Token slot = expect("(");
    MultiIndex row = multi_index(dom.n);
    expect("|");
    MultiIndex col = multi_index(dom.n);
    expect(")");
    expect(":");
    Token et = peek();
    Value v = expr(s);
    expect(";");
    if (!d.op.component(row, col).terms().empty()) fail(slot, "slot assigned twice");
    try {
      d.op.set(row, col, to_diffop(v, et));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(slot, e.what());
    }
  }
  doc.decls.emplace_back(std::move(d));
}

void Parser::morphism_decl(Document& doc) {
  Token t = peek();
  MorphismDecl d;
  d.name = name();
  declare(t, d.name);
  Token st = peek();
  d.source = name();
  const DomainDecl src = domain_ref(doc, st, d.source);
  expect("->");
  Token tt = peek();
  d.target = name();
  const DomainDecl tgt = domain_ref(doc, tt, d.target);
  std::vector<std::optional<Superfunction>> even(tgt.m), odd(tgt.n);
  Scope s{src.m, src.n, &doc.params};
  expect("{");
  while (!accept("}")) {
    Token lhs = next();
    unsigned y = indexed(lhs.text, "y");
    unsigned z = indexed(lhs.text, "z");
    if ((!y && !z) || (y && y > tgt.m) || (z && z > tgt.n)) fail(lhs, "expected a target coordinate y<j> or z<a>");
    auto& slot = y ? even[y - 1] : odd[z - 1];
    if (slot) fail(lhs, "coordinate assigned twice");
    expect("=");
    Token et = peek();
    slot = to_superfunction(expr(s), et);
    expect(";");
  }
  std::vector<Superfunction> ev, od;
  for (unsigned j = 0; j < tgt.m; ++j) {
    if (!even[j]) fail(t, "missing image of y" + std::to_string(j + 1));
    ev.push_back(*even[j]);
  }
  for (unsigned a = 0; a < tgt.n; ++a) {
    if (!odd[a]) fail(t, "missing image of z" + std::to_string(a + 1));
    od.push_back(*odd[a]);
  }
  try {
    d.map = SuperMorphism(src.m, src.n, tgt.m, tgt.n, ev, od);
  } catch (const Error& e) {
    fail(t, e.what());
  }
  doc.decls.emplace_back(std::move(d));
}

void Parser::dist_decl(Document& doc) {
  Token t = peek();
  DistDecl d;
  d.name = name();
  declare(t, d.name);
  Token dt = peek();
  d.domain = accept("on") ? (dt = peek(), name()) : last_domain_;
  const DomainDecl& dom = domain_ref(doc, dt, d.domain);
  d.dist = SuperDistribution(dom.m, dom.n);
  Scope s{dom.m, 0, &doc.params};
  expect("{");
  while (!accept("}")) {
    Token slot = expect("(");
    MultiIndex idx = multi_index(dom.n);
    expect(")");
    expect(":");
    if (d.dist.components().count(idx)) fail(slot, "component assigned twice");
    d.dist.set(idx, catalog(s));
    expect(";");
  }
  doc.decls.emplace_back(std::move(d));
}

void Parser::system_decl(Document& doc) {
  Token t = peek();
  SystemDecl d;
  d.name = name();
  declare(t, d.name);
  if (accept("=")) {
    expect("wess_zumino");
    expect("(");
    d.wess_zumino = true;
    Value v = expr(Scope{3, 0, &doc.params});
    auto mass = v.as_scalar();
    if (!mass || mass->depends_on(VarKind::X) || mass->depends_on(VarKind::K)) fail(t, "mass must be a constant");
    d.mass = *mass;
    expect(")");
    expect(";");
  } else {
    expect("{");
    while (!accept("}")) {
      Token key = next();
      expect("=");
      Token vt = peek();
      std::string ref = name();
      if (!doc.find<OperatorDecl>(ref)) fail(vt, "unknown operator");
      if (key.text == "P") {
        d.p = ref;
      } else if (key.text == "Pt") {
        d.p_tilde = ref;
      } else {
        fail(key, "expected P or Pt");
      }
      expect(";");
    }
    if (d.p.empty() || d.p_tilde.empty()) fail(t, "a system needs both P and Pt");
    const auto& a = doc.find<OperatorDecl>(d.p)->op;
    const auto& b = doc.find<OperatorDecl>(d.p_tilde)->op;
    if (a.m() != b.m() || a.n() != b.n()) fail(t, "P and Pt live on different domains");
  }
  doc.decls.emplace_back(std::move(d));
}

void Parser::orbit_decl(Document& doc) {
  Token t = peek();
  OrbitDecl d;
  d.name = name();
  declare(t, d.name);
  expect("on");
  Token st = peek();
  d.system = name();
  const SystemDecl* sys = doc.find<SystemDecl>(d.system);
  if (!sys) fail(st, "unknown system");
  unsigned m = 3, n = 2;
  if (!sys->wess_zumino) {
    const auto& p = doc.find<OperatorDecl>(sys->p)->op;
    m = p.m();
    n = p.n();
  }
  Scope s{0, 0, &doc.params};
  expect("{");
  while (!accept("}")) {
    Token key = next();
    expect("=");
    if (key.text == "x") {
      d.x = rational_tuple(s);
    } else if (key.text == "k") {
      d.k = rational_tuple(s);
    } else if (key.text == "lambda") {
      d.lambda = complex_tuple(s);
    } else {
      fail(key, "expected x, k or lambda");
    }
    expect(";");
  }
  if (d.x.size() != m || d.k.size() != m) fail(t, "x and k need " + std::to_string(m) + " entries");
  if (d.lambda && d.lambda->size() != (std::size_t{1} << n)) {
    fail(t, "lambda needs " + std::to_string(std::size_t{1} << n) + " entries");
  }
  doc.decls.emplace_back(std::move(d));
}

void Parser::atlas_decl(Document& doc) {
  Token t = peek();
  AtlasDecl d;
  d.name = name();
  declare(t, d.name);
  expect("{");
  while (!accept("}")) {
    Token key = next();
    if (key.text == "chart") {
      Token ct = peek();
      std::string c = name();
      domain_ref(doc, ct, c);
      d.charts.push_back(c);
    } else if (key.text == "transition") {
      AtlasDecl::Edge e;
      Token ft = peek();
      e.from = name();
      expect("->");
      e.to = name();
      expect("=");
      Token mt = peek();
      e.morphism = name();
      const MorphismDecl* mor = doc.find<MorphismDecl>(e.morphism);
      if (!mor) fail(mt, "unknown morphism");
      if (mor->source != e.from || mor->target != e.to) fail(ft, "transition does not match the morphism's domains");
      d.transitions.push_back(e);
    } else {
      fail(key, "expected chart or transition");
    }
    expect(";");
  }
  for (const auto& e : d.transitions) {
    for (const auto& c : {e.from, e.to}) {
      if (std::find(d.charts.begin(), d.charts.end(), c) == d.charts.end()) fail(t, "transition uses undeclared chart " + c);
    }
  }
  doc.decls.emplace_back(std::move(d));
}

Document Parser::document() {
  Document doc;
  while (peek().kind != Tok::End) {
    Token kw = next();
    if (kw.text == "param") {
      param_decl(doc);
    } else if (kw.text == "domain") {
      domain_decl(doc);
    } else if (kw.text == "operator") {
      operator_decl(doc);
    } else if (kw.text == "morphism") {
      morphism_decl(doc);
    } else if (kw.text == "dist") {
      dist_decl(doc);
    } else if (kw.text == "system") {
      system_decl(doc);
    } else if (kw.text == "orbit") {
      orbit_decl(doc);
    } else if (kw.text == "atlas") {
      atlas_decl(doc);
    } else {
      fail(kw, "expected a declaration");
    }
  }
  return doc;
}

template <class F>
auto parse_whole(std::string_view text, F&& body) {
  Parser p(text);
  auto result = body(p);
  p.expect_end();
  return result;
}

std::string tuple_text(const std::vector<std::string>& items) {
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + ")";
}

}  // namespace

SymExpr parse_symexpr(std::string_view text, unsigned m, const std::vector<std::string>& params) {
  return parse_whole(text, [&](Parser& p) {
    Token start = p.peek();
    auto v = p.expr(Scope{m, 0, &params}).as_scalar();
    if (!v) p.fail(start, "expected a scalar expression");
    return *v;
  });
}

DiffOp parse_diffop(std::string_view text, unsigned m, const std::vector<std::string>& params) {
  return parse_whole(text, [&](Parser& p) {
    Token start = p.peek();
    return p.to_diffop(p.expr(Scope{m, 0, &params}), start);
  });
}

Superfunction parse_superfunction(std::string_view text, unsigned m, unsigned n,
                                  const std::vector<std::string>& params) {
  return parse_whole(text, [&](Parser& p) {
    Token start = p.peek();
    return p.to_superfunction(p.expr(Scope{m, n, &params}), start);
  });
}

CatalogSum parse_catalog(std::string_view text, unsigned m, const std::vector<std::string>& params) {
  return parse_whole(text, [&](Parser& p) { return p.catalog(Scope{m, 0, &params}); });
}

Document parse_document(std::string_view text) {
  Parser p(text);
  return p.document();
}

std::string print_document(const Document& doc) {
  std::string out;
  auto block_sep = [&] {
    if (!out.empty()) out += "\n";
  };
  if (!doc.params.empty()) {
    out += "param ";
    for (std::size_t i = 0; i < doc.params.size(); ++i) out += (i ? ", " : "") + doc.params[i];
    out += ";\n";
  }
  for (const auto& decl : doc.decls) {
    block_sep();
    if (const auto* d = std::get_if<DomainDecl>(&decl)) {
      out += "domain " + d->name + " dim " + std::to_string(d->m) + "|" + std::to_string(d->n) + ";\n";
    } else if (const auto* d = std::get_if<OperatorDecl>(&decl)) {
      out += "operator " + d->name + " on " + d->domain + " order " + to_string(d->op.order()) + " {\n";
      for (const auto& [slot, op] : d->op.components()) {
        out += "  (" + slot.first.to_string() + "|" + slot.second.to_string() + "): " + op.to_string() + ";\n";
      }
      out += "}\n";
    } else if (const auto* d = std::get_if<MorphismDecl>(&decl)) {
      out += "morphism " + d->name + " " + d->source + " -> " + d->target + " {\n";
      for (std::size_t j = 0; j < d->map.even_images().size(); ++j) {
        out += "  y" + std::to_string(j + 1) + " = " + d->map.even_images()[j].to_string() + ";\n";
      }
      for (std::size_t a = 0; a < d->map.odd_images().size(); ++a) {
        out += "  z" + std::to_string(a + 1) + " = " + d->map.odd_images()[a].to_string() + ";\n";
      }
      out += "}\n";
    } else if (const auto* d = std::get_if<DistDecl>(&decl)) {
      out += "dist " + d->name + " on " + d->domain + " {\n";
      for (const auto& [i, u] : d->dist.components()) out += "  (" + i.to_string() + "): " + u.to_string() + ";\n";
      out += "}\n";
    } else if (const auto* d = std::get_if<SystemDecl>(&decl)) {
      if (d->wess_zumino) {
        out += "system " + d->name + " = wess_zumino(" + d->mass.to_string() + ");\n";
      } else {
        out += "system " + d->name + " {\n  P = " + d->p + ";\n  Pt = " + d->p_tilde + ";\n}\n";
      }
    } else if (const auto* d = std::get_if<OrbitDecl>(&decl)) {
      std::vector<std::string> x, k;
      for (const auto& e : d->x) x.push_back(to_string(e));
      for (const auto& e : d->k) k.push_back(to_string(e));
      out += "orbit " + d->name + " on " + d->system + " {\n  x = " + tuple_text(x) + ";\n  k = " + tuple_text(k) +
             ";\n";
      if (d->lambda) {
        std::vector<std::string> l;
        for (const auto& e : *d->lambda) l.push_back(e.to_string());
        out += "  lambda = " + tuple_text(l) + ";\n";
      }
      out += "}\n";
    } else if (const auto* d = std::get_if<AtlasDecl>(&decl)) {
      out += "atlas " + d->name + " {\n";
      for (const auto& c : d->charts) out += "  chart " + c + ";\n";
      for (const auto& e : d->transitions) {
        out += "  transition " + e.from + " -> " + e.to + " = " + e.morphism + ";\n";
      }
      out += "}\n";
    }
  }
  return out;
}

}  // namespace sml
