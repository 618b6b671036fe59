#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "sml/dsl.hpp"
#include "sml/error.hpp"
#include "sml/propagation.hpp"

namespace sml {
namespace {

using namespace sml::testing;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Parse, Basics) {
  EXPECT_EQ(parse_symexpr("k1^2 + k2^2", 2), k(1) * k(1) + k(2) * k(2));
  EXPECT_EQ(parse_symexpr("-1/k1^2", 1), c(-1) / (k(1) * k(1)));
  EXPECT_EQ(parse_symexpr("(1/2+i)*x1 - 3*i", 1), SymExpr(Complex(Rational(1, 2), 1)) * x(1) - c(0, 3));
  EXPECT_EQ(parse_symexpr("k1^-2", 1), c(1) / (k(1) * k(1)));
  auto d = parse_diffop("d[x1]^2", 1);
  EXPECT_EQ(d, DiffOp::partial(1, 1, 2));
  EXPECT_EQ(d.order(), 2u);
  std::vector<std::string> params{"f0", "f1"};
  Superfunction f(1, p("f0"));
  f.set(mi(1, {1}), p("f1"));
  EXPECT_EQ(parse_superfunction("f0 + f1*th1", 1, 1, params), f);
}

TEST(Parse, ProductsCompose) {
  EXPECT_EQ(parse_diffop("d[x1]*x1", 1), parse_diffop("x1*d[x1] + 1", 1));
  EXPECT_EQ(parse_superfunction("th2^th1", 0, 2), parse_superfunction("-th1^th2", 0, 2));
  EXPECT_EQ(parse_superfunction("th1*th1", 0, 1), Superfunction(1));
}

TEST(Parse, ErrorsCarryLocation) {
  try {
    parse_symexpr("x1 +\n  y", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(parse_symexpr("x3", 2), ParseError);
  EXPECT_THROW(parse_symexpr("th1", 2), ParseError);
  EXPECT_THROW(parse_symexpr("(x1", 2), ParseError);
  EXPECT_THROW(parse_catalog("delta(0)", 2), ParseError);
  EXPECT_THROW(parse_catalog("delta(0, 0)*x1", 2), ParseError);
  EXPECT_THROW(parse_diffop("k1*d[x1]", 1), ParseError);
  EXPECT_THROW(parse_document("domain U dim 1|1;\noperator P order 1/2 { (1|th1): d[x1]; }"), ParseError);
  EXPECT_THROW(parse_document("domain U dim 1|1; domain U dim 2|0;"), ParseError);
  EXPECT_THROW(parse_document("domain U dim 1|1; morphism f U -> U { y1 = x1; }"), ParseError);
}

TEST(Parse, Catalog) {
  EXPECT_EQ(parse_catalog("d[x1]*heaviside(1, 0; 0)", 2), CatalogSum::delta_hyperplane({1, 0}, 0));
  EXPECT_EQ(parse_catalog("x1*d[x1]*delta(0, 0)", 2), Complex(-1) * CatalogSum::delta_point({0, 0}));
  auto u = parse_catalog("x1^2 - 2*deltah(2, 0; 1; 1)", 2);
  EXPECT_EQ(u.smooth_part(), (x(1) * x(1)).numerator());
  EXPECT_EQ(parse_catalog(u.to_string(), 2), u);
}

// Random expressions for the print/parse round trip.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  Complex number() {
    return Complex(Rational(pick(-5, 5), pick(1, 4)), pick(0, 2) ? Rational(0) : Rational(pick(-3, 3), pick(1, 3)));
  }
  SymExpr poly(unsigned m, bool with_k) {
    SymExpr out(0);
    for (int t = pick(1, 3); t > 0; --t) {
      SymExpr mono(number());
      for (unsigned j = 1; j <= m; ++j) {
        mono *= x(j).pow(pick(0, 2));
        if (with_k) mono *= k(j).pow(pick(0, 2));
      }
      if (pick(0, 3) == 0) mono *= p("a");
      out += mono;
    }
    return out;
  }
  SymExpr rational(unsigned m) {
    SymExpr d = poly(m, true);
    return d.is_zero() ? poly(m, true) : poly(m, true) / d;
  }
};

TEST(Parse, RoundTripRandomized) {
  Gen g(11);
  std::vector<std::string> params{"a"};
  for (int trial = 0; trial < 150; ++trial) {
    unsigned m = static_cast<unsigned>(g.pick(1, 3));
    SymExpr e = g.rational(m);
    EXPECT_EQ(parse_symexpr(e.to_string(), m, params), e) << e.to_string();

    DiffOp op(m);
    for (int t = g.pick(1, 3); t > 0; --t) {
      DerivIndex alpha(m);
      for (auto& a : alpha) a = static_cast<unsigned>(g.pick(0, 2));
      op.add_term(alpha, g.poly(m, false));
    }
    EXPECT_EQ(parse_diffop(op.to_string(), m, params), op) << op.to_string();

    unsigned n = static_cast<unsigned>(g.pick(0, 3));
    Superfunction f(n);
    for (const auto& i : all_multi_indices(n)) {
      if (g.pick(0, 1)) f.set(i, g.rational(m));
    }
    EXPECT_EQ(parse_superfunction(f.to_string(), m, n, params), f) << f.to_string();
  }
}

TEST(Document, WessZuminoFileMatchesModel) {
  auto doc = parse_document(slurp(std::filesystem::path(SML_CORPUS_DIR) / "02_wess_zumino_explicit.sml"));
  auto model = wz_model(p("m"));
  EXPECT_EQ(doc.find<OperatorDecl>("P")->op, model.p);
  EXPECT_EQ(doc.find<OperatorDecl>("Pt")->op, model.p_tilde);
}

TEST(Document, CorpusRoundTrip) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(SML_CORPUS_DIR)) files.push_back(e.path());
  ASSERT_EQ(files.size(), 30u);
  for (const auto& f : files) {
    Document doc = parse_document(slurp(f));
    std::string printed = print_document(doc);
    Document again = parse_document(printed);
    EXPECT_EQ(again, doc) << f;
    EXPECT_EQ(print_document(again), printed) << f;
  }
}

}  // namespace
}  // namespace sml
