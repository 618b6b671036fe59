#include <gtest/gtest.h>

#include "generators.hpp"
#include "helpers.hpp"

namespace sml {
namespace {

using G = GrassmannElement<Complex>;

G naive_product(const G& a, const G& b) {
  G out(a.n());
  for (const auto& [i, ci] : a.coeffs()) {
    for (const auto& [j, cj] : b.coeffs()) {
      int s = gen::bubble_sign(i, j);
      if (s != 0) out.add(MultiIndex(a.n(), i.bits() | j.bits()), ci * cj * Complex(s));
    }
  }
  return out;
}

TEST(MultiIndex, OrderIsGradedThenLexicographic) {
  const auto& all = all_multi_indices(3);
  std::vector<std::string> names;
  for (const auto& i : all) names.push_back(i.to_string());
  EXPECT_EQ(names, (std::vector<std::string>{"1", "th1", "th2", "th3", "th1^th2", "th1^th3", "th2^th3",
                                             "th1^th2^th3"}));
  for (std::size_t p = 0; p < all.size(); ++p) EXPECT_EQ(block_position(all[p]), p);
  EXPECT_THROW(MultiIndex::of(2, {3}), DimensionError);
  EXPECT_THROW(MultiIndex::of(2, {1, 1}), DimensionError);
}

TEST(MultiIndex, ReorderSignMatchesBubbleSort) {
  for (unsigned n = 0; n <= 5; ++n) {
    for (const auto& a : all_multi_indices(n)) {
      for (const auto& b : all_multi_indices(n)) EXPECT_EQ(reorder_sign(a, b), gen::bubble_sign(a, b));
    }
  }
}

TEST(Grassmann, GeneratorsAnticommute) {
  G t1 = G::generator(2, 1), t2 = G::generator(2, 2);
  EXPECT_EQ(t1 * t2, -(t2 * t1));
  EXPECT_TRUE((t1 * t1).is_zero());
  EXPECT_EQ((t1 * t2).to_string(), "(1)*th1^th2");
}

TEST(GrassmannProperty, ProductMatchesNaiveOracle) {
  gen::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    unsigned n = static_cast<unsigned>(rng.integer(0, 4));
    G a = rng.grassmann(n), b = rng.grassmann(n);
    ASSERT_EQ(a * b, naive_product(a, b)) << a.to_string() << " | " << b.to_string();
  }
}

TEST(GrassmannProperty, SupercommutativeAssociativeNilpotent) {
  gen::Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    unsigned n = static_cast<unsigned>(rng.integer(0, 4));
    int p = rng.integer(0, 1), q = rng.integer(0, 1);
    G a = rng.grassmann(n, p), b = rng.grassmann(n, q), c = rng.grassmann(n);
    G ba = b * a;
    if (p * q == 1) ba = -ba;
    ASSERT_EQ(a * b, ba);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_TRUE(c.soul().pow(n + 1).is_zero());
    if (p == 1) ASSERT_TRUE((a * a).is_zero());
    ASSERT_EQ((a * b).body(), a.body() * b.body());
  }
}

TEST(GrassmannProperty, ParityPartsMultiplyByParity) {
  gen::Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    unsigned n = static_cast<unsigned>(rng.integer(1, 4));
    G odd = rng.grassmann(n, 1), even = rng.grassmann(n, 0);
    ASSERT_TRUE((odd * odd).is_even());
    ASSERT_TRUE((odd * even).is_odd());
    ASSERT_TRUE((even * even).is_even());
  }
}

}  // namespace
}  // namespace sml
