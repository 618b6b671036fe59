#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "sml/error.hpp"
#include "sml/symexpr.hpp"

namespace sml {

/// Strictly increasing subset of {1..n}, stored as a bitmask.
///
/// Total order: by degree, then lexicographically on the sorted generator
/// lists. The empty index comes first, so it is the body slot.
class MultiIndex {
 public:
  static constexpr unsigned kMaxGenerators = 16;

  MultiIndex() = default;
  MultiIndex(unsigned n, std::uint32_t bits);
  /// Generators are 1-based; throws DimensionError when out of range or repeated.
  static MultiIndex of(unsigned n, std::initializer_list<unsigned> generators);
  static MultiIndex of(unsigned n, const std::vector<unsigned>& generators);
  static MultiIndex empty(unsigned n) { return MultiIndex(n, 0); }
  static MultiIndex full(unsigned n) { return MultiIndex(n, (1u << n) - 1); }

  unsigned n() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  unsigned degree() const { return static_cast<unsigned>(std::popcount(bits_)); }
  bool is_empty() const { return bits_ == 0; }
  bool odd() const { return degree() % 2 == 1; }
  bool contains(unsigned generator) const { return (bits_ >> (generator - 1)) & 1u; }
  std::vector<unsigned> generators() const;
  bool disjoint(const MultiIndex& o) const { return (bits_ & o.bits_) == 0; }
  bool subset_of(const MultiIndex& o) const { return (bits_ & ~o.bits_) == 0; }

  /// `1` for the empty index, otherwise `th1^th3`.
  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  unsigned n_ = 0;
  std::uint32_t bits_ = 0;
};

/// Sign of reordering theta^I theta^J into increasing order; 0 if I, J overlap.
int reorder_sign(const MultiIndex& a, const MultiIndex& b);

/// All 2^n multi-indices in the total order.
const std::vector<MultiIndex>& all_multi_indices(unsigned n);
/// Position of I in all_multi_indices(I.n()).
std::size_t block_position(const MultiIndex& index);

/// Element of the Grassmann algebra over n generators with coefficients in S.
/// Zero coefficients are never stored.
template <class S>
class GrassmannElement {
 public:
  using CoeffMap = std::map<MultiIndex, S>;

  GrassmannElement() = default;
  explicit GrassmannElement(unsigned n) : n_(n) {}
  GrassmannElement(unsigned n, const S& body) : n_(n) { set(MultiIndex::empty(n), body); }

  static GrassmannElement generator(unsigned n, unsigned a) {
    GrassmannElement g(n);
    g.set(MultiIndex::of(n, {a}), S(1));
    return g;
  }
  static GrassmannElement monomial(const MultiIndex& index, const S& c) {
    GrassmannElement g(index.n());
    g.set(index, c);
    return g;
  }

  unsigned n() const { return n_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  S coefficient(const MultiIndex& index) const {
    check(index);
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? S(0) : it->second;
  }
  void set(const MultiIndex& index, const S& c) {
    check(index);
    if (sml::is_zero(c)) {
      coeffs_.erase(index);
    } else {
      coeffs_[index] = c;
    }
  }
  void add(const MultiIndex& index, const S& c) {
    check(index);
    if (sml::is_zero(c)) return;
    auto [it, inserted] = coeffs_.try_emplace(index, c);
    if (!inserted) {
      it->second += c;
      if (sml::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  S body() const { return coefficient(MultiIndex::empty(n_)); }
  GrassmannElement soul() const {
    GrassmannElement s = *this;
    s.coeffs_.erase(MultiIndex::empty(n_));
    return s;
  }
  GrassmannElement grade_part(unsigned d) const {
    GrassmannElement out(n_);
    for (const auto& [i, c] : coeffs_) {
      if (i.degree() == d) out.coeffs_.emplace(i, c);
    }
    return out;
  }
  bool is_even() const {
    for (const auto& kv : coeffs_) {
      if (kv.first.odd()) return false;
    }
    return true;
  }
  bool is_odd() const {
    for (const auto& kv : coeffs_) {
      if (!kv.first.odd()) return false;
    }
    return true;
  }

  GrassmannElement& operator+=(const GrassmannElement& o) {
    same_n(o);
    for (const auto& [i, c] : o.coeffs_) add(i, c);
    return *this;
  }
  GrassmannElement& operator-=(const GrassmannElement& o) {
    same_n(o);
    for (const auto& [i, c] : o.coeffs_) add(i, -c);
    return *this;
  }
  GrassmannElement operator-() const {
    GrassmannElement out(n_);
    for (const auto& [i, c] : coeffs_) out.coeffs_.emplace(i, -c);
    return out;
  }
  GrassmannElement& operator*=(const S& s) {
    if (sml::is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& kv : coeffs_) kv.second *= s;
    return *this;
  }
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, const S& s) { return a *= s; }
  friend GrassmannElement operator*(const S& s, GrassmannElement a) { return a *= s; }

  /// Wedge product.
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    a.same_n(b);
    GrassmannElement out(a.n_);
    for (const auto& [i, ci] : a.coeffs_) {
      for (const auto& [j, cj] : b.coeffs_) {
        int sign = reorder_sign(i, j);
        if (sign == 0) continue;
        S c = ci * cj;
        if (sign < 0) c = -c;
        out.add(MultiIndex(a.n_, i.bits() | j.bits()), c);
      }
    }
    return out;
  }

  GrassmannElement pow(unsigned e) const {
    GrassmannElement out(n_, S(1));
    for (unsigned j = 0; j < e; ++j) out = out * *this;
    return out;
  }

  template <class F>
  auto map_coefficients(F f) const {
    using T = decltype(f(std::declval<const S&>()));
    GrassmannElement<T> out(n_);
    for (const auto& [i, c] : coeffs_) out.set(i, f(c));
    return out;
  }

  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  /// Canonical text: the body bare, every other coefficient parenthesized,
  /// e.g. `3 + (1)*th1^th2`.
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : coeffs_) {
      if (!out.empty()) out += " + ";
      if (i.is_empty()) {
        out += sml::to_string(c);
      } else {
        out += "(" + sml::to_string(c) + ")*" + i.to_string();
      }
    }
    return out;
  }

 private:
  void check(const MultiIndex& index) const {
    if (index.n() != n_) throw DimensionError("multi-index over a different number of generators");
  }
  void same_n(const GrassmannElement& o) const {
    if (o.n_ != n_) throw DimensionError("Grassmann elements over different numbers of generators");
  }

  unsigned n_ = 0;
  CoeffMap coeffs_;
};

using Superfunction = GrassmannElement<SymExpr>;

}  // namespace sml
