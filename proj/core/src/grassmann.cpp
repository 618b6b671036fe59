#include "sml/grassmann.hpp"

#include <algorithm>
#include <mutex>

namespace sml {

MultiIndex::MultiIndex(unsigned n, std::uint32_t bits) : n_(n), bits_(bits) {
  if (n > kMaxGenerators) throw DimensionError("too many odd generators");
  if (n < 32 && (bits >> n) != 0) throw DimensionError("multi-index exceeds generator count");
}

MultiIndex MultiIndex::of(unsigned n, std::initializer_list<unsigned> generators) {
  return of(n, std::vector<unsigned>(generators));
}

MultiIndex MultiIndex::of(unsigned n, const std::vector<unsigned>& generators) {
  std::uint32_t bits = 0;
  for (unsigned g : generators) {
    if (g == 0 || g > n) throw DimensionError("generator index out of range");
    if ((bits >> (g - 1)) & 1u) throw DimensionError("repeated generator in multi-index");
    bits |= 1u << (g - 1);
  }
  return MultiIndex(n, bits);
}

std::vector<unsigned> MultiIndex::generators() const {
  std::vector<unsigned> out;
  for (unsigned a = 0; a < n_; ++a) {
    if ((bits_ >> a) & 1u) out.push_back(a + 1);
  }
  return out;
}

std::string MultiIndex::to_string() const {
  if (bits_ == 0) return "1";
  std::string out;
  for (unsigned g : generators()) {
    if (!out.empty()) out += "^";
    out += "th" + std::to_string(g);
  }
  return out;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  if (a.bits_ == b.bits_) return std::strong_ordering::equal;
  // Same degree: at the lowest differing generator, the side that has it
  // comes first in the sorted-list comparison.
  std::uint32_t diff = a.bits_ ^ b.bits_;
  std::uint32_t low = diff & (~diff + 1);
  return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
}

int reorder_sign(const MultiIndex& a, const MultiIndex& b) {
  if (a.n() != b.n()) throw DimensionError("multi-indices over different generator counts");
  if (!a.disjoint(b)) return 0;
  unsigned swaps = 0;
  for (unsigned g : b.generators()) swaps += std::popcount(a.bits() >> g);
  return swaps % 2 == 0 ? 1 : -1;
}

const std::vector<MultiIndex>& all_multi_indices(unsigned n) {
  static std::mutex mutex;
  static std::map<unsigned, std::vector<MultiIndex>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  if (n > MultiIndex::kMaxGenerators) throw DimensionError("too many odd generators");
  std::vector<MultiIndex> all;
  all.reserve(std::size_t{1} << n);
  for (std::uint32_t b = 0; b < (1u << n); ++b) all.emplace_back(n, b);
  std::sort(all.begin(), all.end());
  return cache.emplace(n, std::move(all)).first->second;
}

std::size_t block_position(const MultiIndex& index) {
  const auto& all = all_multi_indices(index.n());
  return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), index) - all.begin());
}

}  // namespace sml
