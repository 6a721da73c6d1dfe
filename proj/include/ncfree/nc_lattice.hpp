#ifndef NCFREE_NC_LATTICE_HPP
#define NCFREE_NC_LATTICE_HPP

#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncfree/set_partition.hpp"

namespace ncfree {

/// Largest n for which NC(n) may be enumerated (Catalan(14) = 2674440).
inline constexpr int kMaxNcEnumeration = 14;

/// Visits every element of NC(n) whose blocks pass `can_join`, exactly
/// once, in lexicographic order of restricted growth strings. NC(0) is the
/// single empty partition.
///
/// Generation keeps a stack of open blocks: each element either starts a
/// new block or is appended to an open one, closing everything above it.
/// can_join(first, next) is consulted before element `next` is appended to
/// a block whose smallest element is `first`; pruned branches are never
/// expanded, so a transitive predicate (same family, same parity, ...)
/// restricts the sweep to partitions with predicate-pure blocks.
template <typename CanJoin, typename Visitor>
void for_each_nc_if(int n, CanJoin&& can_join, Visitor&& visit) {
  if (n < 0) throw std::invalid_argument("for_each_nc: negative n");
  if (n > kMaxNcEnumeration) {
    throw std::invalid_argument("for_each_nc: n exceeds enumeration cap " +
                                std::to_string(kMaxNcEnumeration));
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> stack;  // open block ids, bottom to top; ids increase upward
  auto rec = [&](auto&& self, int i) -> void {
    if (i > n) {
      visit(NcPartition(SetPartition(n, blocks)));
      return;
    }
    // choices in increasing block-id order = RGS-lex order
    for (size_t depth = 0; depth < stack.size(); ++depth) {
      int b = stack[depth];
      if (!can_join(blocks[static_cast<size_t>(b)].front(), i)) continue;
      std::vector<int> popped(stack.begin() + static_cast<long>(depth) + 1, stack.end());
      stack.resize(depth + 1);
      blocks[static_cast<size_t>(b)].push_back(i);
      self(self, i + 1);
      blocks[static_cast<size_t>(b)].pop_back();
      stack.insert(stack.end(), popped.begin(), popped.end());
    }
    blocks.push_back({i});
    stack.push_back(static_cast<int>(blocks.size()) - 1);
    self(self, i + 1);
    stack.pop_back();
    blocks.pop_back();
  };
  rec(rec, 1);
}

/// All of NC(n), unfiltered.
template <typename Visitor>
void for_each_nc(int n, Visitor&& visit) {
  for_each_nc_if(
      n, [](int, int) { return true; }, std::forward<Visitor>(visit));
}

/// All of NC(n) in canonical order. Materializes Catalan(n) partitions.
std::vector<NcPartition> enumerate_nc(int n);

/// Refinement order: true iff every block of sigma lies inside a block of
/// pi. Defined for arbitrary set partitions; NC(n) inherits it.
bool leq(const SetPartition& sigma, const SetPartition& pi);
bool leq(const NcPartition& sigma, const NcPartition& pi);

/// Least upper bound in NC(n): transitive-closure union of the blocks,
/// then repeated merging of crossing blocks until non-crossing.
NcPartition join(const NcPartition& pi, const NcPartition& sigma);

/// Greatest lower bound: blockwise intersection.
NcPartition meet(const NcPartition& pi, const NcPartition& sigma);

/// Kreweras complement: the blocks of K(pi) are the cycles of p^-1 ∘ c,
/// where p has the blocks of pi as increasing cycles and c = (1 2 ... n).
NcPartition kreweras(const NcPartition& pi);

/// Moebius function of NC(n) by the defining recursion mu(pi,pi) = 1,
/// sum over [pi,sigma] = 0, memoized on interval keys. Reuse one cache
/// when evaluating many intervals of the same lattice.
class MoebiusCache {
 public:
  /// Requires leq(pi, sigma); throws std::invalid_argument otherwise.
  long long moebius(const NcPartition& pi, const NcPartition& sigma);

 private:
  std::map<std::pair<SetPartition, SetPartition>, long long> memo_;
};

long long moebius(const NcPartition& pi, const NcPartition& sigma);

/// The interval partition {(1..i_1),(i_1+1..i_2),...}; breakpoints must be
/// strictly increasing and end at n.
NcPartition interval_partition(int n, std::span<const int> breakpoints);

}  // namespace ncfree

#endif
