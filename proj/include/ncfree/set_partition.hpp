#ifndef NCFREE_SET_PARTITION_HPP
#define NCFREE_SET_PARTITION_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace ncfree {

/// A set partition of {1..n} in canonical form: elements increasing inside
/// each block, blocks ordered by their minimum. n = 0 is the empty partition.
class SetPartition {
 public:
  SetPartition() = default;
  /// Accepts blocks in any order and canonicalizes them; throws
  /// std::invalid_argument unless the blocks are disjoint, nonempty and
  /// cover {1..n} exactly.
  SetPartition(int n, std::vector<std::vector<int>> blocks);

  static SetPartition singletons(int n);  // 0_n
  static SetPartition full(int n);        // 1_n

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& block(int index) const { return blocks_[static_cast<size_t>(index)]; }

  /// 0-based index of the block containing `element` (1-based).
  int block_index_of(int element) const;
  bool same_block(int p, int q) const { return block_index_of(p) == block_index_of(q); }

  /// r[i-1] = block index of element i; blocks are numbered in order of
  /// first appearance, so this is a restricted growth string.
  const std::vector<int>& restricted_growth_string() const { return block_of_; }

  std::string str() const;
  /// Parses "{(1,2,7),(3),(4,6),(5),(8)}"; arbitrary whitespace allowed
  /// between tokens. n is inferred from the element set.
  static SetPartition parse(std::string_view text);

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.n_ == b.n_ && a.block_of_ == b.block_of_;
  }
  friend auto operator<=>(const SetPartition& a, const SetPartition& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.block_of_ <=> b.block_of_;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> block_of_;  // per element, 0-based block index
};

/// True iff no p1 < q1 < p2 < q2 exists with p1 ~ p2 in one block and
/// q1 ~ q2 in a different block. Single left-to-right pass, O(n).
bool is_noncrossing(const SetPartition& p);

/// A SetPartition with the non-crossing invariant, checked on construction.
class NcPartition {
 public:
  explicit NcPartition(SetPartition p);

  static NcPartition singletons(int n) { return NcPartition(SetPartition::singletons(n)); }
  static NcPartition full(int n) { return NcPartition(SetPartition::full(n)); }
  static NcPartition parse(std::string_view text) { return NcPartition(SetPartition::parse(text)); }

  const SetPartition& partition() const { return p_; }
  int n() const { return p_.n(); }
  const std::vector<std::vector<int>>& blocks() const { return p_.blocks(); }
  int block_count() const { return p_.block_count(); }
  const std::vector<int>& block(int index) const { return p_.block(index); }
  int block_index_of(int element) const { return p_.block_index_of(element); }
  bool same_block(int p, int q) const { return p_.same_block(p, q); }
  std::string str() const { return p_.str(); }

  friend bool operator==(const NcPartition& a, const NcPartition& b) { return a.p_ == b.p_; }
  friend auto operator<=>(const NcPartition& a, const NcPartition& b) { return a.p_ <=> b.p_; }

 private:
  SetPartition p_;
};

}  // namespace ncfree

#endif
