#include "ncfree/nc_lattice.hpp"

#include <algorithm>
#include <map>

#include "ncfree/detail/union_find.hpp"

namespace ncfree {

namespace {

/// Canonical blocks of the partition induced by union-find roots on 1..n.
std::vector<std::vector<int>> blocks_from_union_find(detail::UnionFind& uf, int n) {
  std::map<int, std::vector<int>> by_root;
  for (int i = 1; i <= n; ++i) by_root[uf.find(i - 1)].push_back(i);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(by_root.size());
  for (auto& [root, elems] : by_root) blocks.push_back(std::move(elems));
  return blocks;
}

/// Finds one crossing pair of blocks, or {-1,-1} if the partition is
/// non-crossing. Same stack scan as is_noncrossing, but reports the pair.
std::pair<int, int> find_crossing_blocks(const SetPartition& p) {
  const std::vector<int>& block_of = p.restricted_growth_string();
  std::vector<int> seen(static_cast<size_t>(p.block_count()), 0);
  std::vector<char> open(static_cast<size_t>(p.block_count()), 0);
  std::vector<int> stack;
  for (int i = 1; i <= p.n(); ++i) {
    int b = block_of[static_cast<size_t>(i - 1)];
    if (seen[static_cast<size_t>(b)] == 0) {
      stack.push_back(b);
      open[static_cast<size_t>(b)] = 1;
    } else {
      while (stack.back() != b) {
        int t = stack.back();
        if (seen[static_cast<size_t>(t)] < static_cast<int>(p.block(t).size())) {
          return {b, t};
        }
        stack.pop_back();
        open[static_cast<size_t>(t)] = 0;
      }
    }
    ++seen[static_cast<size_t>(b)];
  }
  return {-1, -1};
}

void require_same_n(const NcPartition& a, const NcPartition& b, const char* op) {
  if (a.n() != b.n()) {
    throw std::invalid_argument(std::string(op) + ": partitions live on different ground sets");
  }
}

}  // namespace

std::vector<NcPartition> enumerate_nc(int n) {
  std::vector<NcPartition> out;
  for_each_nc(n, [&](const NcPartition& p) { out.push_back(p); });
  return out;
}

bool leq(const SetPartition& sigma, const SetPartition& pi) {
  if (sigma.n() != pi.n()) {
    throw std::invalid_argument("leq: partitions live on different ground sets");
  }
  for (const auto& block : sigma.blocks()) {
    int target = pi.block_index_of(block.front());
    for (int e : block) {
      if (pi.block_index_of(e) != target) return false;
    }
  }
  return true;
}

bool leq(const NcPartition& sigma, const NcPartition& pi) {
  return leq(sigma.partition(), pi.partition());
}

NcPartition join(const NcPartition& pi, const NcPartition& sigma) {
  require_same_n(pi, sigma, "join");
  int n = pi.n();
  detail::UnionFind uf(n);
  for (const auto* part : {&pi, &sigma}) {
    for (const auto& block : part->blocks()) {
      for (size_t i = 1; i < block.size(); ++i) uf.merge(block[0] - 1, block[i] - 1);
    }
  }
  for (;;) {
    SetPartition candidate(n, blocks_from_union_find(uf, n));
    auto [a, b] = find_crossing_blocks(candidate);
    if (a < 0) return NcPartition(std::move(candidate));
    uf.merge(candidate.block(a).front() - 1, candidate.block(b).front() - 1);
  }
}

NcPartition meet(const NcPartition& pi, const NcPartition& sigma) {
  require_same_n(pi, sigma, "meet");
  int n = pi.n();
  std::map<std::pair<int, int>, std::vector<int>> cells;
  for (int i = 1; i <= n; ++i) {
    cells[{pi.block_index_of(i), sigma.block_index_of(i)}].push_back(i);
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(cells.size());
  for (auto& [key, elems] : cells) blocks.push_back(std::move(elems));
  return NcPartition(SetPartition(n, std::move(blocks)));
}

NcPartition kreweras(const NcPartition& pi) {
  int n = pi.n();
  if (n == 0) return pi;
  std::vector<int> perm(static_cast<size_t>(n));  // p: block cycles, increasing
  for (const auto& block : pi.blocks()) {
    for (size_t i = 0; i < block.size(); ++i) {
      perm[static_cast<size_t>(block[i] - 1)] = block[(i + 1) % block.size()] - 1;
    }
  }
  std::vector<int> inv(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) inv[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
  // f = p^-1 ∘ c with c the long cycle (1 2 ... n)
  std::vector<int> f(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)] = inv[static_cast<size_t>((i + 1) % n)];
  std::vector<char> visited(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> blocks;
  for (int start = 0; start < n; ++start) {
    if (visited[static_cast<size_t>(start)]) continue;
    std::vector<int> cycle;
    for (int x = start; !visited[static_cast<size_t>(x)]; x = f[static_cast<size_t>(x)]) {
      visited[static_cast<size_t>(x)] = 1;
      cycle.push_back(x + 1);
    }
    blocks.push_back(std::move(cycle));
  }
  return NcPartition(SetPartition(n, std::move(blocks)));
}

long long MoebiusCache::moebius(const NcPartition& pi, const NcPartition& sigma) {
  if (!leq(pi, sigma)) {
    throw std::invalid_argument("moebius: lower bound does not refine upper bound");
  }
  if (pi == sigma) return 1;
  auto key = std::make_pair(pi.partition(), sigma.partition());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  long long sum = 0;
  for_each_nc(pi.n(), [&](const NcPartition& tau) {
    if (tau == sigma) return;
    if (leq(pi, tau) && leq(tau, sigma)) sum += moebius(pi, tau);
  });
  long long value = -sum;
  memo_.emplace(std::move(key), value);
  return value;
}

long long moebius(const NcPartition& pi, const NcPartition& sigma) {
  MoebiusCache cache;
  return cache.moebius(pi, sigma);
}

NcPartition interval_partition(int n, std::span<const int> breakpoints) {
  if (breakpoints.empty() || breakpoints.back() != n) {
    throw std::invalid_argument("interval_partition: breakpoints must end at n");
  }
  std::vector<std::vector<int>> blocks;
  int prev = 0;
  for (int bp : breakpoints) {
    if (bp <= prev) {
      throw std::invalid_argument("interval_partition: breakpoints must be strictly increasing");
    }
    std::vector<int> block;
    for (int e = prev + 1; e <= bp; ++e) block.push_back(e);
    blocks.push_back(std::move(block));
    prev = bp;
  }
  return NcPartition(SetPartition(n, std::move(blocks)));
}

}  // namespace ncfree
