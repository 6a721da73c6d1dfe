#include "oracle.hpp"
#include <algorithm>

#include <map>
#include <stdexcept>

namespace ncfree::oracle {

namespace {

void require_cap(int n, int cap, const char* what) {
  if (n > cap) {
    throw std::invalid_argument(std::string(what) + ": n exceeds the oracle cap " +
                                std::to_string(cap));
  }
}

}  // namespace

std::vector<SetPartition> oracle_all_partitions(int n) {
  require_cap(n, kMaxAllPartitions, "oracle_all_partitions");
  std::vector<SetPartition> out;
  std::vector<std::vector<int>> blocks;
  auto place = [&](auto&& self, int element) -> void {
    if (element > n) {
      out.emplace_back(n, blocks);
      return;
    }
    // index loop: recursion grows and shrinks `blocks` underneath us
    size_t existing = blocks.size();
    for (size_t b = 0; b < existing; ++b) {
      blocks[b].push_back(element);
      self(self, element + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({element});
    self(self, element + 1);
    blocks.pop_back();
  };
  place(place, 1);
  return out;
}

bool oracle_is_noncrossing(const SetPartition& p) {
  int n = p.n();
  for (int p1 = 1; p1 <= n; ++p1) {
    for (int q1 = p1 + 1; q1 <= n; ++q1) {
      for (int p2 = q1 + 1; p2 <= n; ++p2) {
        for (int q2 = p2 + 1; q2 <= n; ++q2) {
          if (p.same_block(p1, p2) && p.same_block(q1, q2) && !p.same_block(p1, q1)) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

std::vector<NcPartition> oracle_enumerate_nc(int n) {
  std::vector<NcPartition> out;
  for (const SetPartition& p : oracle_all_partitions(n)) {
    if (oracle_is_noncrossing(p)) out.emplace_back(p);
  }
  return out;
}

bool oracle_leq(const NcPartition& sigma, const NcPartition& pi) {
  for (const auto& small : sigma.blocks()) {
    bool inside_some = false;
    for (const auto& big : pi.blocks()) {
      bool inside = true;
      for (int e : small) {
        bool found = false;
        for (int f : big) found = found || (e == f);
        inside = inside && found;
      }
      inside_some = inside_some || inside;
    }
    if (!inside_some) return false;
  }
  return true;
}

NcPartition oracle_join(const NcPartition& pi, const NcPartition& sigma) {
  require_cap(pi.n(), kMaxScan, "oracle_join");
  std::vector<NcPartition> candidates;
  for (const NcPartition& tau : oracle_enumerate_nc(pi.n())) {
    if (oracle_leq(pi, tau) && oracle_leq(sigma, tau)) candidates.push_back(tau);
  }
  for (const NcPartition& tau : candidates) {
    bool smallest = true;
    for (const NcPartition& other : candidates) smallest = smallest && oracle_leq(tau, other);
    if (smallest) return tau;
  }
  throw std::logic_error("oracle_join: no unique smallest upper bound");
}

NcPartition oracle_meet(const NcPartition& pi, const NcPartition& sigma) {
  require_cap(pi.n(), kMaxScan, "oracle_meet");
  std::vector<NcPartition> candidates;
  for (const NcPartition& tau : oracle_enumerate_nc(pi.n())) {
    if (oracle_leq(tau, pi) && oracle_leq(tau, sigma)) candidates.push_back(tau);
  }
  for (const NcPartition& tau : candidates) {
    bool biggest = true;
    for (const NcPartition& other : candidates) biggest = biggest && oracle_leq(other, tau);
    if (biggest) return tau;
  }
  throw std::logic_error("oracle_meet: no unique biggest lower bound");
}

NcPartition oracle_kreweras(const NcPartition& pi) {
  require_cap(pi.n(), kMaxScan, "oracle_kreweras");
  int n = pi.n();
  std::vector<NcPartition> admissible;
  for (const NcPartition& sigma : oracle_enumerate_nc(n)) {
    // pi on 1,3,...,2n-1 and sigma on 2,4,...,2n
    std::vector<std::vector<int>> blocks;
    for (const auto& block : pi.blocks()) {
      std::vector<int> mapped;
      for (int e : block) mapped.push_back(2 * e - 1);
      blocks.push_back(std::move(mapped));
    }
    for (const auto& block : sigma.blocks()) {
      std::vector<int> mapped;
      for (int e : block) mapped.push_back(2 * e);
      blocks.push_back(std::move(mapped));
    }
    if (oracle_is_noncrossing(SetPartition(2 * n, std::move(blocks)))) {
      admissible.push_back(sigma);
    }
  }
  for (const NcPartition& sigma : admissible) {
    bool biggest = true;
    for (const NcPartition& other : admissible) biggest = biggest && oracle_leq(other, sigma);
    if (biggest) return sigma;
  }
  throw std::logic_error("oracle_kreweras: no unique biggest admissible partition");
}

long long oracle_moebius(const NcPartition& pi, const NcPartition& sigma) {
  require_cap(pi.n(), kMaxScan, "oracle_moebius");
  if (!oracle_leq(pi, sigma)) {
    throw std::invalid_argument("oracle_moebius: arguments are not comparable");
  }
  // Column of the inverted zeta matrix at sigma, from the dual identity
  // sum over x <= z <= sigma of mu(z, sigma) = 0. A strict coarsening has
  // strictly fewer blocks, so filling in coarsest-first is well-ordered.
  std::vector<NcPartition> all = oracle_enumerate_nc(pi.n());
  std::sort(all.begin(), all.end(), [](const NcPartition& a, const NcPartition& b) {
    return a.block_count() < b.block_count();
  });
  std::map<SetPartition, long long> mu_to_sigma;
  for (const NcPartition& x : all) {
    if (!oracle_leq(x, sigma)) continue;
    long long value = 1;
    if (x != sigma) {
      long long sum = 0;
      for (const auto& [z, mu] : mu_to_sigma) {
        NcPartition zp(z);
        if (oracle_leq(x, zp) && oracle_leq(zp, sigma) && !(zp == x)) sum += mu;
      }
      value = -sum;
    }
    mu_to_sigma[x.partition()] = value;
  }
  return mu_to_sigma.at(pi.partition());
}

Rational oracle_moment_from_cumulants(std::span<const Letter> word, const ScalarFn& cumulant) {
  if (word.empty()) return Rational(1);
  Rational total(0);
  for (const NcPartition& pi : oracle_enumerate_nc(static_cast<int>(word.size()))) {
    Rational product(1);
    for (const auto& block : pi.blocks()) {
      std::vector<Letter> sub;
      for (int position : block) sub.push_back(word[static_cast<size_t>(position - 1)]);
      product *= cumulant(std::span<const Letter>(sub));
    }
    total += product;
  }
  return total;
}

}  // namespace ncfree::oracle
