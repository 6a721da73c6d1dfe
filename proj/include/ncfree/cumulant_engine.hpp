#ifndef NCFREE_CUMULANT_ENGINE_HPP
#define NCFREE_CUMULANT_ENGINE_HPP

#include <memory>
#include <vector>

#include "ncfree/distribution.hpp"
#include "ncfree/nc_lattice.hpp"

namespace ncfree {

/// The breakpoints 1 <= i_1 < ... < i_m = n cutting a_1..a_n into the
/// products A_1..A_m; A_j spans positions i_{j-1}+1 .. i_j.
class IntervalGrouping {
 public:
  IntervalGrouping(int n, std::vector<int> breakpoints);

  int n() const { return n_; }
  int group_count() const { return static_cast<int>(breakpoints_.size()); }
  const std::vector<int>& breakpoints() const { return breakpoints_; }
  /// Inclusive 1-based span of product j (0-based j).
  std::pair<int, int> group_range(int j) const;
  /// The interval partition sigma with one block per product.
  const NcPartition& sigma() const { return sigma_; }

 private:
  int n_;
  std::vector<int> breakpoints_;
  NcPartition sigma_;
};

/// k_pi[a_1..a_n]: product over the blocks of pi of the cumulants of the
/// subwords the blocks select.
Rational k_pi_eval(const NcPartition& pi, std::span<const Letter> word, const ScalarFn& cumulant);

/// phi_pi[a_1..a_n]: the same multiplicative extension built from moments.
Rational phi_pi_eval(const NcPartition& pi, std::span<const Letter> word, const ScalarFn& moment);

/// phi(a_1..a_n) = sum over NC(n) of k_pi (one word; the empty word gives 1).
Rational moment_from_cumulants_eval(std::span<const Letter> word, const ScalarFn& cumulant);

/// Cumulants of arbitrary words under a moment callable, by the recursion
/// k_n = phi(a_1..a_n) - sum over pi != 1_n of k_pi. Memoizes across calls;
/// one instance is not safe for concurrent use.
class CumulantSolver {
 public:
  explicit CumulantSolver(ScalarFn moment_fn);

  Rational cumulant(std::span<const Letter> word);
  Rational cumulant(const Word& word) { return cumulant(word.letters()); }
  /// Callable sharing this solver's memo table.
  ScalarFn fn() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Full cumulant table of a functional. Every entry is computed twice:
/// by the recursion and by Moebius inversion sum of mu(pi, 1_n) phi_pi;
/// the two must agree exactly.
CumulantTable cumulants_from_moments(const MomentFunctional& phi);

/// The unique unital functional whose cumulants are the given table.
MomentFunctional moments_from_cumulants(const CumulantTable& cumulants);

/// tau_hat: inflate a partition of the products A_1..A_m to the underlying
/// letters; tau_hat = 1_n iff tau = 1_m.
NcPartition tau_hat(const NcPartition& tau, const IntervalGrouping& grouping);

/// k_tau[A_1,...,A_m] = sum of k_pi[a_1..a_n] over all pi in NC(n) with
/// join(pi, sigma) = tau_hat. tau = 1_m gives the plain cumulant of
/// products k_m(A_1,...,A_m).
Rational cumulant_of_products(const NcPartition& tau, const IntervalGrouping& grouping,
                              std::span<const Letter> word, const ScalarFn& cumulant);

/// Generalized cumulant k^sigma = sum over pi >= sigma of mu(pi,1_n) phi_pi.
/// Also evaluated as sum of k_pi over join(pi, sigma) = 1_n; the two routes
/// must agree exactly.
Rational k_sigma_generalized(const NcPartition& sigma, std::span<const Letter> word,
                             const ScalarFn& moment);
Rational k_sigma_generalized(const NcPartition& sigma, std::span<const Letter> word,
                             const MomentFunctional& phi);

/// Bracket cumulant k(-| c, b_1, ..., b_{m-1}, b |-): the sum of k_pi over
/// pi in NC of the flattened word joining to 1 with the partition that has
/// the c-part and b-part in one block and each middle as an interval.
Rational bracket_cumulant(const Word& front, const std::vector<Word>& middles, const Word& back,
                          const ScalarFn& cumulant);

}  // namespace ncfree

#endif
