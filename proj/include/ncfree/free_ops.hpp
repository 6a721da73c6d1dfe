#ifndef NCFREE_FREE_OPS_HPP
#define NCFREE_FREE_OPS_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncfree/cumulant_engine.hpp"
#include "ncfree/distribution.hpp"

namespace ncfree {

/// The two sequences that carry the *-distribution of an R-diagonal
/// element: alpha_n = k_{2n}(a,a*,...,a,a*), beta_n = k_{2n}(a*,a,...,a*,a).
/// Entries beyond floor(order/2) do not exist; querying them is an error,
/// never an implicit zero.
struct RDiagonalSpec {
  int order = 0;
  std::vector<Rational> alpha;
  std::vector<Rational> beta;

  RDiagonalSpec(int order, std::vector<Rational> alpha, std::vector<Rational> beta);

  const Rational& alpha_at(int n) const;  // 1-based
  const Rational& beta_at(int n) const;

  /// The cumulant table over {var}: alternating words get alpha/beta by
  /// their first letter, everything else is zero.
  CumulantTable cumulant_table(const std::string& var = "a") const;
};

RDiagonalSpec rdiag_spec_from_json(const std::string& text);
std::string rdiag_spec_to_json(const RDiagonalSpec& spec);
RDiagonalSpec load_rdiag_spec(const std::string& path);
void save_rdiag_spec(const RDiagonalSpec& spec, const std::string& path);

/// Assigns every variable of an alphabet to a family 1..m.
class FamilyAssignment {
 public:
  explicit FamilyAssignment(std::map<std::string, int> by_name);

  int family_of(const std::string& name) const;
  const std::map<std::string, int>& map() const { return by_name_; }
  /// Throws unless every alphabet variable has a family.
  void require_total(const Alphabet& alphabet) const;

 private:
  std::map<std::string, int> by_name_;
};

/// Joint distribution of free families, realized through their cumulants:
/// single-family words look up the marginal table, mixed words vanish.
/// Moments come out of the moment-cumulant relation on demand, so the
/// joint functional never has to be materialized. Instances memoize and
/// are not safe for concurrent use.
class FreeProduct {
 public:
  /// Marginal cumulant tables over pairwise disjoint alphabets.
  explicit FreeProduct(std::vector<CumulantTable> marginals);

  const Alphabet& alphabet() const;
  const FamilyAssignment& families() const;  // family i+1 = marginal i
  int order() const;                         // smallest marginal order

  Rational cumulant(std::span<const Letter> word) const;
  Rational moment(std::span<const Letter> word) const;
  ScalarFn cumulant_fn() const;
  ScalarFn moment_fn() const;

  /// Full moment table up to `order`; desk scale only.
  MomentFunctional materialize(int order) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// The free product functional: marginal cumulants on single-family words,
/// zero on mixed words, moments recovered from the moment-cumulant
/// relation. Marginals must live on disjoint alphabets and have order at
/// least `order`.
MomentFunctional free_product(const std::vector<MomentFunctional>& marginals, int order);

/// Checks the moment form of freeness: every alternating product of
/// centered variables from distinct neighbouring families has vanishing
/// expectation, for word lengths up to `max_len`.
bool check_freeness_moment_form(const MomentFunctional& phi, const FamilyAssignment& families,
                                int max_len);

/// phi(w) = 1 if w has as many plain as starred letters, 0 otherwise;
/// that is the reduction under u u* = 1 = u* u with phi(u^k) = 0.
MomentFunctional haar_unitary(int order, const std::string& var = "u");

/// True iff the word has even length and strictly alternates in the star
/// flag. All letters must come from one variable.
bool is_alternating(const Word& word);

/// True iff every non-alternating *-cumulant of `var` up to phi's order
/// vanishes.
bool is_r_diagonal(const MomentFunctional& phi, const std::string& var);

/// Moments of the R-diagonal element with the given alternating cumulants.
MomentFunctional r_diagonal_from_spec(const RDiagonalSpec& spec, const std::string& var = "a");

/// k_n(a_1 b_1, ..., a_n b_n) for free families, as the Kreweras-paired sum
/// over NC(n) of k_pi[a] k_{K(pi)}[b].
Rational free_mult_cumulants(const Word& word_a, const Word& word_b, const CumulantTable& k_a,
                             const CumulantTable& k_b);

/// k_n(b a_1 c, ..., b a_n c) for {a_i} free from {b,c}: sum over NC(n) of
/// k_pi[a] times, per block of K(pi), a plain cumulant of (bc,...,bc) for
/// the block containing n and bracket cumulants k(-|c, bc, ..., bc, b|-)
/// for the rest. `cumulant` must cover the joint algebra.
Rational sandwich_cumulants(const Word& word_a, const Word& b, const Word& c,
                            const ScalarFn& cumulant);

/// k_n(aa*, ..., aa*) of an R-diagonal element: sum over NC(n) of
/// alpha_{|V_1|} beta_{|V_2|} ... beta_{|V_r|}, V_1 the block containing 1.
Rational rdiag_aastar_cumulants(const RDiagonalSpec& spec, int n);

/// Alternating cumulants of a product of free R-diagonal elements:
/// k_{2n}(ab, b*a*, ..., ab, b*a*) as the sum over pi in NC(2n) splitting
/// into an odd-position and an even-position partition, with alpha on the
/// block containing 1, beta on the other odd blocks and gamma = alpha_b on
/// the even blocks.
Rational rdiag_product_cumulants(const RDiagonalSpec& spec_a, const RDiagonalSpec& spec_b,
                                 int n);

/// Derived variables realized as words in a base alphabet; the star of a
/// derived letter expands to the adjoint of its base word.
class Realization {
 public:
  explicit Realization(std::vector<std::pair<std::string, Word>> derived);

  const Alphabet& derived_alphabet() const { return alphabet_; }
  Word expand(std::span<const Letter> derived_word) const;

 private:
  Alphabet alphabet_;
  std::vector<Word> base_words_;
};

/// Moments of derived words, evaluated by expanding into the base alphabet
/// and summing base cumulants over non-crossing partitions.
MomentFunctional derived_distribution(const ScalarFn& base_cumulant, const Realization& realization,
                                      int order);
/// Same, over a free product base; skips every family-mixing partition.
MomentFunctional derived_distribution(const FreeProduct& base, const Realization& realization,
                                      int order);

/// Theorem: x is R-diagonal iff (x, x*) and (ux, x*u*) have the same joint
/// distribution for a free Haar unitary u. Builds the free product, expands
/// the derived pair and compares with phi_x.
bool verify_ux_invariance(const MomentFunctional& phi_x, int order);

/// Checks that a^r is R-diagonal (cumulants of derived words via the
/// product-argument theorem vanish off the alternating pattern) and that
/// a^r has the *-distribution of a product of r free copies of a, up to
/// derived order floor(order / r).
bool verify_power_rdiag(const RDiagonalSpec& spec, int power, int order);

}  // namespace ncfree

#endif
