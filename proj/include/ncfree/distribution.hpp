#ifndef NCFREE_DISTRIBUTION_HPP
#define NCFREE_DISTRIBUTION_HPP

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>

#include "ncfree/rational.hpp"
#include "ncfree/word.hpp"

namespace ncfree {

/// Raised when a word longer than a table's truncation order is queried.
/// Over-order values are unknown, never zero.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using WordTable = std::map<Word, Rational, WordLess>;

/// Evaluates one word to a scalar; the shape shared by moment and cumulant
/// callables. Views into tables must not outlive them.
using ScalarFn = std::function<Rational(std::span<const Letter>)>;

namespace detail {

/// Storage shared by MomentFunctional and CumulantTable: a total map from
/// the words of length 1..order over a starred alphabet to scalars.
class WordIndexedTable {
 public:
  WordIndexedTable() = default;
  WordIndexedTable(int order, Alphabet alphabet, WordTable table,
                   bool fill_missing_with_zero, const char* what);

  int order() const { return order_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const WordTable& table() const { return table_; }
  const Rational& value(std::span<const Letter> word, const char* what) const;

  friend bool operator==(const WordIndexedTable&, const WordIndexedTable&) = default;

 private:
  int order_ = 0;
  Alphabet alphabet_;
  WordTable table_;
};

}  // namespace detail

/// Truncated unital linear functional: phi on all words of length <= order.
/// The empty word always evaluates to 1.
class MomentFunctional {
 public:
  MomentFunctional() = default;
  /// `moments` must contain every word of length 1..order over the
  /// alphabet; anything missing or extraneous is an error.
  MomentFunctional(int order, Alphabet alphabet, WordTable moments);
  /// Explicit default-0 completion of a partial table.
  static MomentFunctional with_default_zero(int order, Alphabet alphabet, WordTable moments);

  int order() const { return table_.order(); }
  const Alphabet& alphabet() const { return table_.alphabet(); }
  const WordTable& table() const { return table_.table(); }

  Rational operator()(std::span<const Letter> word) const;
  Rational operator()(const Word& word) const { return (*this)(word.letters()); }
  /// Callable view of this functional; keep the functional alive while used.
  ScalarFn fn() const;

  friend bool operator==(const MomentFunctional&, const MomentFunctional&) = default;

 private:
  detail::WordIndexedTable table_;
};

/// Truncated free cumulant family: k_n on all words of length 1..order.
class CumulantTable {
 public:
  CumulantTable() = default;
  CumulantTable(int order, Alphabet alphabet, WordTable cumulants);
  static CumulantTable with_default_zero(int order, Alphabet alphabet, WordTable cumulants);

  int order() const { return table_.order(); }
  const Alphabet& alphabet() const { return table_.alphabet(); }
  const WordTable& table() const { return table_.table(); }

  /// Cumulants take at least one argument; the empty word is an error.
  Rational operator()(std::span<const Letter> word) const;
  Rational operator()(const Word& word) const { return (*this)(word.letters()); }
  ScalarFn fn() const;

  friend bool operator==(const CumulantTable&, const CumulantTable&) = default;

 private:
  detail::WordIndexedTable table_;
};

/// True iff all moments up to the common order agree under the relabeling,
/// which must map lhs's alphabet bijectively onto rhs's. Mismatched orders
/// are an error.
bool same_distribution(const MomentFunctional& lhs, const MomentFunctional& rhs,
                       const std::map<std::string, std::string>& relabel);

/// Restriction of a functional to a smaller truncation order.
MomentFunctional truncate_moments(const MomentFunctional& phi, int order);

// --- file format -----------------------------------------------------------
//
// {"order": N, "alphabet": ["a"], "moments": [{"word": "a a*", "value": "1"},
// ...]} with values as integer or p/q strings. An input may set
// "default": "0" to complete missing words with zero; writers always emit
// the full table in shortlex order, so saved files round-trip byte-exactly.
// Cumulant files use the key "cumulants" instead of "moments".

MomentFunctional moments_from_json(const std::string& text);
std::string moments_to_json(const MomentFunctional& phi);
CumulantTable cumulants_from_json(const std::string& text);
std::string cumulants_to_json(const CumulantTable& k);

MomentFunctional load_moments(const std::string& path);
void save_moments(const MomentFunctional& phi, const std::string& path);
CumulantTable load_cumulants(const std::string& path);
void save_cumulants(const CumulantTable& k, const std::string& path);

}  // namespace ncfree

#endif
