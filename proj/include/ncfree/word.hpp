#ifndef NCFREE_WORD_HPP
#define NCFREE_WORD_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncfree {

/// One symbol of a *-alphabet: a declared variable, possibly starred.
struct Letter {
  int var = 0;
  bool starred = false;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;

  Letter star() const { return Letter{var, !starred}; }
};

/// The declared variable names of a distribution. Letters refer to
/// variables by index into this list.
class Alphabet {
 public:
  Alphabet() = default;
  /// Names must be unique, nonempty identifiers ([A-Za-z_][A-Za-z0-9_]*).
  explicit Alphabet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int var) const;
  const std::vector<std::string>& names() const { return names_; }
  /// Index of a declared variable; throws std::invalid_argument if unknown.
  int index(std::string_view name) const;
  bool contains(std::string_view name) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A finite sequence of letters; the tuple the functionals are applied to.
/// The empty word stands for the algebra unit.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](int i) const { return letters_[static_cast<size_t>(i)]; }
  std::span<const Letter> letters() const { return letters_; }
  operator std::span<const Letter>() const { return letters_; }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  Word& append(std::span<const Letter> tail);

  /// Reverses the word and flips every star flag (the *-involution).
  Word adjoint() const;

  /// Sub-tuple selected by 1-based positions, order preserved.
  Word subword(std::span<const int> positions) const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

 private:
  std::vector<Letter> letters_;
};

/// Shortlex order on letter sequences (length first, then lexicographic);
/// fixes the canonical serialization order of word tables.
std::strong_ordering compare_words(std::span<const Letter> a, std::span<const Letter> b);

/// Transparent comparator so tables can be probed with a bare span
/// without materializing a Word.
struct WordLess {
  using is_transparent = void;
  bool operator()(std::span<const Letter> a, std::span<const Letter> b) const {
    return compare_words(a, b) == std::strong_ordering::less;
  }
};

/// Parses whitespace-separated letters; `a*` is the starred variable `a`.
/// Unknown identifiers and malformed tokens throw std::invalid_argument.
Word parse_word(std::string_view text, const Alphabet& alphabet);

std::string word_to_string(std::span<const Letter> word, const Alphabet& alphabet);

/// Re-indexes a word into another alphabet by variable name.
Word relabel_word(const Word& word, const Alphabet& from, const Alphabet& to);

/// Visits every word over `alphabet_size` variables (each plain or starred)
/// of length min_len..max_len, in shortlex order.
template <typename Visitor>
void for_each_word(int alphabet_size, int min_len, int max_len, Visitor&& visit) {
  std::vector<Letter> word;
  auto rec = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      visit(std::span<const Letter>(word));
      return;
    }
    for (int v = 0; v < alphabet_size; ++v) {
      for (bool star : {false, true}) {
        word.push_back(Letter{v, star});
        self(self, remaining - 1);
        word.pop_back();
      }
    }
  };
  for (int len = min_len; len <= max_len; ++len) rec(rec, len);
}

}  // namespace ncfree

#endif
