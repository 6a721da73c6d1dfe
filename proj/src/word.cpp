#include "ncfree/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ncfree {

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (!valid_identifier(names_[i])) {
      throw std::invalid_argument("invalid variable name: '" + names_[i] + "'");
    }
    for (size_t j = 0; j < i; ++j) {
      if (names_[j] == names_[i]) {
        throw std::invalid_argument("duplicate variable name: '" + names_[i] + "'");
      }
    }
  }
}

const std::string& Alphabet::name(int var) const {
  if (var < 0 || var >= size()) throw std::out_of_range("variable index out of range");
  return names_[static_cast<size_t>(var)];
}

int Alphabet::index(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (names_[static_cast<size_t>(i)] == name) return i;
  }
  throw std::invalid_argument("unknown variable: '" + std::string(name) + "'");
}

bool Alphabet::contains(std::string_view name) const {
  return std::any_of(names_.begin(), names_.end(),
                     [&](const std::string& n) { return n == name; });
}

Word& Word::append(std::span<const Letter> tail) {
  letters_.insert(letters_.end(), tail.begin(), tail.end());
  return *this;
}

Word Word::adjoint() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l.starred = !l.starred;
  return Word(std::move(out));
}

Word Word::subword(std::span<const int> positions) const {
  std::vector<Letter> out;
  out.reserve(positions.size());
  for (int p : positions) {
    if (p < 1 || p > size()) throw std::out_of_range("subword position out of range");
    out.push_back(letters_[static_cast<size_t>(p - 1)]);
  }
  return Word(std::move(out));
}

std::strong_ordering compare_words(std::span<const Letter> a, std::span<const Letter> b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  std::vector<Letter> letters;
  size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view token = text.substr(i, j - i);
    bool starred = false;
    if (token.ends_with('*')) {
      starred = true;
      token.remove_suffix(1);
    }
    if (!valid_identifier(token)) {
      throw std::invalid_argument("malformed letter token: '" +
                                  std::string(text.substr(i, j - i)) + "'");
    }
    letters.push_back(Letter{alphabet.index(token), starred});
    i = j;
  }
  return Word(std::move(letters));
}

Word relabel_word(const Word& word, const Alphabet& from, const Alphabet& to) {
  std::vector<Letter> out(word.begin(), word.end());
  for (Letter& l : out) l.var = to.index(from.name(l.var));
  return Word(std::move(out));
}

std::string word_to_string(std::span<const Letter> word, const Alphabet& alphabet) {
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ' ';
    out += alphabet.name(word[i].var);
    if (word[i].starred) out += '*';
  }
  return out;
}

}  // namespace ncfree
