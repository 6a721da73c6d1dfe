#include "ncfree/distribution.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ncfree {

namespace detail {

namespace {

// Number of words of length 1..order over 2*vars symbols, clamped.
long long word_domain_size(int vars, int order) {
  const long long limit = 5'000'000;
  long long total = 0;
  long long pow = 1;
  for (int len = 1; len <= order; ++len) {
    pow *= 2LL * vars;
    total += pow;
    if (total > limit || pow > limit) return limit + 1;
  }
  return total;
}

}  // namespace

WordIndexedTable::WordIndexedTable(int order, Alphabet alphabet, WordTable table,
                                   bool fill_missing_with_zero, const char* what)
    : order_(order), alphabet_(std::move(alphabet)), table_(std::move(table)) {
  if (order < 1) throw std::invalid_argument(std::string(what) + ": order must be >= 1");
  if (alphabet_.size() < 1) throw std::invalid_argument(std::string(what) + ": empty alphabet");
  if (word_domain_size(alphabet_.size(), order) > 5'000'000) {
    throw std::invalid_argument(std::string(what) +
                                ": word domain too large to materialize");
  }
  size_t expected = 0;
  for_each_word(alphabet_.size(), 1, order_, [&](std::span<const Letter> w) {
    ++expected;
    auto it = table_.find(w);
    if (it == table_.end()) {
      if (!fill_missing_with_zero) {
        throw std::invalid_argument(std::string(what) + ": missing word '" +
                                    word_to_string(w, alphabet_) + "'");
      }
      table_.emplace(Word(std::vector<Letter>(w.begin(), w.end())), Rational(0));
    }
  });
  if (table_.size() != expected) {
    throw std::invalid_argument(std::string(what) +
                                ": table contains words outside its domain");
  }
}

const Rational& WordIndexedTable::value(std::span<const Letter> word, const char* what) const {
  if (static_cast<int>(word.size()) > order_) {
    throw TruncationError(std::string(what) + ": word of length " +
                          std::to_string(word.size()) + " exceeds truncation order " +
                          std::to_string(order_));
  }
  auto it = table_.find(word);
  if (it == table_.end()) {
    throw std::logic_error(std::string(what) + ": word missing from total table");
  }
  return it->second;
}

}  // namespace detail

MomentFunctional::MomentFunctional(int order, Alphabet alphabet, WordTable moments)
    : table_(order, std::move(alphabet), std::move(moments), false, "moment functional") {}

MomentFunctional MomentFunctional::with_default_zero(int order, Alphabet alphabet,
                                                     WordTable moments) {
  MomentFunctional out;
  out.table_ = detail::WordIndexedTable(order, std::move(alphabet), std::move(moments), true,
                                        "moment functional");
  return out;
}

Rational MomentFunctional::operator()(std::span<const Letter> word) const {
  if (word.empty()) return Rational(1);  // phi(1) = 1
  return table_.value(word, "moment functional");
}

ScalarFn MomentFunctional::fn() const {
  return [this](std::span<const Letter> w) { return (*this)(w); };
}

CumulantTable::CumulantTable(int order, Alphabet alphabet, WordTable cumulants)
    : table_(order, std::move(alphabet), std::move(cumulants), false, "cumulant table") {}

CumulantTable CumulantTable::with_default_zero(int order, Alphabet alphabet,
                                               WordTable cumulants) {
  CumulantTable out;
  out.table_ = detail::WordIndexedTable(order, std::move(alphabet), std::move(cumulants), true,
                                        "cumulant table");
  return out;
}

Rational CumulantTable::operator()(std::span<const Letter> word) const {
  if (word.empty()) throw std::invalid_argument("cumulant of the empty word is undefined");
  return table_.value(word, "cumulant table");
}

ScalarFn CumulantTable::fn() const {
  return [this](std::span<const Letter> w) { return (*this)(w); };
}

bool same_distribution(const MomentFunctional& lhs, const MomentFunctional& rhs,
                       const std::map<std::string, std::string>& relabel) {
  if (lhs.order() != rhs.order()) {
    throw std::invalid_argument("same_distribution: mismatched truncation orders");
  }
  if (static_cast<int>(relabel.size()) != lhs.alphabet().size() ||
      lhs.alphabet().size() != rhs.alphabet().size()) {
    throw std::invalid_argument("same_distribution: relabeling is not a bijection");
  }
  std::vector<int> image(static_cast<size_t>(lhs.alphabet().size()));
  std::vector<char> hit(static_cast<size_t>(rhs.alphabet().size()), 0);
  for (const auto& [from, to] : relabel) {
    int src = lhs.alphabet().index(from);
    int dst = rhs.alphabet().index(to);
    if (hit[static_cast<size_t>(dst)]) {
      throw std::invalid_argument("same_distribution: relabeling is not injective");
    }
    hit[static_cast<size_t>(dst)] = 1;
    image[static_cast<size_t>(src)] = dst;
  }
  bool equal = true;
  std::vector<Letter> mapped;
  for_each_word(lhs.alphabet().size(), 1, lhs.order(), [&](std::span<const Letter> w) {
    if (!equal) return;
    mapped.assign(w.begin(), w.end());
    for (Letter& l : mapped) l.var = image[static_cast<size_t>(l.var)];
    if (lhs(w) != rhs(std::span<const Letter>(mapped))) equal = false;
  });
  return equal;
}

MomentFunctional truncate_moments(const MomentFunctional& phi, int order) {
  if (order > phi.order()) {
    throw TruncationError("truncate_moments: requested order exceeds the source order");
  }
  if (order == phi.order()) return phi;
  WordTable table;
  for_each_word(phi.alphabet().size(), 1, order, [&](std::span<const Letter> w) {
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())), phi(w));
  });
  return MomentFunctional(order, phi.alphabet(), std::move(table));
}

namespace {

using nlohmann::ordered_json;

ordered_json table_to_json(int order, const Alphabet& alphabet, const WordTable& table,
                           const char* key) {
  ordered_json doc;
  doc["order"] = order;
  doc["alphabet"] = alphabet.names();
  ordered_json entries = ordered_json::array();
  for (const auto& [word, value] : table) {
    ordered_json entry;
    entry["word"] = word_to_string(word.letters(), alphabet);
    entry["value"] = rational_to_string(value);
    entries.push_back(std::move(entry));
  }
  doc[key] = std::move(entries);
  return doc;
}

struct ParsedTable {
  int order = 0;
  Alphabet alphabet;
  WordTable table;
  bool default_zero = false;
};

ParsedTable table_from_json(const std::string& text, const char* key) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("alphabet") ||
      !doc.contains(key)) {
    throw std::invalid_argument(std::string("distribution file needs order, alphabet and ") +
                                key);
  }
  ParsedTable out;
  out.order = doc.at("order").get<int>();
  out.alphabet = Alphabet(doc.at("alphabet").get<std::vector<std::string>>());
  if (doc.contains("default")) {
    if (doc.at("default").get<std::string>() != "0") {
      throw std::invalid_argument("only \"default\": \"0\" is supported");
    }
    out.default_zero = true;
  }
  try {
    for (const auto& entry : doc.at(key)) {
      Word word = parse_word(entry.at("word").get<std::string>(), out.alphabet);
      Rational value = rational_from_string(entry.at("value").get<std::string>());
      if (word.empty()) throw std::invalid_argument("the empty word may not appear in a table");
      if (!out.table.emplace(std::move(word), std::move(value)).second) {
        throw std::invalid_argument("duplicate word entry: '" +
                                    entry.at("word").get<std::string>() + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed table entry: ") + e.what());
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << body;
}

}  // namespace

MomentFunctional moments_from_json(const std::string& text) {
  ParsedTable parsed = table_from_json(text, "moments");
  if (parsed.default_zero) {
    return MomentFunctional::with_default_zero(parsed.order, std::move(parsed.alphabet),
                                               std::move(parsed.table));
  }
  return MomentFunctional(parsed.order, std::move(parsed.alphabet), std::move(parsed.table));
}

std::string moments_to_json(const MomentFunctional& phi) {
  return table_to_json(phi.order(), phi.alphabet(), phi.table(), "moments").dump(2) + "\n";
}

CumulantTable cumulants_from_json(const std::string& text) {
  ParsedTable parsed = table_from_json(text, "cumulants");
  if (parsed.default_zero) {
    return CumulantTable::with_default_zero(parsed.order, std::move(parsed.alphabet),
                                            std::move(parsed.table));
  }
  return CumulantTable(parsed.order, std::move(parsed.alphabet), std::move(parsed.table));
}

std::string cumulants_to_json(const CumulantTable& k) {
  return table_to_json(k.order(), k.alphabet(), k.table(), "cumulants").dump(2) + "\n";
}

MomentFunctional load_moments(const std::string& path) {
  return moments_from_json(read_file(path));
}

void save_moments(const MomentFunctional& phi, const std::string& path) {
  write_file(path, moments_to_json(phi));
}

CumulantTable load_cumulants(const std::string& path) {
  return cumulants_from_json(read_file(path));
}

void save_cumulants(const CumulantTable& k, const std::string& path) {
  write_file(path, cumulants_to_json(k));
}

}  // namespace ncfree
