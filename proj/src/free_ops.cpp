#include "ncfree/free_ops.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ncfree {

RDiagonalSpec::RDiagonalSpec(int order_, std::vector<Rational> alpha_,
                             std::vector<Rational> beta_)
    : order(order_), alpha(std::move(alpha_)), beta(std::move(beta_)) {
  if (order < 1) throw std::invalid_argument("R-diagonal spec: order must be >= 1");
  size_t expected = static_cast<size_t>(order / 2);
  if (alpha.size() != expected || beta.size() != expected) {
    throw std::invalid_argument(
        "R-diagonal spec: alpha and beta must each have floor(order/2) entries");
  }
}

const Rational& RDiagonalSpec::alpha_at(int n) const {
  if (n < 1 || static_cast<size_t>(n) > alpha.size()) {
    throw TruncationError("R-diagonal spec: alpha_" + std::to_string(n) +
                          " is beyond the truncation order");
  }
  return alpha[static_cast<size_t>(n - 1)];
}

const Rational& RDiagonalSpec::beta_at(int n) const {
  if (n < 1 || static_cast<size_t>(n) > beta.size()) {
    throw TruncationError("R-diagonal spec: beta_" + std::to_string(n) +
                          " is beyond the truncation order");
  }
  return beta[static_cast<size_t>(n - 1)];
}

CumulantTable RDiagonalSpec::cumulant_table(const std::string& var) const {
  Alphabet alphabet({var});
  WordTable table;
  for_each_word(1, 1, order, [&](std::span<const Letter> w) {
    Rational value(0);
    int len = static_cast<int>(w.size());
    bool alternating = len % 2 == 0;
    for (size_t i = 0; i + 1 < w.size() && alternating; ++i) {
      if (w[i].starred == w[i + 1].starred) alternating = false;
    }
    if (alternating) value = w[0].starred ? beta_at(len / 2) : alpha_at(len / 2);
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())), std::move(value));
  });
  return CumulantTable(order, std::move(alphabet), std::move(table));
}

namespace {

using nlohmann::ordered_json;

std::vector<Rational> rationals_from_json(const ordered_json& list) {
  std::vector<Rational> out;
  for (const auto& item : list) out.push_back(rational_from_string(item.get<std::string>()));
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

RDiagonalSpec rdiag_spec_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("alpha") ||
      !doc.contains("beta")) {
    throw std::invalid_argument("R-diagonal spec file needs order, alpha and beta");
  }
  try {
    return RDiagonalSpec(doc.at("order").get<int>(), rationals_from_json(doc.at("alpha")),
                         rationals_from_json(doc.at("beta")));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed spec entry: ") + e.what());
  }
}

std::string rdiag_spec_to_json(const RDiagonalSpec& spec) {
  ordered_json doc;
  doc["order"] = spec.order;
  ordered_json alpha = ordered_json::array();
  for (const Rational& a : spec.alpha) alpha.push_back(rational_to_string(a));
  ordered_json beta = ordered_json::array();
  for (const Rational& b : spec.beta) beta.push_back(rational_to_string(b));
  doc["alpha"] = std::move(alpha);
  doc["beta"] = std::move(beta);
  return doc.dump(2) + "\n";
}

RDiagonalSpec load_rdiag_spec(const std::string& path) {
  return rdiag_spec_from_json(read_file(path));
}

void save_rdiag_spec(const RDiagonalSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << rdiag_spec_to_json(spec);
}

FamilyAssignment::FamilyAssignment(std::map<std::string, int> by_name)
    : by_name_(std::move(by_name)) {
  for (const auto& [name, family] : by_name_) {
    if (family < 1) {
      throw std::invalid_argument("family indices start at 1; got " + std::to_string(family) +
                                  " for '" + name + "'");
    }
  }
}

int FamilyAssignment::family_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) {
    throw std::invalid_argument("no family assigned to variable '" + name + "'");
  }
  return it->second;
}

void FamilyAssignment::require_total(const Alphabet& alphabet) const {
  for (const std::string& name : alphabet.names()) family_of(name);
}

struct FreeProduct::State {
  std::vector<CumulantTable> marginals;
  Alphabet alphabet;
  FamilyAssignment families{std::map<std::string, int>{}};
  std::vector<int> family_of_var;   // joint var -> marginal index
  std::vector<int> var_in_marginal; // joint var -> var index in its marginal
  int order = 0;
  WordTable moment_memo;

  Rational cumulant(std::span<const Letter> word) const {
    if (word.empty()) throw std::invalid_argument("cumulant of the empty word is undefined");
    int family = family_of_var[static_cast<size_t>(word[0].var)];
    for (const Letter& l : word) {
      if (family_of_var[static_cast<size_t>(l.var)] != family) return Rational(0);
    }
    std::vector<Letter> local(word.begin(), word.end());
    for (Letter& l : local) l.var = var_in_marginal[static_cast<size_t>(l.var)];
    return marginals[static_cast<size_t>(family)](std::span<const Letter>(local));
  }

  Rational moment(std::span<const Letter> word) {
    if (word.empty()) return Rational(1);
    if (auto it = moment_memo.find(word); it != moment_memo.end()) return it->second;
    // mixed blocks vanish, so restrict the sum to family-pure partitions
    Rational value(0);
    std::vector<Letter> sub;
    for_each_nc_if(
        static_cast<int>(word.size()),
        [&](int first, int next) {
          return family_of_var[static_cast<size_t>(word[static_cast<size_t>(first - 1)].var)] ==
                 family_of_var[static_cast<size_t>(word[static_cast<size_t>(next - 1)].var)];
        },
        [&](const NcPartition& pi) {
          Rational product(1);
          for (const auto& block : pi.blocks()) {
            sub.clear();
            for (int pos : block) sub.push_back(word[static_cast<size_t>(pos - 1)]);
            Rational factor = cumulant(std::span<const Letter>(sub));
            if (factor == 0) return;
            product *= factor;
          }
          value += product;
        });
    moment_memo.emplace(Word(std::vector<Letter>(word.begin(), word.end())), value);
    return value;
  }
};

FreeProduct::FreeProduct(std::vector<CumulantTable> marginals)
    : state_(std::make_shared<State>()) {
  if (marginals.empty()) throw std::invalid_argument("free product needs at least one marginal");
  std::vector<std::string> names;
  std::map<std::string, int> family_by_name;
  state_->order = marginals[0].order();
  for (size_t m = 0; m < marginals.size(); ++m) {
    state_->order = std::min(state_->order, marginals[m].order());
    for (int v = 0; v < marginals[m].alphabet().size(); ++v) {
      const std::string& name = marginals[m].alphabet().name(v);
      if (family_by_name.count(name)) {
        throw std::invalid_argument("free product: marginal alphabets overlap on '" + name + "'");
      }
      family_by_name[name] = static_cast<int>(m) + 1;
      names.push_back(name);
      state_->family_of_var.push_back(static_cast<int>(m));
      state_->var_in_marginal.push_back(v);
    }
  }
  state_->marginals = std::move(marginals);
  state_->alphabet = Alphabet(std::move(names));
  state_->families = FamilyAssignment(std::move(family_by_name));
}

const Alphabet& FreeProduct::alphabet() const { return state_->alphabet; }
const FamilyAssignment& FreeProduct::families() const { return state_->families; }
int FreeProduct::order() const { return state_->order; }

Rational FreeProduct::cumulant(std::span<const Letter> word) const {
  return state_->cumulant(word);
}

Rational FreeProduct::moment(std::span<const Letter> word) const { return state_->moment(word); }

ScalarFn FreeProduct::cumulant_fn() const {
  return [state = state_](std::span<const Letter> w) { return state->cumulant(w); };
}

ScalarFn FreeProduct::moment_fn() const {
  return [state = state_](std::span<const Letter> w) { return state->moment(w); };
}

MomentFunctional FreeProduct::materialize(int order) const {
  if (order > state_->order) {
    throw TruncationError("free product: requested order exceeds marginal orders");
  }
  WordTable table;
  for_each_word(alphabet().size(), 1, order, [&](std::span<const Letter> w) {
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())), state_->moment(w));
  });
  return MomentFunctional(order, alphabet(), std::move(table));
}

MomentFunctional free_product(const std::vector<MomentFunctional>& marginals, int order) {
  std::vector<CumulantTable> tables;
  tables.reserve(marginals.size());
  for (const MomentFunctional& phi : marginals) {
    if (phi.order() < order) {
      throw std::invalid_argument("free product: marginal order below requested order");
    }
    tables.push_back(cumulants_from_moments(phi));
  }
  return FreeProduct(std::move(tables)).materialize(order);
}

bool check_freeness_moment_form(const MomentFunctional& phi, const FamilyAssignment& families,
                                int max_len) {
  families.require_total(phi.alphabet());
  if (max_len > phi.order()) {
    throw TruncationError("freeness check: length exceeds truncation order");
  }
  const Alphabet& alphabet = phi.alphabet();
  std::vector<Letter> word;
  bool ok = true;

  // phi((a_1 - phi(a_1)) ... (a_k - phi(a_k))) expanded over kept subsets
  auto centered_expectation = [&]() {
    size_t k = word.size();
    Rational total(0);
    std::vector<Letter> kept;
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
      kept.clear();
      Rational coeff(1);
      for (size_t i = 0; i < k; ++i) {
        if (mask & (size_t{1} << i)) {
          kept.push_back(word[i]);
        } else {
          coeff *= -phi(std::span<const Letter>(&word[i], 1));
        }
      }
      if (coeff != 0) total += coeff * phi(std::span<const Letter>(kept));
    }
    return total;
  };

  auto rec = [&](auto&& self, int remaining, int last_family) -> void {
    if (!ok) return;
    if (!word.empty() && centered_expectation() != 0) {
      ok = false;
      return;
    }
    if (remaining == 0) return;
    for (int v = 0; v < alphabet.size(); ++v) {
      int family = families.family_of(alphabet.name(v));
      if (family == last_family) continue;  // neighbours must differ
      for (bool star : {false, true}) {
        word.push_back(Letter{v, star});
        self(self, remaining - 1, family);
        word.pop_back();
        if (!ok) return;
      }
    }
  };
  rec(rec, max_len, 0);
  return ok;
}

MomentFunctional haar_unitary(int order, const std::string& var) {
  WordTable table;
  for_each_word(1, 1, order, [&](std::span<const Letter> w) {
    long balance = 0;
    for (const Letter& l : w) balance += l.starred ? -1 : 1;
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())),
                  Rational(balance == 0 ? 1 : 0));
  });
  return MomentFunctional(order, Alphabet({var}), std::move(table));
}

bool is_alternating(const Word& word) {
  for (const Letter& l : word) {
    if (l.var != word[0].var) {
      throw std::invalid_argument("is_alternating: letters from more than one variable");
    }
  }
  if (word.size() % 2 != 0) return false;
  for (int i = 0; i + 1 < word.size(); ++i) {
    if (word[i].starred == word[i + 1].starred) return false;
  }
  return true;
}

bool is_r_diagonal(const MomentFunctional& phi, const std::string& var) {
  int v = phi.alphabet().index(var);
  CumulantSolver solver(phi.fn());
  bool ok = true;
  for_each_word(1, 1, phi.order(), [&](std::span<const Letter> pattern) {
    if (!ok) return;
    std::vector<Letter> letters(pattern.begin(), pattern.end());
    for (Letter& l : letters) l.var = v;
    Word word(std::move(letters));
    if (!is_alternating(word) && solver.cumulant(word) != 0) ok = false;
  });
  return ok;
}

MomentFunctional r_diagonal_from_spec(const RDiagonalSpec& spec, const std::string& var) {
  return moments_from_cumulants(spec.cumulant_table(var));
}

Rational free_mult_cumulants(const Word& word_a, const Word& word_b, const CumulantTable& k_a,
                             const CumulantTable& k_b) {
  if (word_a.size() != word_b.size()) {
    throw std::invalid_argument("free_mult_cumulants: words must have equal length");
  }
  ScalarFn ka = k_a.fn();
  ScalarFn kb = k_b.fn();
  Rational sum(0);
  for_each_nc(word_a.size(), [&](const NcPartition& pi) {
    Rational left = k_pi_eval(pi, word_a.letters(), ka);
    if (left == 0) return;
    sum += left * k_pi_eval(kreweras(pi), word_b.letters(), kb);
  });
  return sum;
}

Rational sandwich_cumulants(const Word& word_a, const Word& b, const Word& c,
                            const ScalarFn& cumulant) {
  if (word_a.empty()) throw std::invalid_argument("sandwich_cumulants: empty word");
  int n = word_a.size();
  Word bc = b;
  bc.append(c.letters());

  // k_{|V|}(bc, ..., bc): plain cumulant of products of the pair word
  auto bc_block_cumulant = [&](int len) {
    Word repeated;
    std::vector<int> breaks;
    for (int j = 1; j <= len; ++j) {
      repeated.append(bc.letters());
      breaks.push_back(j * bc.size());
    }
    IntervalGrouping grouping(repeated.size(), breaks);
    return cumulant_of_products(NcPartition::full(len), grouping, repeated.letters(), cumulant);
  };

  Rational sum(0);
  for_each_nc(n, [&](const NcPartition& pi) {
    Rational factor = k_pi_eval(pi, word_a.letters(), cumulant);
    if (factor == 0) return;
    NcPartition complement = kreweras(pi);
    int last_block = complement.block_index_of(n);
    for (int i = 0; i < complement.block_count() && factor != 0; ++i) {
      int len = static_cast<int>(complement.block(i).size());
      if (i == last_block) {
        factor *= bc_block_cumulant(len);
      } else {
        std::vector<Word> middles(static_cast<size_t>(len - 1), bc);
        factor *= bracket_cumulant(c, middles, b, cumulant);
      }
    }
    sum += factor;
  });
  return sum;
}

Rational rdiag_aastar_cumulants(const RDiagonalSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("rdiag_aastar_cumulants: n must be >= 1");
  if (2 * n > spec.order) {
    throw TruncationError("rdiag_aastar_cumulants: 2n exceeds the spec order");
  }
  Rational sum(0);
  for_each_nc(n, [&](const NcPartition& pi) {
    int first_block = pi.block_index_of(1);
    Rational term(1);
    for (int i = 0; i < pi.block_count(); ++i) {
      int size = static_cast<int>(pi.block(i).size());
      term *= (i == first_block) ? spec.alpha_at(size) : spec.beta_at(size);
      if (term == 0) break;
    }
    sum += term;
  });
  return sum;
}

Rational rdiag_product_cumulants(const RDiagonalSpec& spec_a, const RDiagonalSpec& spec_b,
                                 int n) {
  if (n < 1) throw std::invalid_argument("rdiag_product_cumulants: n must be >= 1");
  if (2 * n > spec_a.order || 2 * n > spec_b.order) {
    throw TruncationError("rdiag_product_cumulants: 2n exceeds a spec order");
  }
  Rational sum(0);
  for_each_nc(2 * n, [&](const NcPartition& pi) {
    Rational term(1);
    int first_block = pi.block_index_of(1);
    for (int i = 0; i < pi.block_count(); ++i) {
      const std::vector<int>& block = pi.block(i);
      bool odd = block.front() % 2 == 1;
      for (int e : block) {
        if ((e % 2 == 1) != odd) return;  // blocks must live on one parity
      }
      int size = static_cast<int>(block.size());
      if (odd) {
        term *= (i == first_block) ? spec_a.alpha_at(size) : spec_a.beta_at(size);
      } else {
        term *= spec_b.alpha_at(size);  // gamma_n of the second factor
      }
      if (term == 0) return;
    }
    sum += term;
  });
  return sum;
}

Realization::Realization(std::vector<std::pair<std::string, Word>> derived) {
  std::vector<std::string> names;
  for (auto& [name, word] : derived) {
    if (word.empty()) throw std::invalid_argument("derived variable with empty realization");
    names.push_back(name);
    base_words_.push_back(std::move(word));
  }
  alphabet_ = Alphabet(std::move(names));
}

Word Realization::expand(std::span<const Letter> derived_word) const {
  Word out;
  for (const Letter& l : derived_word) {
    const Word& base = base_words_[static_cast<size_t>(l.var)];
    out.append(l.starred ? base.adjoint().letters() : base.letters());
  }
  return out;
}

MomentFunctional derived_distribution(const ScalarFn& base_cumulant,
                                      const Realization& realization, int order) {
  WordTable table;
  for_each_word(realization.derived_alphabet().size(), 1, order,
                [&](std::span<const Letter> w) {
                  Word expanded = realization.expand(w);
                  table.emplace(Word(std::vector<Letter>(w.begin(), w.end())),
                                moment_from_cumulants_eval(expanded.letters(), base_cumulant));
                });
  return MomentFunctional(order, realization.derived_alphabet(), std::move(table));
}

MomentFunctional derived_distribution(const FreeProduct& base, const Realization& realization,
                                      int order) {
  WordTable table;
  for_each_word(realization.derived_alphabet().size(), 1, order,
                [&](std::span<const Letter> w) {
                  Word expanded = realization.expand(w);
                  table.emplace(Word(std::vector<Letter>(w.begin(), w.end())),
                                base.moment(expanded.letters()));
                });
  return MomentFunctional(order, realization.derived_alphabet(), std::move(table));
}

bool verify_ux_invariance(const MomentFunctional& phi_x, int order) {
  if (phi_x.alphabet().size() != 1) {
    throw std::invalid_argument("verify_ux_invariance: phi_x must be a one-variable distribution");
  }
  if (phi_x.order() < order) {
    throw TruncationError("verify_ux_invariance: phi_x order below requested order");
  }
  const std::string x = phi_x.alphabet().name(0);
  const std::string u = (x == "u") ? "u0" : "u";

  CumulantTable k_u = cumulants_from_moments(haar_unitary(order, u));
  CumulantTable k_x = cumulants_from_moments(phi_x);
  FreeProduct joint({std::move(k_u), std::move(k_x)});

  // ux as one derived variable; its star expands to x* u*
  Word ux({Letter{joint.alphabet().index(u), false}, Letter{joint.alphabet().index(x), false}});
  Realization realization({{"ux", std::move(ux)}});
  MomentFunctional derived = derived_distribution(joint, realization, order);

  return same_distribution(derived, truncate_moments(phi_x, order), {{"ux", x}});
}

bool verify_power_rdiag(const RDiagonalSpec& spec, int power, int order) {
  if (power < 1) throw std::invalid_argument("verify_power_rdiag: power must be >= 1");
  if (order > spec.order) {
    throw TruncationError("verify_power_rdiag: order exceeds the spec order");
  }
  if (order > kMaxNcEnumeration) {
    throw std::invalid_argument("verify_power_rdiag: order exceeds the enumeration cap");
  }
  int derived_order = order / power;
  if (derived_order < 1) throw std::invalid_argument("verify_power_rdiag: order below power");

  CumulantTable base = spec.cumulant_table("a");
  ScalarFn base_fn = base.fn();
  int a = 0;  // only variable of the base alphabet

  // (i) cumulants of words in {a^r, (a^r)*} via the product-argument
  // theorem; every non-alternating one must vanish.
  bool vanishing_ok = true;
  for_each_word(1, 1, derived_order, [&](std::span<const Letter> pattern) {
    if (!vanishing_ok) return;
    Word derived_word(std::vector<Letter>(pattern.begin(), pattern.end()));
    if (is_alternating(derived_word)) return;
    Word expanded;
    std::vector<int> breaks;
    for (int j = 0; j < derived_word.size(); ++j) {
      for (int t = 0; t < power; ++t) {
        expanded.push_back(Letter{a, derived_word[j].starred});
      }
      breaks.push_back((j + 1) * power);
    }
    IntervalGrouping grouping(expanded.size(), breaks);
    Rational value = cumulant_of_products(NcPartition::full(derived_word.size()), grouping,
                                          expanded.letters(), base_fn);
    if (value != 0) vanishing_ok = false;
  });
  if (!vanishing_ok) return false;

  // (ii) *-distribution of a^r vs a_1...a_r for free copies a_i.
  Word a_power;
  for (int t = 0; t < power; ++t) a_power.push_back(Letter{a, false});
  MomentFunctional power_dist =
      derived_distribution(base_fn, Realization({{"p", a_power}}), derived_order);

  std::vector<CumulantTable> copies;
  for (int i = 1; i <= power; ++i) {
    copies.push_back(spec.cumulant_table("a" + std::to_string(i)));
  }
  FreeProduct joint(std::move(copies));
  Word chain;
  for (int i = 1; i <= power; ++i) {
    chain.push_back(Letter{joint.alphabet().index("a" + std::to_string(i)), false});
  }
  MomentFunctional chain_dist =
      derived_distribution(joint, Realization({{"q", chain}}), derived_order);

  return same_distribution(power_dist, chain_dist, {{"p", "q"}});
}

}  // namespace ncfree
