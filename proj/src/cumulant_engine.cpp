#include "ncfree/cumulant_engine.hpp"

#include <algorithm>

namespace ncfree {

IntervalGrouping::IntervalGrouping(int n, std::vector<int> breakpoints)
    : n_(n),
      breakpoints_(std::move(breakpoints)),
      sigma_(interval_partition(n, breakpoints_)) {}

std::pair<int, int> IntervalGrouping::group_range(int j) const {
  if (j < 0 || j >= group_count()) throw std::out_of_range("group index out of range");
  int first = (j == 0) ? 1 : breakpoints_[static_cast<size_t>(j - 1)] + 1;
  return {first, breakpoints_[static_cast<size_t>(j)]};
}

namespace {

Rational block_product(const NcPartition& pi, std::span<const Letter> word,
                       const ScalarFn& factor) {
  Rational product(1);
  std::vector<Letter> sub;
  for (const auto& block : pi.blocks()) {
    sub.clear();
    for (int pos : block) sub.push_back(word[static_cast<size_t>(pos - 1)]);
    Rational f = factor(std::span<const Letter>(sub));
    if (f == 0) return Rational(0);
    product *= f;
  }
  return product;
}

void require_length(const NcPartition& pi, std::span<const Letter> word, const char* op) {
  if (pi.n() != static_cast<int>(word.size())) {
    throw std::invalid_argument(std::string(op) + ": word length does not match partition size");
  }
}

}  // namespace

Rational k_pi_eval(const NcPartition& pi, std::span<const Letter> word,
                   const ScalarFn& cumulant) {
  require_length(pi, word, "k_pi_eval");
  return block_product(pi, word, cumulant);
}

Rational phi_pi_eval(const NcPartition& pi, std::span<const Letter> word,
                     const ScalarFn& moment) {
  require_length(pi, word, "phi_pi_eval");
  return block_product(pi, word, moment);
}

Rational moment_from_cumulants_eval(std::span<const Letter> word, const ScalarFn& cumulant) {
  if (word.empty()) return Rational(1);
  Rational sum(0);
  for_each_nc(static_cast<int>(word.size()), [&](const NcPartition& pi) {
    sum += block_product(pi, word, cumulant);
  });
  return sum;
}

struct CumulantSolver::State {
  ScalarFn phi;
  WordTable memo;

  Rational cumulant(std::span<const Letter> word) {
    if (word.empty()) throw std::invalid_argument("cumulant of the empty word is undefined");
    if (auto it = memo.find(word); it != memo.end()) return it->second;
    int n = static_cast<int>(word.size());
    Rational value = phi(word);
    if (n > 1) {
      ScalarFn self = [this](std::span<const Letter> w) { return cumulant(w); };
      const NcPartition top = NcPartition::full(n);
      for_each_nc(n, [&](const NcPartition& pi) {
        if (pi == top) return;
        value -= block_product(pi, word, self);
      });
    }
    memo.emplace(Word(std::vector<Letter>(word.begin(), word.end())), value);
    return value;
  }
};

CumulantSolver::CumulantSolver(ScalarFn moment_fn)
    : state_(std::make_shared<State>(State{std::move(moment_fn), {}})) {}

Rational CumulantSolver::cumulant(std::span<const Letter> word) {
  return state_->cumulant(word);
}

ScalarFn CumulantSolver::fn() const {
  return [state = state_](std::span<const Letter> w) { return state->cumulant(w); };
}

CumulantTable cumulants_from_moments(const MomentFunctional& phi) {
  CumulantSolver solver(phi.fn());
  MoebiusCache mu;
  std::vector<NcPartition> tops;
  for (int n = 1; n <= phi.order(); ++n) tops.push_back(NcPartition::full(n));
  WordTable out;
  ScalarFn phi_fn = phi.fn();
  for_each_word(phi.alphabet().size(), 1, phi.order(), [&](std::span<const Letter> w) {
    Rational by_recursion = solver.cumulant(w);
    // independent route: Moebius inversion of the moment-cumulant relation
    Rational by_moebius(0);
    const NcPartition& top = tops[w.size() - 1];
    for_each_nc(static_cast<int>(w.size()), [&](const NcPartition& pi) {
      Rational term = phi_pi_eval(pi, w, phi_fn);
      if (term != 0) by_moebius += Rational(static_cast<long>(mu.moebius(pi, top))) * term;
    });
    if (by_recursion != by_moebius) {
      throw std::logic_error("cumulants_from_moments: recursion and Moebius routes disagree");
    }
    out.emplace(Word(std::vector<Letter>(w.begin(), w.end())), std::move(by_recursion));
  });
  return CumulantTable(phi.order(), phi.alphabet(), std::move(out));
}

MomentFunctional moments_from_cumulants(const CumulantTable& cumulants) {
  WordTable out;
  ScalarFn k = cumulants.fn();
  for_each_word(cumulants.alphabet().size(), 1, cumulants.order(),
                [&](std::span<const Letter> w) {
                  out.emplace(Word(std::vector<Letter>(w.begin(), w.end())),
                              moment_from_cumulants_eval(w, k));
                });
  return MomentFunctional(cumulants.order(), cumulants.alphabet(), std::move(out));
}

NcPartition tau_hat(const NcPartition& tau, const IntervalGrouping& grouping) {
  if (tau.n() != grouping.group_count()) {
    throw std::invalid_argument("tau_hat: partition size does not match product count");
  }
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<size_t>(tau.block_count()));
  for (const auto& block : tau.blocks()) {
    std::vector<int> inflated;
    for (int j : block) {
      auto [first, last] = grouping.group_range(j - 1);
      for (int e = first; e <= last; ++e) inflated.push_back(e);
    }
    blocks.push_back(std::move(inflated));
  }
  return NcPartition(SetPartition(grouping.n(), std::move(blocks)));
}

Rational cumulant_of_products(const NcPartition& tau, const IntervalGrouping& grouping,
                              std::span<const Letter> word, const ScalarFn& cumulant) {
  if (static_cast<int>(word.size()) != grouping.n()) {
    throw std::invalid_argument("cumulant_of_products: word length does not match grouping");
  }
  const NcPartition target = tau_hat(tau, grouping);
  const NcPartition& sigma = grouping.sigma();
  Rational sum(0);
  for_each_nc(grouping.n(), [&](const NcPartition& pi) {
    if (join(pi, sigma) == target) sum += block_product(pi, word, cumulant);
  });
  return sum;
}

Rational k_sigma_generalized(const NcPartition& sigma, std::span<const Letter> word,
                             const ScalarFn& moment) {
  if (sigma.n() != static_cast<int>(word.size())) {
    throw std::invalid_argument("k_sigma_generalized: word length does not match sigma");
  }
  int n = sigma.n();
  const NcPartition top = NcPartition::full(n);

  MoebiusCache mu;
  Rational by_moebius(0);
  for_each_nc(n, [&](const NcPartition& pi) {
    if (!leq(sigma, pi)) return;
    Rational term = phi_pi_eval(pi, word, moment);
    if (term != 0) by_moebius += Rational(static_cast<long>(mu.moebius(pi, top))) * term;
  });

  CumulantSolver solver(moment);
  ScalarFn k = solver.fn();
  Rational by_join(0);
  for_each_nc(n, [&](const NcPartition& pi) {
    if (join(pi, sigma) == top) by_join += block_product(pi, word, k);
  });

  if (by_moebius != by_join) {
    throw std::logic_error("k_sigma_generalized: Moebius and join routes disagree");
  }
  return by_moebius;
}

Rational k_sigma_generalized(const NcPartition& sigma, std::span<const Letter> word,
                             const MomentFunctional& phi) {
  return k_sigma_generalized(sigma, word, phi.fn());
}

Rational bracket_cumulant(const Word& front, const std::vector<Word>& middles, const Word& back,
                          const ScalarFn& cumulant) {
  if (front.empty() || back.empty()) {
    throw std::invalid_argument("bracket_cumulant: outer arguments must be nonempty");
  }
  Word flat = front;
  std::vector<std::vector<int>> blocks;
  std::vector<int> wrap;
  for (int i = 1; i <= front.size(); ++i) wrap.push_back(i);
  for (const Word& middle : middles) {
    if (middle.empty()) {
      throw std::invalid_argument("bracket_cumulant: middle arguments must be nonempty");
    }
    std::vector<int> interval;
    for (int i = 0; i < middle.size(); ++i) interval.push_back(flat.size() + 1 + i);
    blocks.push_back(std::move(interval));
    flat.append(middle.letters());
  }
  for (int i = 0; i < back.size(); ++i) wrap.push_back(flat.size() + 1 + i);
  flat.append(back.letters());
  blocks.push_back(std::move(wrap));

  const NcPartition sigma(SetPartition(flat.size(), std::move(blocks)));
  const NcPartition top = NcPartition::full(flat.size());
  Rational sum(0);
  for_each_nc(flat.size(), [&](const NcPartition& pi) {
    if (join(pi, sigma) == top) sum += block_product(pi, flat.letters(), cumulant);
  });
  return sum;
}

}  // namespace ncfree
