#include "ncfree/verify.hpp"

#include <algorithm>
#include <functional>

namespace ncfree {

Rational random_rational(std::mt19937_64& rng, int magnitude) {
  std::uniform_int_distribution<int> num(-magnitude, magnitude);
  std::uniform_int_distribution<int> den(1, magnitude);
  Rational value(num(rng), den(rng));
  value.canonicalize();  // mpq arithmetic assumes reduced operands
  return value;
}

MomentFunctional random_moment_functional(int order, const std::vector<std::string>& names,
                                          std::mt19937_64& rng, int magnitude) {
  Alphabet alphabet(names);
  WordTable table;
  for_each_word(alphabet.size(), 1, order, [&](std::span<const Letter> w) {
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())), random_rational(rng, magnitude));
  });
  return MomentFunctional(order, std::move(alphabet), std::move(table));
}

CumulantTable random_cumulant_table(int order, const std::vector<std::string>& names,
                                    std::mt19937_64& rng, int magnitude) {
  Alphabet alphabet(names);
  WordTable table;
  for_each_word(alphabet.size(), 1, order, [&](std::span<const Letter> w) {
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())), random_rational(rng, magnitude));
  });
  return CumulantTable(order, std::move(alphabet), std::move(table));
}

RDiagonalSpec random_rdiag_spec(int order, std::mt19937_64& rng, int magnitude, bool tracial) {
  std::vector<Rational> alpha, beta;
  for (int i = 0; i < order / 2; ++i) alpha.push_back(random_rational(rng, magnitude));
  if (tracial) {
    beta = alpha;
  } else {
    for (int i = 0; i < order / 2; ++i) beta.push_back(random_rational(rng, magnitude));
  }
  return RDiagonalSpec(order, std::move(alpha), std::move(beta));
}

MomentFunctional random_tracial_functional(int order, const std::vector<std::string>& names,
                                           std::mt19937_64& rng, int magnitude) {
  Alphabet alphabet(names);
  WordTable table;
  for_each_word(alphabet.size(), 1, order, [&](std::span<const Letter> w) {
    // canonical representative of the cyclic rotation class
    std::vector<Letter> best(w.begin(), w.end());
    std::vector<Letter> rot(w.begin(), w.end());
    for (size_t s = 1; s < w.size(); ++s) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (compare_words(rot, best) == std::strong_ordering::less) best = rot;
    }
    Word rep(std::move(best));
    auto it = table.find(rep);
    Rational value = (it != table.end()) ? it->second : random_rational(rng, magnitude);
    table.emplace(Word(std::vector<Letter>(w.begin(), w.end())), std::move(value));
  });
  return MomentFunctional(order, std::move(alphabet), std::move(table));
}

namespace {

using Checks = std::vector<CheckResult>;

void check_run(Checks& out, std::string name, const std::function<bool()>& body) {
  CheckResult result{std::move(name), false, ""};
  try {
    result.passed = body();
  } catch (const std::exception& e) {
    result.detail = e.what();
  }
  out.push_back(std::move(result));
}

Word random_word(const Alphabet& alphabet, int length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> var(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> star(0, 1);
  std::vector<Letter> letters;
  letters.reserve(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) letters.push_back(Letter{var(rng), star(rng) == 1});
  return Word(std::move(letters));
}

std::vector<long long> catalan_numbers(int upto) {
  std::vector<long long> c(static_cast<size_t>(upto) + 1, 0);
  c[0] = 1;
  for (int k = 0; k < upto; ++k) {
    for (int i = 0; i <= k; ++i) {
      c[static_cast<size_t>(k) + 1] +=
          c[static_cast<size_t>(i)] * c[static_cast<size_t>(k - i)];
    }
  }
  return c;
}

/// pi on the odd positions, sigma on the even positions of 1..2n.
SetPartition interleave(const NcPartition& pi, const NcPartition& sigma) {
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
  return SetPartition(2 * pi.n(), std::move(blocks));
}

std::vector<std::vector<int>> all_breakpoint_vectors(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> breaks;
    for (int i = 1; i < n; ++i) {
      if (mask & (1u << (i - 1))) breaks.push_back(i);
    }
    breaks.push_back(n);
    out.push_back(std::move(breaks));
  }
  return out;
}

RDiagonalSpec haar_spec(int order) {
  CumulantTable k = cumulants_from_moments(haar_unitary(order));
  std::vector<Rational> alpha, beta;
  for (int n = 1; 2 * n <= order; ++n) {
    std::vector<Letter> a_first, star_first;
    for (int i = 0; i < 2 * n; ++i) {
      a_first.push_back(Letter{0, i % 2 == 1});
      star_first.push_back(Letter{0, i % 2 == 0});
    }
    alpha.push_back(k(std::span<const Letter>(a_first)));
    beta.push_back(k(std::span<const Letter>(star_first)));
  }
  return RDiagonalSpec(order, std::move(alpha), std::move(beta));
}

// ---------------------------------------------------------------------------

Checks suite_lattice(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "refinement order with a crossing coarser partition", [] {
    // the coarser side of this pair is crossing, so compare at the
    // set-partition level
    SetPartition sigma = SetPartition::parse("{(1,3),(2),(4,5),(6,8),(7)}");
    SetPartition pi = SetPartition::parse("{(1,3,7),(2),(4,5,6,8)}");
    return leq(sigma, pi) && !leq(pi, sigma);
  });
  check_run(out, "kreweras complement of {(1,2,7),(3),(4,6),(5),(8)}", [] {
    return kreweras(NcPartition::parse("{(1,2,7),(3),(4,6),(5),(8)}")) ==
           NcPartition::parse("{(1),(2,3,6),(4,5),(7,8)}");
  });
  check_run(out, "join by connecting elements 1..4", [] {
    return join(NcPartition::parse("{(1,8),(2,3),(4,5,7),(6)}"),
                NcPartition::parse("{(1,2,3,4),(5),(6),(7),(8)}")) ==
           NcPartition::parse("{(1,2,3,4,5,7,8),(6)}");
  });
  check_run(out, "enumeration counts match the Catalan recurrence", [&] {
    int upto = std::min(opt.max_n + 3, 10);
    auto catalan = catalan_numbers(upto);
    for (int n = 0; n <= upto; ++n) {
      long long count = 0;
      for_each_nc(n, [&](const NcPartition&) { ++count; });
      if (count != catalan[static_cast<size_t>(n)]) return false;
    }
    return true;
  });
  check_run(out, "enumeration emits restricted growth strings in lex order", [&] {
    for (int n = 1; n <= std::min(opt.max_n + 2, 8); ++n) {
      std::vector<int> prev;
      bool ordered = true;
      for_each_nc(n, [&](const NcPartition& p) {
        const auto& rgs = p.partition().restricted_growth_string();
        if (!prev.empty() && !(prev < rgs)) ordered = false;
        prev = rgs;
      });
      if (!ordered) return false;
    }
    return true;
  });
  check_run(out, "join and meet are least/greatest bounds", [&] {
    for (int n = 1; n <= std::min(opt.max_n, 6); ++n) {
      auto all = enumerate_nc(n);
      for (const auto& pi : all) {
        for (const auto& sigma : all) {
          NcPartition j = join(pi, sigma);
          NcPartition m = meet(pi, sigma);
          if (!leq(pi, j) || !leq(sigma, j) || !leq(m, pi) || !leq(m, sigma)) return false;
          for (const auto& tau : all) {
            if (leq(pi, tau) && leq(sigma, tau) && !leq(j, tau)) return false;
            if (leq(tau, pi) && leq(tau, sigma) && !leq(tau, m)) return false;
          }
        }
      }
    }
    return true;
  });
  check_run(out, "neutral elements: join with 0_n, meet with 1_n", [&] {
    int n = std::min(opt.max_n, 6);
    for (const auto& pi : enumerate_nc(n)) {
      if (join(pi, NcPartition::singletons(n)) != pi) return false;
      if (meet(pi, NcPartition::full(n)) != pi) return false;
      if (meet(pi, NcPartition::singletons(n)) != NcPartition::singletons(n)) return false;
      if (join(pi, NcPartition::full(n)) != NcPartition::full(n)) return false;
    }
    return true;
  });
  check_run(out, "kreweras is an order-reversing bijection", [&] {
    for (int n = 1; n <= std::min(opt.max_n, 6); ++n) {
      auto all = enumerate_nc(n);
      std::vector<NcPartition> images;
      for (const auto& pi : all) images.push_back(kreweras(pi));
      std::vector<NcPartition> sorted = images;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
      for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = 0; j < all.size(); ++j) {
          if (leq(all[i], all[j]) != leq(images[j], images[i])) return false;
        }
      }
    }
    return true;
  });
  check_run(out, "kreweras complement is the biggest interleavable partition", [&] {
    for (int n = 1; n <= std::min(opt.max_n, 6); ++n) {
      auto all = enumerate_nc(n);
      for (const auto& pi : all) {
        NcPartition complement = kreweras(pi);
        if (!is_noncrossing(interleave(pi, complement))) return false;
        for (const auto& sigma : all) {
          if (is_noncrossing(interleave(pi, sigma)) && !leq(sigma, complement)) return false;
        }
      }
    }
    return true;
  });
  check_run(out, "block counts of pi and K(pi) sum to n+1", [&] {
    for (int n = 1; n <= std::min(opt.max_n + 3, 8); ++n) {
      bool ok = true;
      for_each_nc(n, [&](const NcPartition& pi) {
        if (pi.block_count() + kreweras(pi).block_count() != n + 1) ok = false;
      });
      if (!ok) return false;
    }
    return true;
  });
  check_run(out, "kreweras of 1_n is 0_n", [&] {
    for (int n = 1; n <= std::min(opt.max_n + 3, 10); ++n) {
      if (kreweras(NcPartition::full(n)) != NcPartition::singletons(n)) return false;
      if (kreweras(NcPartition::singletons(n)) != NcPartition::full(n)) return false;
    }
    return true;
  });
  check_run(out, "moebius sums vanish on every proper interval", [&] {
    int n = std::min(opt.max_n, 5);
    auto all = enumerate_nc(n);
    MoebiusCache mu;
    for (const auto& pi : all) {
      for (const auto& sigma : all) {
        if (pi == sigma || !leq(pi, sigma)) continue;
        long long lower = 0, upper = 0;
        for (const auto& tau : all) {
          if (leq(pi, tau) && leq(tau, sigma)) {
            lower += mu.moebius(pi, tau);
            upper += mu.moebius(tau, sigma);
          }
        }
        if (lower != 0 || upper != 0) return false;
      }
    }
    return true;
  });
  check_run(out, "mu(0_3, 1_3) = 2, the coefficient in the k_3 expansion", [] {
    return moebius(NcPartition::singletons(3), NcPartition::full(3)) == 2;
  });
  check_run(out, "interval partitions from breakpoints", [] {
    std::vector<int> b1{2, 5, 6};
    if (interval_partition(6, b1) != NcPartition::parse("{(1,2),(3,4,5),(6)}")) return false;
    std::vector<int> b2{4};
    if (interval_partition(4, b2) != NcPartition::full(4)) return false;
    std::vector<int> b3{1, 2, 3, 4};
    return interval_partition(4, b3) == NcPartition::singletons(4);
  });
  return out;
}

Checks suite_moments_cumulants(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "k_1..k_3 moment expansions on random distributions", [&] {
    std::mt19937_64 rng(opt.seed);
    int trials = std::max(opt.trials, 20);
    for (int t = 0; t < trials; ++t) {
      std::vector<std::string> names = (t % 2 == 0) ? std::vector<std::string>{"a"}
                                                    : std::vector<std::string>{"a", "b"};
      // one variable up to order 6, two variables up to order 4
      int span = names.size() == 1 ? std::max(1, std::min(opt.order, 6) - 2) : 2;
      int order = 3 + t % span;
      MomentFunctional phi = random_moment_functional(order, names, rng);
      CumulantTable k = cumulants_from_moments(phi);
      bool ok = true;
      for_each_word(phi.alphabet().size(), 1, std::min(order, 3),
                    [&](std::span<const Letter> w) {
                      if (!ok) return;
                      auto at = [&](std::initializer_list<int> idx) {
                        std::vector<Letter> sub;
                        for (int i : idx) sub.push_back(w[static_cast<size_t>(i)]);
                        return phi(std::span<const Letter>(sub));
                      };
                      Rational expect;
                      if (w.size() == 1) {
                        expect = at({0});
                      } else if (w.size() == 2) {
                        expect = at({0, 1}) - at({0}) * at({1});
                      } else {
                        expect = at({0, 1, 2}) - at({0}) * at({1, 2}) - at({0, 1}) * at({2}) -
                                 at({0, 2}) * at({1}) + 2 * at({0}) * at({1}) * at({2});
                      }
                      if (k(w) != expect) ok = false;
                    });
      if (!ok) return false;
    }
    return true;
  });
  check_run(out, "moment -> cumulant -> moment round trip is the identity", [&] {
    std::mt19937_64 rng(opt.seed + 1);
    for (int t = 0; t < std::max(opt.trials, 5); ++t) {
      std::vector<std::string> names = (t % 3 == 2) ? std::vector<std::string>{"a", "b"}
                                                    : std::vector<std::string>{"a"};
      int order = (t % 3 == 2) ? 4 : std::min(opt.order, 6);
      MomentFunctional phi = random_moment_functional(order, names, rng);
      if (moments_from_cumulants(cumulants_from_moments(phi)) != phi) return false;
    }
    return true;
  });
  check_run(out, "cumulant -> moment -> cumulant round trip is the identity", [&] {
    std::mt19937_64 rng(opt.seed + 2);
    for (int t = 0; t < std::max(opt.trials, 5); ++t) {
      CumulantTable k = random_cumulant_table(std::min(opt.order, 6), {"a"}, rng);
      if (cumulants_from_moments(moments_from_cumulants(k)) != k) return false;
    }
    return true;
  });
  check_run(out, "recursion and Moebius inversion agree on every entry", [&] {
    // cumulants_from_moments throws if its two internal routes disagree
    std::mt19937_64 rng(opt.seed + 3);
    for (int t = 0; t < std::max(opt.trials, 5); ++t) {
      cumulants_from_moments(random_moment_functional(4, {"a", "b"}, rng));
    }
    return true;
  });
  check_run(out, "multiplicative extensions over 0_n, 1_n and {(1),(2,3)}", [&] {
    std::mt19937_64 rng(opt.seed + 4);
    MomentFunctional phi = random_moment_functional(4, {"a"}, rng);
    CumulantTable k = cumulants_from_moments(phi);
    ScalarFn kf = k.fn();
    Word w = random_word(phi.alphabet(), 3, rng);
    Rational singles(1);
    for (int i = 0; i < 3; ++i) {
      singles *= k(std::span<const Letter>(&w.letters()[static_cast<size_t>(i)], 1));
    }
    if (k_pi_eval(NcPartition::singletons(3), w.letters(), kf) != singles) return false;
    if (k_pi_eval(NcPartition::full(3), w.letters(), kf) != k(w)) return false;
    std::vector<Letter> tail{w[1], w[2]};
    Rational split = k(std::span<const Letter>(&w.letters()[0], 1)) *
                     k(std::span<const Letter>(tail));
    return k_pi_eval(NcPartition::parse("{(1),(2,3)}"), w.letters(), kf) == split;
  });
  return out;
}

Checks suite_kprod(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "tau_hat inflation of {(A1,A2),(A3)} over 2+3+1 letters", [] {
    IntervalGrouping g(6, {2, 5, 6});
    if (tau_hat(NcPartition::parse("{(1,2),(3)}"), g) !=
        NcPartition::parse("{(1,2,3,4,5),(6)}")) {
      return false;
    }
    if (tau_hat(NcPartition::full(3), g) != NcPartition::full(6)) return false;
    return tau_hat(NcPartition::singletons(3), g) == g.sigma();
  });
  check_run(out, "k_2(a_1 a_2, a_3): join sum, cumulant expansion and moment form", [&] {
    std::mt19937_64 rng(opt.seed + 10);
    for (int t = 0; t < std::max(opt.trials, 5); ++t) {
      MomentFunctional phi = random_moment_functional(3, {"a", "b", "c"}, rng, 3);
      CumulantTable k = cumulants_from_moments(phi);
      Word w = parse_word("a b c", phi.alphabet());
      IntervalGrouping g(3, {2, 3});
      Rational lhs = cumulant_of_products(NcPartition::full(2), g, w.letters(), k.fn());
      Word ab = parse_word("a b", phi.alphabet());
      Word ac = parse_word("a c", phi.alphabet());
      Word bc = parse_word("b c", phi.alphabet());
      Rational sum = k(w) + k(parse_word("a", phi.alphabet())) * k(bc) +
                     k(ac) * k(parse_word("b", phi.alphabet()));
      Rational from_moments = phi(w) - phi(ab) * phi(parse_word("c", phi.alphabet()));
      if (lhs != sum || lhs != from_moments) return false;
    }
    return true;
  });
  check_run(out, "k_tau[A_1..A_m] equals the join-filtered sum, all groupings and tau", [&] {
    std::mt19937_64 rng(opt.seed + 11);
    for (int n = 2; n <= std::min(opt.max_n + 1, 6); ++n) {
      MomentFunctional phi = random_moment_functional(n, {"a", "b"}, rng, 3);
      ScalarFn phi_fn = phi.fn();
      Word word = random_word(phi.alphabet(), n, rng);
      for (const auto& breaks : all_breakpoint_vectors(n)) {
        IntervalGrouping g(n, breaks);
        int m = g.group_count();
        // first-principles route: distribution of the products A_j
        std::vector<std::pair<std::string, Word>> derived;
        for (int j = 0; j < m; ++j) {
          auto [first, last] = g.group_range(j);
          std::vector<int> positions;
          for (int p = first; p <= last; ++p) positions.push_back(p);
          derived.emplace_back("g" + std::to_string(j + 1), word.subword(positions));
        }
        Realization realization(std::move(derived));
        CumulantSolver product_solver([&](std::span<const Letter> dw) {
          return phi_fn(realization.expand(dw).letters());
        });
        ScalarFn product_k = product_solver.fn();
        Word tuple;
        for (int j = 0; j < m; ++j) tuple.push_back(Letter{j, false});
        CumulantSolver base_solver(phi_fn);
        ScalarFn base_k = base_solver.fn();
        for (const auto& tau : enumerate_nc(m)) {
          Rational direct = k_pi_eval(tau, tuple.letters(), product_k);
          Rational theorem = cumulant_of_products(tau, g, word.letters(), base_k);
          if (direct != theorem) return false;
        }
      }
    }
    return true;
  });
  check_run(out, "degenerate grouping (all breakpoints) reduces to k_tau itself", [&] {
    std::mt19937_64 rng(opt.seed + 12);
    int n = std::min(opt.max_n, 4);
    MomentFunctional phi = random_moment_functional(n, {"a"}, rng, 3);
    CumulantTable k = cumulants_from_moments(phi);
    Word word = random_word(phi.alphabet(), n, rng);
    std::vector<int> breaks;
    for (int i = 1; i <= n; ++i) breaks.push_back(i);
    IntervalGrouping g(n, breaks);
    for (const auto& tau : enumerate_nc(n)) {
      if (cumulant_of_products(tau, g, word.letters(), k.fn()) !=
          k_pi_eval(tau, word.letters(), k.fn())) {
        return false;
      }
    }
    return true;
  });
  return out;
}

Checks suite_ksigma(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "Moebius form equals join form for every sigma", [&] {
    std::mt19937_64 rng(opt.seed + 20);
    int trials = std::max(opt.trials, 10);
    for (int t = 0; t < trials; ++t) {
      int n = 2 + t % std::max(1, std::min(opt.max_n, 5) - 1);
      MomentFunctional phi = random_moment_functional(n, {"a", "b"}, rng, 3);
      Word word = random_word(phi.alphabet(), n, rng);
      for (const auto& sigma : enumerate_nc(n)) {
        // k_sigma_generalized computes both routes and throws on mismatch
        k_sigma_generalized(sigma, word.letters(), phi);
      }
    }
    return true;
  });
  check_run(out, "moment expansion of k^{{(1,3),(2),(4)}}(a_1, b, a_2, c)", [&] {
    std::mt19937_64 rng(opt.seed + 21);
    for (int t = 0; t < std::max(opt.trials, 5); ++t) {
      MomentFunctional phi = random_moment_functional(4, {"a", "b", "c"}, rng, 3);
      Word w = parse_word("a b a c", phi.alphabet());
      Rational lhs =
          k_sigma_generalized(NcPartition::parse("{(1,3),(2),(4)}"), w.letters(), phi);
      auto p = [&](const char* s) { return phi(parse_word(s, phi.alphabet())); };
      Rational rhs = p("a b a c") - p("a b a") * p("c") - p("a a c") * p("b") +
                     p("a a") * p("b") * p("c");
      if (lhs != rhs) return false;
    }
    return true;
  });
  check_run(out, "sigma = 0_n recovers k_n; interval sigma recovers cumulants of products", [&] {
    std::mt19937_64 rng(opt.seed + 22);
    int n = std::min(opt.max_n, 4);
    MomentFunctional phi = random_moment_functional(n, {"a"}, rng, 3);
    CumulantTable k = cumulants_from_moments(phi);
    Word word = random_word(phi.alphabet(), n, rng);
    if (k_sigma_generalized(NcPartition::singletons(n), word.letters(), phi) != k(word)) {
      return false;
    }
    for (const auto& breaks : all_breakpoint_vectors(n)) {
      IntervalGrouping g(n, breaks);
      Rational via_sigma = k_sigma_generalized(g.sigma(), word.letters(), phi);
      Rational via_products =
          cumulant_of_products(NcPartition::full(g.group_count()), g, word.letters(), k.fn());
      if (via_sigma != via_products) return false;
    }
    return true;
  });
  check_run(out, "bracket cumulants: m=1 and m=2 moment identities, m=3 cross-route", [&] {
    std::mt19937_64 rng(opt.seed + 23);
    for (int t = 0; t < std::max(opt.trials, 5); ++t) {
      MomentFunctional phi = random_moment_functional(4, {"b", "c", "d"}, rng, 3);
      CumulantSolver solver(phi.fn());
      Word c = parse_word("c", phi.alphabet());
      Word b = parse_word("b", phi.alphabet());
      Word d = parse_word("d", phi.alphabet());
      auto p = [&](const char* s) { return phi(parse_word(s, phi.alphabet())); };
      if (bracket_cumulant(c, {}, b, solver.fn()) != p("c b")) return false;
      Rational m2 = bracket_cumulant(c, {d}, b, solver.fn());
      if (m2 != p("c d b") - p("c b") * p("d")) return false;
      Rational m3 = bracket_cumulant(c, {d, d}, b, solver.fn());
      Word flat = parse_word("c d d b", phi.alphabet());
      if (m3 != k_sigma_generalized(NcPartition::parse("{(1,4),(2),(3)}"), flat.letters(), phi)) {
        return false;
      }
    }
    return true;
  });
  return out;
}

Checks suite_freemult(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "Kreweras-paired sum equals the product-argument route", [&] {
    std::mt19937_64 rng(opt.seed + 30);
    for (int n = 1; n <= std::min(opt.max_n, 4); ++n) {
      MomentFunctional phi_a = random_moment_functional(n, {"a"}, rng, 3);
      MomentFunctional phi_b = random_moment_functional(n, {"b"}, rng, 3);
      CumulantTable k_a = cumulants_from_moments(phi_a);
      CumulantTable k_b = cumulants_from_moments(phi_b);
      FreeProduct joint({k_a, k_b});
      Word wa = random_word(phi_a.alphabet(), n, rng);
      Word wb = random_word(phi_b.alphabet(), n, rng);
      Rational closed = free_mult_cumulants(wa, wb, k_a, k_b);
      Word wa_joint = relabel_word(wa, phi_a.alphabet(), joint.alphabet());
      Word wb_joint = relabel_word(wb, phi_b.alphabet(), joint.alphabet());
      Word interleaved;
      std::vector<int> breaks;
      for (int i = 0; i < n; ++i) {
        interleaved.push_back(wa_joint[i]);
        interleaved.push_back(wb_joint[i]);
        breaks.push_back(2 * (i + 1));
      }
      IntervalGrouping g(2 * n, breaks);
      Rational general = cumulant_of_products(NcPartition::full(n), g, interleaved.letters(),
                                              joint.cumulant_fn());
      if (closed != general) return false;
    }
    return true;
  });
  check_run(out, "n = 1 and n = 2 closed forms", [&] {
    std::mt19937_64 rng(opt.seed + 31);
    MomentFunctional phi_a = random_moment_functional(2, {"a"}, rng, 3);
    MomentFunctional phi_b = random_moment_functional(2, {"b"}, rng, 3);
    CumulantTable k_a = cumulants_from_moments(phi_a);
    CumulantTable k_b = cumulants_from_moments(phi_b);
    Word a1 = parse_word("a", phi_a.alphabet());
    Word b1 = parse_word("b", phi_b.alphabet());
    if (free_mult_cumulants(a1, b1, k_a, k_b) != k_a(a1) * k_b(b1)) return false;
    Word aa = parse_word("a a*", phi_a.alphabet());
    Word bb = parse_word("b b", phi_b.alphabet());
    Rational expect = k_a(aa) * k_b(b1) * k_b(b1) + k_a(a1) * k_a(parse_word("a*", phi_a.alphabet())) * k_b(bb);
    return free_mult_cumulants(aa, bb, k_a, k_b) == expect;
  });
  return out;
}

Checks suite_sandwich(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "sandwich cumulants equal the product-argument route (non-tracial)", [&] {
    std::mt19937_64 rng(opt.seed + 40);
    for (int n = 1; n <= std::min(opt.max_n, 3); ++n) {
      MomentFunctional phi_a = random_moment_functional(n, {"a"}, rng, 3);
      MomentFunctional phi_bc = random_moment_functional(2 * n, {"b", "c"}, rng, 3);
      CumulantTable k_a = cumulants_from_moments(phi_a);
      CumulantTable k_bc = cumulants_from_moments(phi_bc);
      FreeProduct joint({k_a, k_bc});
      Word wa = random_word(phi_a.alphabet(), n, rng);
      Word wa_joint = relabel_word(wa, phi_a.alphabet(), joint.alphabet());
      Word b = parse_word("b", joint.alphabet());
      Word c = parse_word("c", joint.alphabet());
      Rational closed = sandwich_cumulants(wa_joint, b, c, joint.cumulant_fn());
      Word expanded;
      std::vector<int> breaks;
      for (int i = 0; i < n; ++i) {
        expanded.push_back(b[0]);
        expanded.push_back(wa_joint[i]);
        expanded.push_back(c[0]);
        breaks.push_back(3 * (i + 1));
      }
      IntervalGrouping g(3 * n, breaks);
      Rational general = cumulant_of_products(NcPartition::full(n), g, expanded.letters(),
                                              joint.cumulant_fn());
      if (closed != general) return false;
    }
    return true;
  });
  check_run(out, "tracial case matches the k_{K(pi)}[cb,...,cb] form", [&] {
    std::mt19937_64 rng(opt.seed + 41);
    for (int n = 1; n <= std::min(opt.max_n, 3); ++n) {
      MomentFunctional phi_a = random_moment_functional(n, {"a"}, rng, 3);
      MomentFunctional phi_bc = random_tracial_functional(2 * n, {"b", "c"}, rng, 3);
      CumulantTable k_a = cumulants_from_moments(phi_a);
      CumulantTable k_bc = cumulants_from_moments(phi_bc);
      FreeProduct joint({k_a, k_bc});
      ScalarFn joint_k = joint.cumulant_fn();
      Word wa = random_word(phi_a.alphabet(), n, rng);
      Word wa_joint = relabel_word(wa, phi_a.alphabet(), joint.alphabet());
      Word b = parse_word("b", joint.alphabet());
      Word c = parse_word("c", joint.alphabet());
      Rational closed = sandwich_cumulants(wa_joint, b, c, joint_k);
      // tracial form: k_pi[a] times cumulants of cb over the complement blocks
      Word cb = c;
      cb.append(b.letters());
      auto cb_cumulant = [&](int len) {
        Word repeated;
        std::vector<int> breaks;
        for (int j = 1; j <= len; ++j) {
          repeated.append(cb.letters());
          breaks.push_back(2 * j);
        }
        IntervalGrouping g(2 * len, breaks);
        return cumulant_of_products(NcPartition::full(len), g, repeated.letters(), joint_k);
      };
      Rational tracial_form(0);
      for_each_nc(n, [&](const NcPartition& pi) {
        Rational term = k_pi_eval(pi, wa_joint.letters(), joint_k);
        if (term == 0) return;
        NcPartition complement = kreweras(pi);
        for (const auto& block : complement.blocks()) {
          term *= cb_cumulant(static_cast<int>(block.size()));
          if (term == 0) break;
        }
        tracial_form += term;
      });
      if (closed != tracial_form) return false;
    }
    return true;
  });
  check_run(out, "n = 1: k_1(bac) = phi(a) phi(bc) for free {a}, {b,c}", [&] {
    std::mt19937_64 rng(opt.seed + 42);
    MomentFunctional phi_a = random_moment_functional(1, {"a"}, rng, 3);
    MomentFunctional phi_bc = random_moment_functional(2, {"b", "c"}, rng, 3);
    CumulantTable k_a = cumulants_from_moments(phi_a);
    CumulantTable k_bc = cumulants_from_moments(phi_bc);
    FreeProduct joint({k_a, k_bc});
    Word a = parse_word("a", joint.alphabet());
    Word b = parse_word("b", joint.alphabet());
    Word c = parse_word("c", joint.alphabet());
    Rational closed = sandwich_cumulants(a, b, c, joint.cumulant_fn());
    return closed == phi_a(parse_word("a", phi_a.alphabet())) *
                         phi_bc(parse_word("b c", phi_bc.alphabet()));
  });
  return out;
}

Checks suite_aastar(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "alpha-beta sum over NC(n) equals the engine cumulant of (aa*)^n", [&] {
    std::mt19937_64 rng(opt.seed + 50);
    for (int n = 1; n <= std::min(opt.max_n, 4); ++n) {
      RDiagonalSpec spec = random_rdiag_spec(2 * n, rng);
      CumulantTable k = spec.cumulant_table();
      Word repeated;
      std::vector<int> breaks;
      for (int j = 1; j <= n; ++j) {
        repeated.push_back(Letter{0, false});
        repeated.push_back(Letter{0, true});
        breaks.push_back(2 * j);
      }
      IntervalGrouping g(2 * n, breaks);
      Rational general =
          cumulant_of_products(NcPartition::full(n), g, repeated.letters(), k.fn());
      if (rdiag_aastar_cumulants(spec, n) != general) return false;
    }
    return true;
  });
  check_run(out, "n = 1 gives alpha_1; n = 2 gives alpha_2 + alpha_1 beta_1", [&] {
    std::mt19937_64 rng(opt.seed + 51);
    RDiagonalSpec spec = random_rdiag_spec(4, rng);
    if (rdiag_aastar_cumulants(spec, 1) != spec.alpha_at(1)) return false;
    return rdiag_aastar_cumulants(spec, 2) ==
           spec.alpha_at(2) + spec.alpha_at(1) * spec.beta_at(1);
  });
  return out;
}

Checks suite_rdiag_product(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "odd/even splitting sum equals the engine cumulant of (ab, b*a*, ...)", [&] {
    std::mt19937_64 rng(opt.seed + 60);
    for (int n = 1; n <= std::min(opt.max_n, 3); ++n) {
      for (bool tracial : {false, true}) {
        RDiagonalSpec spec_a = random_rdiag_spec(2 * n, rng, 4, tracial);
        RDiagonalSpec spec_b = random_rdiag_spec(2 * n, rng, 4, tracial);
        CumulantTable k_a = spec_a.cumulant_table("a");
        CumulantTable k_b = spec_b.cumulant_table("b");
        FreeProduct joint({k_a, k_b});
        int a = joint.alphabet().index("a");
        int b = joint.alphabet().index("b");
        Word expanded;
        std::vector<int> breaks;
        for (int j = 0; j < n; ++j) {
          // ab then (ab)* = b* a*
          expanded.push_back(Letter{a, false});
          expanded.push_back(Letter{b, false});
          expanded.push_back(Letter{b, true});
          expanded.push_back(Letter{a, true});
          breaks.push_back(4 * j + 2);
          breaks.push_back(4 * j + 4);
        }
        IntervalGrouping g(4 * n, breaks);
        Rational general = cumulant_of_products(NcPartition::full(2 * n), g,
                                                expanded.letters(), joint.cumulant_fn());
        if (rdiag_product_cumulants(spec_a, spec_b, n) != general) return false;
      }
    }
    return true;
  });
  check_run(out, "n = 1: k_2(ab, b*a*) = alpha_1 gamma_1", [&] {
    std::mt19937_64 rng(opt.seed + 61);
    RDiagonalSpec spec_a = random_rdiag_spec(2, rng);
    RDiagonalSpec spec_b = random_rdiag_spec(2, rng);
    return rdiag_product_cumulants(spec_a, spec_b, 1) ==
           spec_a.alpha_at(1) * spec_b.alpha_at(1);
  });
  return out;
}

Checks suite_rdiag_closure(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "ax is R-diagonal for R-diagonal a free from arbitrary x", [&] {
    std::mt19937_64 rng(opt.seed + 70);
    int derived_order = std::max(2, std::min(opt.order, 6) / 2);
    for (int t = 0; t < std::max(opt.trials / 2, 2); ++t) {
      RDiagonalSpec spec = random_rdiag_spec(2 * derived_order, rng, 3);
      MomentFunctional phi_x =
          random_moment_functional(2 * derived_order, {"x"}, rng, 3);
      CumulantTable k_a = spec.cumulant_table("a");
      CumulantTable k_x = cumulants_from_moments(phi_x);
      FreeProduct joint({k_a, k_x});
      Word ax({Letter{joint.alphabet().index("a"), false},
               Letter{joint.alphabet().index("x"), false}});
      MomentFunctional product =
          derived_distribution(joint, Realization({{"p", ax}}), derived_order);
      if (!is_r_diagonal(product, "p")) return false;
    }
    return true;
  });
  return out;
}

Checks suite_haar_invariance(const VerifyOptions& opt) {
  Checks out;
  int order = std::min(opt.order, 6);
  check_run(out, "R-diagonal x has (ux, x*u*) distributed like (x, x*)", [&] {
    std::mt19937_64 rng(opt.seed + 80);
    for (int t = 0; t < std::max(opt.trials / 3, 2); ++t) {
      MomentFunctional phi_x = r_diagonal_from_spec(random_rdiag_spec(order, rng, 3), "x");
      if (!verify_ux_invariance(phi_x, order)) return false;
    }
    return true;
  });
  check_run(out, "non-R-diagonal x changes distribution under a free Haar unitary", [&] {
    std::mt19937_64 rng(opt.seed + 81);
    for (int t = 0; t < std::max(opt.trials / 3, 2); ++t) {
      MomentFunctional phi_x = random_moment_functional(order, {"x"}, rng, 3);
      while (phi_x(parse_word("x", phi_x.alphabet())) == 0) {
        phi_x = random_moment_functional(order, {"x"}, rng, 3);
      }
      // k_1(x) = phi(x) != 0 is a non-vanishing non-alternating cumulant
      if (is_r_diagonal(phi_x, "x")) return false;
      if (verify_ux_invariance(phi_x, order)) return false;
    }
    return true;
  });
  check_run(out, "x = Haar unitary stays invariant", [&] {
    return verify_ux_invariance(haar_unitary(order, "x"), order);
  });
  return out;
}

Checks suite_powers(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "r = 1 is trivially invariant", [&] {
    std::mt19937_64 rng(opt.seed + 90);
    return verify_power_rdiag(random_rdiag_spec(4, rng), 1, 4);
  });
  check_run(out, "square of a Haar unitary", [&] {
    int order = std::min(opt.order + 2, 8);
    return verify_power_rdiag(haar_spec(order), 2, order);
  });
  check_run(out, "square of a random R-diagonal element", [&] {
    std::mt19937_64 rng(opt.seed + 91);
    int order = std::min(opt.order, 6);
    return verify_power_rdiag(random_rdiag_spec(order, rng, 3), 2, order);
  });
  check_run(out, "cube of a random R-diagonal element (small order)", [&] {
    std::mt19937_64 rng(opt.seed + 92);
    return verify_power_rdiag(random_rdiag_spec(6, rng, 3), 3, 6);
  });
  return out;
}

Checks suite_haar(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "phi(u) = 0, phi(u u*) = 1, phi(u u u* u*) = 1, phi(u u) = 0", [] {
    MomentFunctional haar = haar_unitary(4);
    return haar(parse_word("u", haar.alphabet())) == 0 &&
           haar(parse_word("u u*", haar.alphabet())) == 1 &&
           haar(parse_word("u u u* u*", haar.alphabet())) == 1 &&
           haar(parse_word("u u", haar.alphabet())) == 0;
  });
  check_run(out, "a Haar unitary is R-diagonal", [&] {
    return is_r_diagonal(haar_unitary(std::min(opt.order + 2, 8)), "u");
  });
  check_run(out, "alternating-cumulant data reproduces the Haar distribution", [&] {
    int order = std::min(opt.order + 2, 8);
    MomentFunctional rebuilt = r_diagonal_from_spec(haar_spec(order), "u");
    return same_distribution(rebuilt, haar_unitary(order), {{"u", "u"}});
  });
  check_run(out, "k_2(u, u*) = phi(uu*) - phi(u) phi(u*) = 1", [] {
    MomentFunctional haar = haar_unitary(2);
    CumulantTable k = cumulants_from_moments(haar);
    Word uu = parse_word("u u*", haar.alphabet());
    return k(uu) == haar(uu) - haar(parse_word("u", haar.alphabet())) *
                                   haar(parse_word("u*", haar.alphabet())) &&
           k(uu) == 1;
  });
  return out;
}

Checks suite_freeness(const VerifyOptions& opt) {
  Checks out;
  check_run(out, "phi(a_1 b a_2) = phi(a_1 a_2) phi(b) in a free product", [&] {
    std::mt19937_64 rng(opt.seed + 100);
    MomentFunctional phi_a = random_moment_functional(3, {"a1", "a2"}, rng, 3);
    MomentFunctional phi_b = random_moment_functional(3, {"b"}, rng, 3);
    MomentFunctional joint = free_product({phi_a, phi_b}, 3);
    return joint(parse_word("a1 b a2", joint.alphabet())) ==
           phi_a(parse_word("a1 a2", phi_a.alphabet())) *
               phi_b(parse_word("b", phi_b.alphabet()));
  });
  check_run(out, "free products pass the centered alternating moment test", [&] {
    std::mt19937_64 rng(opt.seed + 101);
    int order = std::min(opt.order, 6);
    MomentFunctional phi_a = random_moment_functional(order, {"a"}, rng, 3);
    MomentFunctional phi_b = random_moment_functional(order, {"b"}, rng, 3);
    MomentFunctional joint = free_product({phi_a, phi_b}, order);
    FamilyAssignment two({{"a", 1}, {"b", 2}});
    if (!check_freeness_moment_form(joint, two, order)) return false;
    MomentFunctional phi_c = random_moment_functional(4, {"c"}, rng, 3);
    MomentFunctional triple =
        free_product({truncate_moments(phi_a, 4), truncate_moments(phi_b, 4), phi_c}, 4);
    FamilyAssignment three({{"a", 1}, {"b", 2}, {"c", 3}});
    return check_freeness_moment_form(triple, three, 4);
  });
  check_run(out, "a correlated pair fails the freeness test", [] {
    Alphabet alphabet({"a", "b"});
    WordTable table;
    table.emplace(parse_word("a b", alphabet), Rational(1));
    MomentFunctional correlated = MomentFunctional::with_default_zero(2, alphabet, table);
    FamilyAssignment families({{"a", 1}, {"b", 2}});
    return !check_freeness_moment_form(correlated, families, 2);
  });
  check_run(out, "Haar unitary free from a sample x passes the freeness test", [&] {
    std::mt19937_64 rng(opt.seed + 102);
    MomentFunctional phi_x = random_moment_functional(4, {"x"}, rng, 3);
    MomentFunctional joint = free_product({haar_unitary(4), phi_x}, 4);
    FamilyAssignment families({{"u", 1}, {"x", 2}});
    return check_freeness_moment_form(joint, families, 4);
  });
  check_run(out, "single marginal free product is the marginal itself", [&] {
    std::mt19937_64 rng(opt.seed + 103);
    MomentFunctional phi = random_moment_functional(4, {"a"}, rng, 3);
    return free_product({phi}, 4) == phi;
  });
  check_run(out, "swapping alpha and beta gives the distribution of a*", [&] {
    std::mt19937_64 rng(opt.seed + 104);
    RDiagonalSpec spec = random_rdiag_spec(6, rng, 3);
    MomentFunctional phi = r_diagonal_from_spec(spec, "a");
    RDiagonalSpec swapped(spec.order, spec.beta, spec.alpha);
    MomentFunctional phi_swapped = r_diagonal_from_spec(swapped, "a");
    bool ok = true;
    std::vector<Letter> starred;
    for_each_word(1, 1, spec.order, [&](std::span<const Letter> w) {
      if (!ok) return;
      starred.assign(w.begin(), w.end());
      for (Letter& l : starred) l.starred = !l.starred;
      if (phi_swapped(w) != phi(std::span<const Letter>(starred))) ok = false;
    });
    return ok;
  });
  return out;
}

struct SuiteEntry {
  const char* name;
  Checks (*run)(const VerifyOptions&);
};

constexpr SuiteEntry kSuites[] = {
    {"lattice", suite_lattice},
    {"moments-cumulants", suite_moments_cumulants},
    {"kprod", suite_kprod},
    {"ksigma", suite_ksigma},
    {"freemult", suite_freemult},
    {"sandwich", suite_sandwich},
    {"aastar", suite_aastar},
    {"rdiag-product", suite_rdiag_product},
    {"rdiag-closure", suite_rdiag_closure},
    {"haar-invariance", suite_haar_invariance},
    {"powers", suite_powers},
    {"haar", suite_haar},
    {"freeness", suite_freeness},
};

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : kSuites) out.push_back(entry.name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "all") {
    Checks all;
    for (const auto& entry : kSuites) {
      Checks one = entry.run(options);
      for (auto& result : one) {
        result.name = std::string(entry.name) + ": " + result.name;
        all.push_back(std::move(result));
      }
    }
    return all;
  }
  for (const auto& entry : kSuites) {
    if (name == entry.name) return entry.run(options);
  }
  throw std::invalid_argument("unknown verification suite: '" + name + "'");
}

}  // namespace ncfree
