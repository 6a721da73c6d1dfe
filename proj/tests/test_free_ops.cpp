#include <doctest.h>

#include <random>

#include "ncfree/free_ops.hpp"
#include "ncfree/verify.hpp"

using namespace ncfree;

TEST_CASE("free products satisfy the moment factorization rule") {
  std::mt19937_64 rng(31);
  MomentFunctional phi_a = random_moment_functional(3, {"a1", "a2"}, rng, 3);
  MomentFunctional phi_b = random_moment_functional(3, {"b"}, rng, 3);
  MomentFunctional joint = free_product({phi_a, phi_b}, 3);
  CHECK(joint(parse_word("a1 b a2", joint.alphabet())) ==
        phi_a(parse_word("a1 a2", phi_a.alphabet())) * phi_b(parse_word("b", phi_b.alphabet())));
  CHECK(joint(parse_word("a1 b", joint.alphabet())) ==
        phi_a(parse_word("a1", phi_a.alphabet())) * phi_b(parse_word("b", phi_b.alphabet())));

  MomentFunctional single = free_product({phi_b}, 3);
  CHECK(single == phi_b);

  CHECK_THROWS_AS(free_product({phi_a, phi_a}, 3), std::invalid_argument);
  CHECK_THROWS_AS(free_product({phi_a}, 5), std::invalid_argument);
}

TEST_CASE("freeness checker accepts free products and rejects correlation") {
  std::mt19937_64 rng(32);
  MomentFunctional phi_a = random_moment_functional(5, {"a"}, rng, 3);
  MomentFunctional phi_b = random_moment_functional(5, {"b"}, rng, 3);
  MomentFunctional joint = free_product({phi_a, phi_b}, 5);
  FamilyAssignment fam({{"a", 1}, {"b", 2}});
  CHECK(check_freeness_moment_form(joint, fam, 5));

  Alphabet ab({"a", "b"});
  WordTable t;
  t.emplace(parse_word("a b", ab), Rational(1));
  MomentFunctional correlated = MomentFunctional::with_default_zero(2, ab, t);
  CHECK(!check_freeness_moment_form(correlated, fam, 2));

  MomentFunctional with_haar = free_product({haar_unitary(4), phi_a}, 4);
  FamilyAssignment fam_ux({{"u", 1}, {"a", 2}});
  CHECK(check_freeness_moment_form(with_haar, fam_ux, 4));

  FamilyAssignment partial({{"a", 1}});
  CHECK_THROWS_AS(check_freeness_moment_form(joint, partial, 3), std::invalid_argument);
}

TEST_CASE("haar unitary moments and R-diagonality") {
  MomentFunctional haar = haar_unitary(8);
  auto p = [&](const char* s) { return haar(parse_word(s, haar.alphabet())); };
  CHECK(p("u u*") == 1);
  CHECK(p("u* u") == 1);
  CHECK(p("u") == 0);
  CHECK(p("u u") == 0);
  CHECK(p("u u u* u*") == 1);
  CHECK(p("u u* u u*") == 1);
  CHECK(p("u u u* u") == 0);
  CHECK(is_r_diagonal(haar, "u"));
}

TEST_CASE("is_alternating") {
  Alphabet a({"a"});
  CHECK(is_alternating(parse_word("a a* a a* a a*", a)));
  CHECK(is_alternating(parse_word("a* a", a)));
  CHECK(!is_alternating(parse_word("a a* a* a a a* a a*", a)));
  CHECK(!is_alternating(parse_word("a a* a a* a", a)));
  CHECK(!is_alternating(parse_word("a", a)));
  Alphabet ab({"a", "b"});
  CHECK_THROWS_AS(is_alternating(parse_word("a b", ab)), std::invalid_argument);
}

TEST_CASE("r_diagonal_from_spec round trips and detects non-R-diagonal data") {
  std::mt19937_64 rng(33);
  RDiagonalSpec spec = random_rdiag_spec(6, rng, 3);
  MomentFunctional phi = r_diagonal_from_spec(spec, "a");
  CHECK(is_r_diagonal(phi, "a"));

  // alpha = (1, 0, 0), beta = (1, 0, 0): only k_2 contributes
  RDiagonalSpec unit(6, {Rational(1), Rational(0), Rational(0)},
                     {Rational(1), Rational(0), Rational(0)});
  MomentFunctional phi_unit = r_diagonal_from_spec(unit, "a");
  CHECK(phi_unit(parse_word("a a*", phi_unit.alphabet())) == 1);
  CHECK(phi_unit(parse_word("a", phi_unit.alphabet())) == 0);

  RDiagonalSpec zero(4, {Rational(0), Rational(0)}, {Rational(0), Rational(0)});
  MomentFunctional phi_zero = r_diagonal_from_spec(zero, "a");
  for (const auto& [word, value] : phi_zero.table()) CHECK(value == 0);

  // a variable with k_1 != 0 is not R-diagonal
  Alphabet x({"x"});
  WordTable t;
  t.emplace(parse_word("x", x), Rational(1));
  t.emplace(parse_word("x*", x), Rational(1));
  MomentFunctional mean_one = MomentFunctional::with_default_zero(2, x, t);
  CHECK(!is_r_diagonal(mean_one, "x"));

  // extracting alpha/beta from the haar unitary reproduces it
  CumulantTable k_haar = cumulants_from_moments(haar_unitary(6));
  std::vector<Rational> alpha, beta;
  for (int n = 1; n <= 3; ++n) {
    std::vector<Letter> a_first, star_first;
    for (int i = 0; i < 2 * n; ++i) {
      a_first.push_back(Letter{0, i % 2 == 1});
      star_first.push_back(Letter{0, i % 2 == 0});
    }
    alpha.push_back(k_haar(std::span<const Letter>(a_first)));
    beta.push_back(k_haar(std::span<const Letter>(star_first)));
  }
  RDiagonalSpec haar_data(6, alpha, beta);
  CHECK(same_distribution(r_diagonal_from_spec(haar_data, "u"), haar_unitary(6), {{"u", "u"}}));
}

TEST_CASE("free multiplication formula (Kreweras pairing)") {
  std::mt19937_64 rng(34);
  for (int n = 1; n <= 4; ++n) {
    MomentFunctional phi_a = random_moment_functional(n, {"a"}, rng, 3);
    MomentFunctional phi_b = random_moment_functional(n, {"b"}, rng, 3);
    CumulantTable k_a = cumulants_from_moments(phi_a);
    CumulantTable k_b = cumulants_from_moments(phi_b);
    FreeProduct joint({k_a, k_b});

    std::uniform_int_distribution<int> star(0, 1);
    std::vector<Letter> la, lb;
    for (int i = 0; i < n; ++i) {
      la.push_back(Letter{0, star(rng) == 1});
      lb.push_back(Letter{0, star(rng) == 1});
    }
    Word wa(la), wb(lb);
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
    Rational general = cumulant_of_products(NcPartition::full(n),
                                            IntervalGrouping(2 * n, breaks),
                                            interleaved.letters(), joint.cumulant_fn());
    CHECK(closed == general);

    if (n == 1) CHECK(closed == k_a(wa) * k_b(wb));
  }

  // n = 2 closed form: K({(1,2)}) = 0_2, K(0_2) = 1_2
  MomentFunctional phi_a = random_moment_functional(2, {"a"}, rng, 3);
  MomentFunctional phi_b = random_moment_functional(2, {"b"}, rng, 3);
  CumulantTable k_a = cumulants_from_moments(phi_a);
  CumulantTable k_b = cumulants_from_moments(phi_b);
  Word wa = parse_word("a a", phi_a.alphabet());
  Word wb = parse_word("b b*", phi_b.alphabet());
  Word a1 = parse_word("a", phi_a.alphabet());
  Word b1 = parse_word("b", phi_b.alphabet());
  Word b2 = parse_word("b*", phi_b.alphabet());
  CHECK(free_mult_cumulants(wa, wb, k_a, k_b) ==
        k_a(wa) * k_b(b1) * k_b(b2) + k_a(a1) * k_a(a1) * k_b(wb));
  CHECK_THROWS_AS(free_mult_cumulants(wa, b1, k_a, k_b), std::invalid_argument);
}

TEST_CASE("sandwich cumulants match the product-argument route") {
  std::mt19937_64 rng(35);
  for (int n = 1; n <= 3; ++n) {
    MomentFunctional phi_a = random_moment_functional(n, {"a"}, rng, 3);
    MomentFunctional phi_bc = random_moment_functional(2 * n, {"b", "c"}, rng, 3);
    CumulantTable k_a = cumulants_from_moments(phi_a);
    CumulantTable k_bc = cumulants_from_moments(phi_bc);
    FreeProduct joint({k_a, k_bc});
    std::uniform_int_distribution<int> star(0, 1);
    std::vector<Letter> la;
    int a_var = joint.alphabet().index("a");
    for (int i = 0; i < n; ++i) la.push_back(Letter{a_var, star(rng) == 1});
    Word wa(la);
    Word b = parse_word("b", joint.alphabet());
    Word c = parse_word("c", joint.alphabet());
    Rational closed = sandwich_cumulants(wa, b, c, joint.cumulant_fn());

    Word expanded;
    std::vector<int> breaks;
    for (int i = 0; i < n; ++i) {
      expanded.push_back(b[0]);
      expanded.push_back(wa[i]);
      expanded.push_back(c[0]);
      breaks.push_back(3 * (i + 1));
    }
    Rational general =
        cumulant_of_products(NcPartition::full(n), IntervalGrouping(3 * n, breaks),
                             expanded.letters(), joint.cumulant_fn());
    CHECK(closed == general);

    if (n == 1) {
      CHECK(closed == phi_a(Word({Letter{0, wa[0].starred}})) *
                          phi_bc(parse_word("b c", phi_bc.alphabet())));
    }
  }
}

TEST_CASE("alternating aa* cumulants of an R-diagonal element") {
  std::mt19937_64 rng(36);
  for (int n = 1; n <= 4; ++n) {
    RDiagonalSpec spec = random_rdiag_spec(2 * n, rng, 3);
    CumulantTable k = spec.cumulant_table();
    Word repeated;
    std::vector<int> breaks;
    for (int j = 1; j <= n; ++j) {
      repeated.push_back(Letter{0, false});
      repeated.push_back(Letter{0, true});
      breaks.push_back(2 * j);
    }
    Rational general =
        cumulant_of_products(NcPartition::full(n), IntervalGrouping(2 * n, breaks),
                             repeated.letters(), k.fn());
    CHECK(rdiag_aastar_cumulants(spec, n) == general);
  }
  RDiagonalSpec spec = random_rdiag_spec(4, rng, 3);
  CHECK(rdiag_aastar_cumulants(spec, 1) == spec.alpha_at(1));
  CHECK(rdiag_aastar_cumulants(spec, 2) ==
        spec.alpha_at(2) + spec.alpha_at(1) * spec.beta_at(1));
  CHECK_THROWS_AS(rdiag_aastar_cumulants(spec, 3), TruncationError);
}

TEST_CASE("alternating cumulants of a product of free R-diagonal elements") {
  std::mt19937_64 rng(37);
  for (int n = 1; n <= 3; ++n) {
    RDiagonalSpec spec_a = random_rdiag_spec(2 * n, rng, 3);      // non-tracial
    RDiagonalSpec spec_b = random_rdiag_spec(2 * n, rng, 3);
    CumulantTable k_a = spec_a.cumulant_table("a");
    CumulantTable k_b = spec_b.cumulant_table("b");
    FreeProduct joint({k_a, k_b});
    int a = joint.alphabet().index("a");
    int b = joint.alphabet().index("b");
    Word expanded;
    std::vector<int> breaks;
    for (int j = 0; j < n; ++j) {
      expanded.push_back(Letter{a, false});
      expanded.push_back(Letter{b, false});
      expanded.push_back(Letter{b, true});
      expanded.push_back(Letter{a, true});
      breaks.push_back(4 * j + 2);
      breaks.push_back(4 * j + 4);
    }
    Rational general =
        cumulant_of_products(NcPartition::full(2 * n), IntervalGrouping(4 * n, breaks),
                             expanded.letters(), joint.cumulant_fn());
    CHECK(rdiag_product_cumulants(spec_a, spec_b, n) == general);
  }
  RDiagonalSpec sa = random_rdiag_spec(2, rng, 3);
  RDiagonalSpec sb = random_rdiag_spec(2, rng, 3);
  CHECK(rdiag_product_cumulants(sa, sb, 1) == sa.alpha_at(1) * sb.alpha_at(1));
  CHECK_THROWS_AS(rdiag_product_cumulants(sa, sb, 2), TruncationError);
}

TEST_CASE("product with a free R-diagonal factor is R-diagonal") {
  std::mt19937_64 rng(38);
  RDiagonalSpec spec = random_rdiag_spec(6, rng, 3);
  MomentFunctional phi_x = random_moment_functional(6, {"x"}, rng, 3);
  CumulantTable k_a = spec.cumulant_table("a");
  CumulantTable k_x = cumulants_from_moments(phi_x);
  FreeProduct joint({k_a, k_x});
  Word ax({Letter{joint.alphabet().index("a"), false}, Letter{joint.alphabet().index("x"), false}});
  MomentFunctional product =
      derived_distribution(joint.cumulant_fn(), Realization({{"p", ax}}), 3);
  CHECK(is_r_diagonal(product, "p"));

  // the family-pruned sweep agrees with the unpruned one
  CHECK(derived_distribution(joint, Realization({{"p", ax}}), 3) == product);
  bool ok = true;
  for_each_word(joint.alphabet().size(), 1, 4, [&](std::span<const Letter> w) {
    if (ok && joint.moment(w) != moment_from_cumulants_eval(w, joint.cumulant_fn())) ok = false;
  });
  CHECK(ok);
}

TEST_CASE("Haar-unitary invariance characterizes R-diagonality") {
  std::mt19937_64 rng(39);
  SUBCASE("R-diagonal inputs stay invariant") {
    MomentFunctional phi_x = r_diagonal_from_spec(random_rdiag_spec(4, rng, 3), "x");
    CHECK(verify_ux_invariance(phi_x, 4));
  }
  SUBCASE("haar unitary input") {
    CHECK(verify_ux_invariance(haar_unitary(4, "x"), 4));
  }
  SUBCASE("non-R-diagonal input fails") {
    MomentFunctional phi_x = random_moment_functional(4, {"x"}, rng, 3);
    while (phi_x(parse_word("x", phi_x.alphabet())) == 0) {
      phi_x = random_moment_functional(4, {"x"}, rng, 3);
    }
    CHECK(!is_r_diagonal(phi_x, "x"));
    CHECK(!verify_ux_invariance(phi_x, 4));
  }
}

TEST_CASE("powers of R-diagonal elements at desk scale") {
  std::mt19937_64 rng(40);
  CHECK(verify_power_rdiag(random_rdiag_spec(4, rng, 3), 1, 4));
  CHECK(verify_power_rdiag(random_rdiag_spec(6, rng, 3), 2, 6));
  CHECK(verify_power_rdiag(random_rdiag_spec(6, rng, 3), 3, 6));
  CHECK_THROWS_AS(verify_power_rdiag(random_rdiag_spec(4, rng, 3), 2, 6), TruncationError);
}

TEST_CASE("swapping alpha and beta gives the adjoint distribution") {
  std::mt19937_64 rng(41);
  RDiagonalSpec spec = random_rdiag_spec(6, rng, 3);
  MomentFunctional phi = r_diagonal_from_spec(spec, "a");
  RDiagonalSpec swapped(spec.order, spec.beta, spec.alpha);
  MomentFunctional phi_swapped = r_diagonal_from_spec(swapped, "a");
  for (const auto& [word, value] : phi_swapped.table()) {
    std::vector<Letter> starred(word.begin(), word.end());
    for (Letter& l : starred) l.starred = !l.starred;
    CHECK(value == phi(std::span<const Letter>(starred)));
  }
}

TEST_CASE("verification suites all pass at default options") {
  VerifyOptions options;
  options.max_n = 4;
  options.order = 4;
  options.trials = 3;
  for (const std::string& name : verify_suite_names()) {
    for (const CheckResult& result : run_verify_suite(name, options)) {
      INFO(name, ": ", result.name, " ", result.detail);
      CHECK(result.passed);
    }
  }
  CHECK_THROWS_AS(run_verify_suite("nope", options), std::invalid_argument);
}
