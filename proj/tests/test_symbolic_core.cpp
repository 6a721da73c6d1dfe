#include <doctest.h>

#include <random>

#include "ncfree/distribution.hpp"
#include "ncfree/free_ops.hpp"
#include "ncfree/verify.hpp"

using namespace ncfree;

TEST_CASE("rational parsing and printing") {
  CHECK(rational_to_string(rational_from_string("3/6")) == "1/2");
  CHECK(rational_to_string(rational_from_string("-4/2")) == "-2");
  CHECK(rational_to_string(rational_from_string("7")) == "7");
  CHECK(rational_to_string(rational_from_string(" 2/-4 ")) == "-1/2");
  CHECK(rational_from_string("0/5") == 0);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("a"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);
  CHECK(rational_to_decimal(rational_from_string("1/3"), 4) == "0.3333");
  CHECK(rational_to_decimal(rational_from_string("-1/2"), 1) == "-0.5");
  CHECK(rational_to_decimal(rational_from_string("5"), 0) == "5");
}

TEST_CASE("word parsing and printing") {
  Alphabet ab({"a", "b"});
  Word w = parse_word("a a* b", ab);
  CHECK(w.size() == 3);
  CHECK(w[0] == Letter{0, false});
  CHECK(w[1] == Letter{0, true});
  CHECK(w[2] == Letter{1, false});
  CHECK(word_to_string(w.letters(), ab) == "a a* b");
  CHECK(parse_word("", ab).empty());
  CHECK(parse_word("  \t ", ab).empty());

  Alphabet u({"u"});
  CHECK(parse_word("u u*", u).size() == 2);

  CHECK_THROWS_AS(parse_word("a c", ab), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("a**", ab), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("3a", ab), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
  CHECK_THROWS_AS(Alphabet({"a*"}), std::invalid_argument);

  CHECK(w.adjoint() == parse_word("b* a a*", ab));
  CHECK(w.adjoint().adjoint() == w);
}

TEST_CASE("word round trip under fuzzed spacing") {
  Alphabet ab({"a", "b", "x1"});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> var(0, 2), star(0, 1), len(0, 6), pad(1, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> letters;
    int l = len(rng);
    for (int i = 0; i < l; ++i) letters.push_back(Letter{var(rng), star(rng) == 1});
    Word w(letters);
    std::string text;
    for (const Letter& letter : w) {
      text.append(static_cast<size_t>(pad(rng)), ' ');
      text += ab.name(letter.var);
      if (letter.starred) text += '*';
    }
    CHECK(parse_word(text, ab) == w);
  }
}

TEST_CASE("moment functional evaluation and truncation") {
  MomentFunctional haar = haar_unitary(4);
  CHECK(haar(Word{}) == 1);  // unital
  CHECK(haar(parse_word("u", haar.alphabet())) == 0);
  CHECK(haar(parse_word("u u*", haar.alphabet())) == 1);
  CHECK_THROWS_AS(haar(parse_word("u u u u u", haar.alphabet())), TruncationError);

  Alphabet a({"a"});
  WordTable incomplete;
  incomplete.emplace(parse_word("a", a), Rational(1));
  CHECK_THROWS_AS(MomentFunctional(2, a, incomplete), std::invalid_argument);
  MomentFunctional filled = MomentFunctional::with_default_zero(2, a, incomplete);
  CHECK(filled(parse_word("a", a)) == 1);
  CHECK(filled(parse_word("a a", a)) == 0);

  CHECK(truncate_moments(haar, 2)(parse_word("u u*", haar.alphabet())) == 1);
  CHECK_THROWS_AS(truncate_moments(haar, 9), TruncationError);
}

TEST_CASE("same_distribution") {
  MomentFunctional haar_u = haar_unitary(4, "u");
  MomentFunctional haar_v = haar_unitary(4, "v");
  CHECK(same_distribution(haar_u, haar_u, {{"u", "u"}}));
  CHECK(same_distribution(haar_u, haar_v, {{"u", "v"}}));

  std::mt19937_64 rng(5);
  MomentFunctional random_x = random_moment_functional(4, {"x"}, rng);
  CHECK(same_distribution(random_x, random_x, {{"x", "x"}}));
  // flip one highest-order value
  WordTable table = random_x.table();
  Word top = parse_word("x x x x", random_x.alphabet());
  table[top] = table[top] + 1;
  MomentFunctional changed(4, random_x.alphabet(), table);
  CHECK(!same_distribution(random_x, changed, {{"x", "x"}}));

  CHECK_THROWS_AS(same_distribution(haar_u, haar_unitary(3, "v"), {{"u", "v"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(same_distribution(haar_u, haar_v, {{"u", "u"}}), std::invalid_argument);
}

TEST_CASE("distribution files round trip byte-exactly") {
  std::mt19937_64 rng(9);
  MomentFunctional phi = random_moment_functional(3, {"a", "b"}, rng);
  std::string text = moments_to_json(phi);
  MomentFunctional reloaded = moments_from_json(text);
  CHECK(reloaded == phi);
  CHECK(moments_to_json(reloaded) == text);

  CumulantTable k = cumulants_from_moments(phi);
  std::string ktext = cumulants_to_json(k);
  CHECK(cumulants_from_json(ktext) == k);
  CHECK(cumulants_to_json(cumulants_from_json(ktext)) == ktext);

  // sparse input with explicit default
  std::string sparse = R"({"order": 2, "alphabet": ["a"], "default": "0",
                           "moments": [{"word": "a a*", "value": "2/3"}]})";
  MomentFunctional loaded = moments_from_json(sparse);
  CHECK(loaded(parse_word("a a*", loaded.alphabet())) == Rational(2, 3));
  CHECK(loaded(parse_word("a", loaded.alphabet())) == 0);

  // missing words without a default are rejected
  std::string missing = R"({"order": 2, "alphabet": ["a"],
                            "moments": [{"word": "a a*", "value": "2/3"}]})";
  CHECK_THROWS_AS(moments_from_json(missing), std::invalid_argument);
  CHECK_THROWS_AS(moments_from_json("{"), std::invalid_argument);
  std::string dup = R"({"order": 1, "alphabet": ["a"], "default": "0",
                        "moments": [{"word": "a", "value": "1"},
                                     {"word": "a", "value": "2"}]})";
  CHECK_THROWS_AS(moments_from_json(dup), std::invalid_argument);
}

TEST_CASE("r-diagonal spec files") {
  RDiagonalSpec spec(5, {Rational(1), Rational(-1, 2)}, {Rational(0), Rational(3)});
  std::string text = rdiag_spec_to_json(spec);
  RDiagonalSpec reloaded = rdiag_spec_from_json(text);
  CHECK(reloaded.order == 5);
  CHECK(reloaded.alpha_at(2) == Rational(-1, 2));
  CHECK(reloaded.beta_at(2) == 3);
  CHECK(rdiag_spec_to_json(reloaded) == text);
  CHECK_THROWS_AS(reloaded.alpha_at(3), TruncationError);
  CHECK_THROWS_AS(RDiagonalSpec(4, {Rational(1)}, {Rational(1), Rational(1)}),
                  std::invalid_argument);
}
