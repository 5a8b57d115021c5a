#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "dendric/words.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace dendric;
using helpers::G;
using helpers::W;

TEST_CASE("free reduction") {
  Alphabet abc({"a", "b", "c"});
  int a = 0, b = 1, c = 2;

  SECTION("single cancellation") {
    GroupWord g = reduce({make_syllable(a, +1), make_syllable(b, +1),
                          make_syllable(b, -1), make_syllable(c, +1)},
                         abc);
    CHECK(g == G(abc, "ac"));
  }
  SECTION("empty input") { CHECK(reduce({}, abc) == GroupWord()); }
  SECTION("(ab)^-1 (aba) reduces to a") {
    GroupWord g = G(abc, "ab").inverse() * G(abc, "aba");
    CHECK(g == G(abc, "a"));
  }
  SECTION("unknown letter") {
    CHECK_THROWS_AS(reduce({make_syllable(7, +1)}, abc), input_error);
  }
  SECTION("idempotent on random syllable sequences") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> letter(0, 2), sign(0, 1), len(0, 20);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<int> raw;
      int n = len(rng);
      for (int i = 0; i < n; ++i)
        raw.push_back(make_syllable(letter(rng), sign(rng) ? +1 : -1));
      GroupWord once = reduce(raw, abc);
      GroupWord twice(once.syllables());
      CHECK(once == twice);
    }
  }
}

TEST_CASE("substitution application") {
  const Substitution& trib = helpers::tribonacci();
  const Alphabet& abc = trib.domain;

  CHECK(apply(trib, W(abc, "a")) == W(abc, "ab"));
  CHECK(apply(trib, Word()) == Word());
  CHECK(apply(trib, apply(trib, W(abc, "a"))) == W(abc, "abac"));
}

TEST_CASE("group morphism extension") {
  const Substitution& trib = helpers::tribonacci();
  const Alphabet& abc = trib.domain;

  SECTION("inverse of a rule image") {
    CHECK(apply_group(trib, G(abc, "a").inverse()) == G(abc, "ab").inverse());
  }
  SECTION("identity is preserved") {
    GroupWord aa_inv = G(abc, "a") * G(abc, "a").inverse();
    CHECK(apply_group(trib, aa_inv) == GroupWord());
  }
  SECTION("b^-1 a maps to c^-1 b") {
    GroupWord g = G(abc, "b").inverse() * G(abc, "a");
    CHECK(apply_group(trib, g) == G(abc, "c").inverse() * G(abc, "b"));
  }
  SECTION("agrees with apply on positive words") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> letter(0, 2), len(0, 12);
    for (int trial = 0; trial < 100; ++trial) {
      Word w;
      int n = len(rng);
      for (int i = 0; i < n; ++i) w.letters.push_back(letter(rng));
      CHECK(apply_group(trib, to_group(w)) == to_group(apply(trib, w)));
    }
  }
  SECTION("morphism law on random pairs") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
      GroupWord g = oracles::random_reduced_word(rng, 3, 8);
      GroupWord h = oracles::random_reduced_word(rng, 3, 8);
      CHECK(apply_group(trib, g * h) ==
            apply_group(trib, g) * apply_group(trib, h));
    }
  }
}

TEST_CASE("composition") {
  const Substitution& trib = helpers::tribonacci();
  const Alphabet& abc = trib.domain;

  SECTION("identity is neutral") {
    Substitution id = Substitution::identity(abc);
    Substitution si = compose(trib, id);
    for (int x = 0; x < 3; ++x) CHECK(si.rule(x) == trib.rule(x));
  }
  SECTION("alpha composed with itself") {
    Alphabet ab({"a", "b"});
    Substitution alpha(ab, ab, {W(ab, "ab"), W(ab, "b")}, "alpha");
    Substitution twice = compose(alpha, alpha);
    CHECK(twice.rule(0) == W(ab, "abb"));
    CHECK(twice.rule(1) == W(ab, "b"));
  }
  SECTION("square of the generator") {
    Substitution sq = compose(trib, trib);
    CHECK(sq.rule(0) == W(abc, "abac"));
    CHECK(sq.rule(1) == W(abc, "aba"));
    CHECK(sq.rule(2) == W(abc, "ab"));
  }
  SECTION("alphabet mismatch is rejected") {
    Alphabet xy({"x", "y"});
    Substitution other(xy, xy, {W(xy, "xy"), W(xy, "x")}, "other");
    CHECK_THROWS_AS(compose(trib, other), input_error);
  }
  SECTION("associativity on random compatible triples") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> letter(0, 2), len(1, 3);
    auto random_sub = [&]() {
      std::vector<Word> rules;
      for (int x = 0; x < 3; ++x) {
        Word img;
        int n = len(rng);
        for (int i = 0; i < n; ++i) img.letters.push_back(letter(rng));
        rules.push_back(img);
      }
      return Substitution(helpers::tribonacci().domain,
                          helpers::tribonacci().domain, rules);
    };
    for (int trial = 0; trial < 50; ++trial) {
      Substitution f = random_sub(), g = random_sub(), h = random_sub();
      Substitution lhs = compose(compose(f, g), h);
      Substitution rhs = compose(f, compose(g, h));
      for (int x = 0; x < 3; ++x) CHECK(lhs.rule(x) == rhs.rule(x));
    }
  }
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(helpers::tribonacci()));
  CHECK(is_primitive(helpers::fibonacci()));
  CHECK_FALSE(is_primitive(
      parse_substitution("a -> aa\nb -> bb\n", "split")));
}

TEST_CASE("substitution text format") {
  SECTION("comments and blank lines") {
    Substitution s = parse_substitution(
        "# a comment\n\na -> ab  # trailing\n b -> a \n");
    CHECK(s.domain.size() == 2);
    CHECK(s.rule(0) == W(s.domain, "ab"));
    CHECK(s.rule(1) == W(s.domain, "a"));
  }
  SECTION("alphabet order follows rule order") {
    Substitution s = parse_substitution("b -> ba\na -> ab\n");
    CHECK(s.domain.name(0) == "b");
    CHECK(s.domain.name(1) == "a");
  }
  SECTION("image letter without a rule") {
    CHECK_THROWS_AS(parse_substitution("a -> ab\n"), input_error);
  }
  SECTION("duplicate rule") {
    CHECK_THROWS_AS(parse_substitution("a -> a\na -> aa\n"), input_error);
  }
  SECTION("empty image") {
    CHECK_THROWS_AS(parse_substitution("a -> \n"), input_error);
  }
  SECTION("multi-letter left-hand side") {
    CHECK_THROWS_AS(parse_substitution("ab -> a\n"), input_error);
  }
  SECTION("missing arrow") {
    CHECK_THROWS_AS(parse_substitution("a = ab\n"), input_error);
  }
  SECTION("empty file") { CHECK_THROWS_AS(parse_substitution(""), input_error); }
}

TEST_CASE("word parsing and display") {
  Alphabet abc({"a", "b", "c"});
  CHECK(parse_word("eps", abc) == Word());
  CHECK(parse_word("abc", abc) == Word({std::vector<int>{0, 1, 2}}));
  CHECK_THROWS_AS(parse_word("xyz", abc), input_error);
  CHECK(word_str(abc, Word()) == "eps");
  CHECK(word_str(abc, parse_word("aba", abc)) == "aba");

  Alphabet syms = Alphabet::symbols("r", 3);
  CHECK(syms.name(0) == "r1");
  CHECK(word_str(syms, Word({std::vector<int>{0, 2}})) == "r1.r3");
  CHECK(group_word_str(abc, G(abc, "ab").inverse()) == "b^-1a^-1");
}
