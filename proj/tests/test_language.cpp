#include <catch2/catch_amalgamated.hpp>

#include "dendric/language.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace dendric;
using helpers::lang;
using helpers::W;
using helpers::word_set;

TEST_CASE("language generation matches hand-derived factor sets") {
  SECTION("tribonacci, n = 2") {
    LanguageApprox L = generate_language(helpers::tribonacci(), 2);
    CHECK(L.factors == word_set(L.alphabet, {"eps", "a", "b", "c", "aa", "ab",
                                             "ac", "ba", "ca"}));
  }
  SECTION("fibonacci, n = 2") {
    LanguageApprox L = generate_language(helpers::fibonacci(), 2);
    CHECK(L.factors ==
          word_set(L.alphabet, {"eps", "a", "b", "aa", "ab", "ba"}));
  }
  SECTION("n = 1 gives the whole alphabet") {
    LanguageApprox L = generate_language(helpers::thuemorse(), 1);
    CHECK(L.factors == word_set(L.alphabet, {"eps", "a", "b"}));
  }
}

TEST_CASE("language generation agrees with a string-based oracle") {
  struct Case {
    const Substitution& s;
    oracles::StringRules rules;
    int power;
  };
  Case cases[] = {
      {helpers::tribonacci(), {{'a', "ab"}, {'b', "ac"}, {'c', "a"}}, 16},
      {helpers::fibonacci(), {{'a', "ab"}, {'b', "a"}}, 20},
      {helpers::thuemorse(), {{'a', "ab"}, {'b', "ba"}}, 13},
  };
  for (const Case& c : cases) {
    const LanguageApprox& L = lang(c.s, 8);
    std::set<std::string> expected =
        oracles::naive_factors(oracles::naive_iterate(c.rules, 'a', c.power), 8);
    std::set<std::string> got;
    for (const Word& f : L.factors) {
      if (!f.empty()) got.insert(word_str(L.alphabet, f));
    }
    INFO(c.s.name);
    CHECK(got == expected);
  }
}

TEST_CASE("language generation guards") {
  CHECK_THROWS_AS(
      generate_language(parse_substitution("a -> aa\nb -> bb\n"), 4),
      input_error);
  CHECK_THROWS_AS(generate_language(helpers::tribonacci(), 0), input_error);
}

TEST_CASE("restriction consistency") {
  const LanguageApprox& big = lang(helpers::tribonacci(), 12);
  LanguageApprox small = generate_language(helpers::tribonacci(), 6);
  WordSet restricted;
  for (const Word& f : big.factors) {
    if (f.size() <= 6) restricted.insert(f);
  }
  CHECK(restricted == small.factors);
}

TEST_CASE("generation is independent of the starting letter") {
  for (int start = 0; start < 3; ++start) {
    GenOptions opts;
    opts.start_letter = start;
    LanguageApprox L = generate_language(helpers::tribonacci(), 6, opts);
    CHECK(L.factors == lang(helpers::tribonacci(), 6).factors);
  }
}

TEST_CASE("extension graphs") {
  const LanguageApprox& trib = lang(helpers::tribonacci(), 24);
  const LanguageApprox& fib = lang(helpers::fibonacci(), 24);
  const LanguageApprox& tm = lang(helpers::thuemorse(), 24);

  SECTION("tribonacci at a") {
    ExtensionGraph g = extension_graph(trib, W(trib.alphabet, "a"));
    CHECK(g.left == std::vector<int>{0, 1, 2});
    CHECK(g.right == std::vector<int>{0, 1, 2});
    std::vector<std::pair<int, int>> expected{
        {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}};
    CHECK(g.edges == expected);
    CHECK(is_connected(g));
    CHECK(is_tree(g));
    CHECK(multiplicity(g) == 0);
    CHECK(balance(g) == Balance::Neutral);
  }
  SECTION("thue-morse at the empty word") {
    ExtensionGraph g = extension_graph(tm, Word());
    CHECK(g.left.size() == 2);
    CHECK(g.right.size() == 2);
    CHECK(g.edges.size() == 4);
    CHECK(is_connected(g));
    CHECK_FALSE(is_tree(g));
    CHECK(multiplicity(g) == 1);
    CHECK(balance(g) == Balance::Strong);
  }
  SECTION("fibonacci at b") {
    ExtensionGraph g = extension_graph(fib, W(fib.alphabet, "b"));
    CHECK(g.left == std::vector<int>{0});
    CHECK(g.right == std::vector<int>{0});
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(is_tree(g));
    CHECK(multiplicity(g) == 0);
  }
  SECTION("range and input errors") {
    LanguageApprox small = generate_language(helpers::fibonacci(), 3);
    CHECK_THROWS_AS(extension_graph(small, W(small.alphabet, "ab")),
                    range_error);
    CHECK_THROWS_AS(extension_graph(fib, W(fib.alphabet, "bb")), input_error);
  }
  SECTION("empty graph is flagged, not connected") {
    ExtensionGraph g;
    CHECK(is_empty(g));
    CHECK_FALSE(is_connected(g));
    CHECK_FALSE(is_tree(g));
  }
}

TEST_CASE("complexity tables") {
  const LanguageApprox& trib = lang(helpers::tribonacci(), 24);
  const LanguageApprox& fib = lang(helpers::fibonacci(), 24);
  ComplexityTable t = complexity(trib);
  ComplexityTable f = complexity(fib);
  CHECK(t.p[0] == 1);
  CHECK(f.p[0] == 1);
  for (int n = 1; n <= 24; ++n) {
    CHECK(t.p[static_cast<std::size_t>(n)] == 2 * n + 1);
    CHECK(f.p[static_cast<std::size_t>(n)] == n + 1);
  }
  CHECK(t.s(3) == 2);
  CHECK(t.b(3) == 0);
  CHECK_FALSE(t.s(24).has_value());
  CHECK_FALSE(t.b(23).has_value());
}

TEST_CASE("second difference equals the multiplicity sum") {
  const LanguageApprox& trib = lang(helpers::tribonacci(), 24);
  const LanguageApprox& tm = lang(helpers::thuemorse(), 24);

  SECTION("tribonacci, all neutral") {
    for (int n = 1; n <= 6; ++n) {
      MultiplicitySumReport rep = check_multiplicity_sum(trib, n);
      CHECK(rep.holds);
      for (const auto& [w, m] : rep.terms) CHECK(m == 0);
    }
  }
  SECTION("thue-morse, mixed strong and weak terms") {
    MultiplicitySumReport rep = check_multiplicity_sum(tm, 2);
    CHECK(rep.holds);
    CHECK(rep.b == 2);
    std::map<std::string, int> byword;
    for (const auto& [w, m] : rep.terms) byword[word_str(tm.alphabet, w)] = m;
    CHECK(byword == std::map<std::string, int>{
                        {"aa", 0}, {"ab", 1}, {"ba", 1}, {"bb", 0}});
    MultiplicitySumReport rep3 = check_multiplicity_sum(tm, 3);
    CHECK(rep3.holds);
    CHECK(rep3.b == -2);  // weak words appear at length 3
  }
  SECTION("n = 0 reduces to the multiplicity of the empty word") {
    MultiplicitySumReport rep = check_multiplicity_sum(tm, 0);
    CHECK(rep.terms.size() == 1);
    CHECK(rep.holds);
  }
  SECTION("range guard") {
    LanguageApprox small = generate_language(helpers::fibonacci(), 4);
    CHECK_THROWS_AS(check_multiplicity_sum(small, 3), range_error);
  }
}

TEST_CASE("dendricity report") {
  const LanguageApprox& trib = lang(helpers::tribonacci(), 24);
  const LanguageApprox& fib = lang(helpers::fibonacci(), 24);
  const LanguageApprox& tm = lang(helpers::thuemorse(), 24);

  DendricReport t = dendric_report(trib, 6);
  CHECK(t.all_dendric);
  for (const DendricRow& row : t.rows) {
    CHECK(row.tree);
    CHECK(row.m == 0);
  }

  DendricReport f = dendric_report(fib, 6);
  CHECK(f.all_dendric);

  DendricReport m = dendric_report(tm, 2);
  CHECK_FALSE(m.all_dendric);
  REQUIRE(m.first_non_tree.has_value());
  CHECK(*m.first_non_tree == Word());
}

TEST_CASE("connectivity forces nonnegative multiplicity") {
  // Connected implies strong or neutral; connected and neutral implies
  // tree. Checked over every generated extension graph.
  for (const Substitution* s :
       {&helpers::tribonacci(), &helpers::fibonacci(), &helpers::thuemorse()}) {
    const LanguageApprox& L = lang(*s, 24);
    for (const Word& w : L.factors) {
      if (w.size() > 6) break;
      ExtensionGraph g = extension_graph(L, w);
      if (is_connected(g)) {
        CHECK(multiplicity(g) >= 0);
        if (multiplicity(g) == 0) CHECK(is_tree(g));
      }
    }
  }
}

TEST_CASE("extension counts tile the next complexity level") {
  for (const Substitution* s :
       {&helpers::tribonacci(), &helpers::fibonacci(), &helpers::thuemorse()}) {
    const LanguageApprox& L = lang(*s, 24);
    ComplexityTable t = complexity(L);
    for (int n = 0; n <= 6; ++n) {
      long sum_right = 0, sum_left = 0;
      for (const Word& w : L.factors_of_length(n)) {
        ExtensionGraph g = extension_graph(L, w);
        sum_right += static_cast<long>(g.right.size());
        sum_left += static_cast<long>(g.left.size());
      }
      CHECK(sum_right == t.p[static_cast<std::size_t>(n + 1)]);
      CHECK(sum_left == t.p[static_cast<std::size_t>(n + 1)]);
    }
  }
}

TEST_CASE("extension graph DOT export") {
  const LanguageApprox& trib = lang(helpers::tribonacci(), 24);
  std::string dot = to_dot(extension_graph(trib, W(trib.alphabet, "a")),
                           trib.alphabet);
  CHECK(dot ==
        "graph a {\n"
        "  L_a [label=\"a\"];\n"
        "  L_b [label=\"b\"];\n"
        "  L_c [label=\"c\"];\n"
        "  R_a [label=\"a\"];\n"
        "  R_b [label=\"b\"];\n"
        "  R_c [label=\"c\"];\n"
        "  L_a -- R_b;\n"
        "  L_b -- R_a;\n"
        "  L_b -- R_b;\n"
        "  L_b -- R_c;\n"
        "  L_c -- R_b;\n"
        "}\n");
  std::string eps_dot = to_dot(extension_graph(trib, Word()), trib.alphabet);
  CHECK(eps_dot.substr(0, 11) == "graph eps {");
}
