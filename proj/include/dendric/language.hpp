#pragma once

// Finite approximations L(X) n A^{<=n} of the language of a primitive
// substitutive shift, extension graphs, multiplicity, and the complexity
// function with its difference identities.

#include <map>
#include <utility>

#include "dendric/words.hpp"

namespace dendric {

// All length-<= max_len factors of the shift, plus a long one-sided
// iterate ("stream") used for occurrence scans and canonical orderings.
// Immutable after generation; queries are pure.
struct LanguageApprox {
  Alphabet alphabet;
  int max_len = 0;
  WordSet factors;
  Word stream;
  std::string provenance;

  bool contains(const Word& w) const {
    return w.size() <= max_len && factors.count(w) > 0;
  }

  // Members of exactly length n, in lexicographic order.
  std::vector<Word> factors_of_length(int n) const {
    std::vector<Word> out;
    for (const Word& f : factors) {
      if (f.size() == n) out.push_back(f);
      if (f.size() > n) break;
    }
    return out;
  }

  long count_of_length(int n) const {
    long c = 0;
    for (const Word& f : factors) {
      if (f.size() == n) ++c;
      if (f.size() > n) break;
    }
    return c;
  }
};

struct GenOptions {
  int start_letter = 0;
  // Minimum stream length kept for occurrence scans; 0 picks a default.
  long min_stream = 0;
  int max_iterations = 64;
  long max_stream = 8L * 1000 * 1000;
};

namespace detail {

// Inserts all factors of w of length <= n; returns how many were new.
inline long collect_factors(const Word& w, int n, WordSet& into) {
  long added = 0;
  for (int i = 0; i < w.size(); ++i) {
    int maxlen = std::min(n, w.size() - i);
    for (int len = 1; len <= maxlen; ++len) {
      if (into.insert(w.sub(i, len)).second) ++added;
    }
  }
  return added;
}

inline void validate_language_invariants(const LanguageApprox& L) {
  if (!L.factors.count(Word()))
    throw internal_error("language: empty word missing");
  for (const Word& f : L.factors) {
    if (f.size() >= 2) {
      if (!L.factors.count(f.prefix(f.size() - 1)) ||
          !L.factors.count(f.drop_prefix(1)))
        throw internal_error("language: not factor-closed at " +
                             std::to_string(f.size()));
    }
    if (f.size() < L.max_len) {
      bool left = false, right = false;
      for (int a = 0; a < L.alphabet.size() && !(left && right); ++a) {
        if (!left && L.factors.count(Word::single(a) + f)) left = true;
        if (!right && L.factors.count(f + Word::single(a))) right = true;
      }
      if (!left || !right)
        throw range_error("language: factor of length " +
                          std::to_string(f.size()) +
                          " is not prolongable; approximation too short");
    }
  }
}

}  // namespace detail

// Exactly the length-<= n factors of the shift generated by a primitive
// substitution, collected from iterated images of a starting letter until
// the factor set is stable for two consecutive iterations. Primitivity
// makes the result independent of the starting letter.
inline LanguageApprox generate_language(const Substitution& s, int n,
                                        GenOptions opts = {}) {
  if (!s.is_endomorphism())
    throw input_error("language generation needs an endomorphism");
  if (n < 1) throw input_error("length bound must be >= 1");
  if (!is_primitive(s))
    throw input_error("substitution '" + s.name +
                      "' is not primitive; minimality is not guaranteed");
  if (opts.start_letter < 0 || opts.start_letter >= s.domain.size())
    throw input_error("start letter outside alphabet");
  long min_stream = opts.min_stream > 0 ? opts.min_stream
                                        : std::max(4096L, 64L * n);

  LanguageApprox L;
  L.alphabet = s.domain;
  L.max_len = n;
  L.provenance = s.name.empty() ? "substitution" : s.name;
  L.factors.insert(Word());

  Word w = Word::single(opts.start_letter);
  int stable = 0;
  for (int iter = 0;; ++iter) {
    long added = detail::collect_factors(w, n, L.factors);
    stable = added == 0 ? stable + 1 : 0;
    if (stable >= 2 && static_cast<long>(w.size()) >= min_stream) break;
    if (iter >= opts.max_iterations ||
        static_cast<long>(w.size()) > opts.max_stream)
      throw range_error("language generation did not stabilize");
    w = apply(s, w);
  }
  L.stream = std::move(w);

  for (int a = 0; a < L.alphabet.size(); ++a) {
    if (!L.factors.count(Word::single(a)))
      throw internal_error("language: letter never occurred");
  }
  detail::validate_language_invariants(L);
  return L;
}

// --- extension graphs -------------------------------------------------------

// Bipartite graph on left extensions E^-(w) and right extensions E^+(w),
// with an edge (a, b) whenever awb is in the language.
struct ExtensionGraph {
  Word word;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<std::pair<int, int>> edges;
};

inline ExtensionGraph extension_graph(const LanguageApprox& L, const Word& w) {
  if (w.size() > L.max_len - 2)
    throw range_error("extension graph needs |w| <= max_len - 2");
  if (!L.contains(w)) throw input_error("word is not in the language");
  ExtensionGraph g;
  g.word = w;
  for (int a = 0; a < L.alphabet.size(); ++a) {
    if (L.contains(Word::single(a) + w)) g.left.push_back(a);
    if (L.contains(w + Word::single(a))) g.right.push_back(a);
  }
  for (int a : g.left) {
    for (int b : g.right) {
      if (L.contains(Word::single(a) + w + Word::single(b)))
        g.edges.emplace_back(a, b);
    }
  }
  // In a shift language every extension letter is part of a two-sided
  // extension; anything else means the approximation lied to us.
  for (int a : g.left) {
    bool incident = false;
    for (const auto& [x, y] : g.edges) incident |= (x == a);
    if (!incident) throw internal_error("left vertex without edge");
  }
  for (int b : g.right) {
    bool incident = false;
    for (const auto& [x, y] : g.edges) incident |= (y == b);
    if (!incident) throw internal_error("right vertex without edge");
  }
  return g;
}

inline bool is_empty(const ExtensionGraph& g) {
  return g.left.empty() && g.right.empty();
}

inline bool is_connected(const ExtensionGraph& g) {
  if (is_empty(g)) return false;  // not bi-extendable; flagged via is_empty
  int nl = static_cast<int>(g.left.size());
  int nr = static_cast<int>(g.right.size());
  int n = nl + nr;
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto index_left = [&](int a) {
    return static_cast<int>(std::lower_bound(g.left.begin(), g.left.end(), a) -
                            g.left.begin());
  };
  auto index_right = [&](int b) {
    return nl + static_cast<int>(std::lower_bound(g.right.begin(),
                                                  g.right.end(), b) -
                                 g.right.begin());
  };
  for (const auto& [a, b] : g.edges) {
    int ra = find(index_left(a));
    int rb = find(index_right(b));
    if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
  }
  int root = find(0);
  for (int i = 1; i < n; ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

inline bool is_tree(const ExtensionGraph& g) {
  return is_connected(g) &&
         g.edges.size() + 1 == g.left.size() + g.right.size();
}

// m(w) = #E - #E^- - #E^+ + 1. Strong if > 0, neutral if = 0, weak if < 0.
inline int multiplicity(const ExtensionGraph& g) {
  return static_cast<int>(g.edges.size()) - static_cast<int>(g.left.size()) -
         static_cast<int>(g.right.size()) + 1;
}

enum class Balance { Weak, Neutral, Strong };

inline Balance balance(const ExtensionGraph& g) {
  int m = multiplicity(g);
  return m > 0 ? Balance::Strong : (m == 0 ? Balance::Neutral : Balance::Weak);
}

// DOT export: left vertices L_a, right vertices R_b, undirected edges.
inline std::string to_dot(const ExtensionGraph& g, const Alphabet& alphabet) {
  auto quote_if_needed = [](const std::string& s) {
    bool plain = !s.empty() && (std::isalpha(static_cast<unsigned char>(s[0])) ||
                                s[0] == '_');
    for (char c : s) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        plain = false;
    }
    return plain ? s : "\"" + s + "\"";
  };
  std::string name = word_str(alphabet, g.word);
  std::string out = "graph " + quote_if_needed(name) + " {\n";
  for (int a : g.left)
    out += "  L_" + alphabet.name(a) + " [label=\"" + alphabet.name(a) + "\"];\n";
  for (int b : g.right)
    out += "  R_" + alphabet.name(b) + " [label=\"" + alphabet.name(b) + "\"];\n";
  for (const auto& [a, b] : g.edges)
    out += "  L_" + alphabet.name(a) + " -- R_" + alphabet.name(b) + ";\n";
  out += "}\n";
  return out;
}

// --- complexity --------------------------------------------------------------

// p(n) = number of length-n factors; s and b are its first and second
// differences where the approximation defines them.
struct ComplexityTable {
  std::vector<long> p;  // p[0..max_len]

  int max_n() const { return static_cast<int>(p.size()) - 1; }

  std::optional<long> s(int n) const {
    if (n < 0 || n + 1 > max_n()) return std::nullopt;
    return p[static_cast<std::size_t>(n + 1)] - p[static_cast<std::size_t>(n)];
  }
  std::optional<long> b(int n) const {
    auto s1 = s(n + 1);
    auto s0 = s(n);
    if (!s1 || !s0) return std::nullopt;
    return *s1 - *s0;
  }
};

inline ComplexityTable complexity(const LanguageApprox& L) {
  ComplexityTable t;
  t.p.assign(static_cast<std::size_t>(L.max_len) + 1, 0);
  for (const Word& f : L.factors) ++t.p[static_cast<std::size_t>(f.size())];
  return t;
}

// --- second-difference identity ---------------------------------------------

// b(n) equals the sum of multiplicities over all length-n factors.
struct MultiplicitySumReport {
  int n = 0;
  long b = 0;
  long sum = 0;
  bool holds = false;
  std::vector<std::pair<Word, int>> terms;  // (w, m(w)) in canonical order
};

inline MultiplicitySumReport check_multiplicity_sum(const LanguageApprox& L,
                                                    int n) {
  if (n < 0 || n + 2 > L.max_len)
    throw range_error("multiplicity sum needs n + 2 <= max_len");
  MultiplicitySumReport rep;
  rep.n = n;
  ComplexityTable t = complexity(L);
  rep.b = *t.b(n);
  for (const Word& w : L.factors_of_length(n)) {
    int m = multiplicity(extension_graph(L, w));
    rep.terms.emplace_back(w, m);
    rep.sum += m;
  }
  rep.holds = rep.b == rep.sum;
  return rep;
}

// --- dendricity sweep ---------------------------------------------------------

struct DendricRow {
  Word word;
  bool connected = false;
  bool tree = false;
  int m = 0;
};

struct DendricReport {
  int up_to = 0;
  std::vector<DendricRow> rows;         // shortlex order over |w| <= up_to
  bool all_dendric = false;
  std::optional<Word> first_non_tree;   // shortest witness, if any
};

inline DendricReport dendric_report(const LanguageApprox& L, int up_to) {
  if (up_to < 0 || up_to > L.max_len - 2)
    throw range_error("dendricity sweep needs up_to <= max_len - 2");
  DendricReport rep;
  rep.up_to = up_to;
  rep.all_dendric = true;
  for (const Word& w : L.factors) {
    if (w.size() > up_to) break;
    ExtensionGraph g = extension_graph(L, w);
    DendricRow row{w, is_connected(g), is_tree(g), multiplicity(g)};
    if (!row.tree && rep.all_dendric) {
      rep.all_dendric = false;
      rep.first_non_tree = w;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace dendric
