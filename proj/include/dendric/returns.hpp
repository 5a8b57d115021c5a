#pragma once

// Left/right return words, the derivating substitution, derived languages,
// and the induced morphism between extension graphs.

#include "dendric/language.hpp"

namespace dendric {

// Return words to a base word, ordered by first occurrence in the
// language's stream. That order fixes the derived-letter coding.
struct ReturnSet {
  Word base_word;
  std::vector<Word> returns;

  int size() const { return static_cast<int>(returns.size()); }

  int index_of(const Word& r) const {
    for (int i = 0; i < size(); ++i) {
      if (returns[static_cast<std::size_t>(i)] == r) return i;
    }
    return -1;
  }

  WordSet as_set() const {
    WordSet s;
    for (const Word& r : returns) s.insert(r);
    return s;
  }
};

namespace detail {

// Occurrence scan shared by the left and right variants. Certifies a
// uniform-recurrence witness at this scale: with G the largest gap between
// consecutive occurrence starts, every window of length G + |w| of the
// stream must contain a full occurrence.
inline std::vector<int> certified_occurrences(const LanguageApprox& L,
                                              const Word& w) {
  if (w.size() > L.max_len)
    throw range_error("word longer than the language approximation");
  if (!L.contains(w)) throw input_error("word is not in the language");
  std::vector<int> occ = occurrences(L.stream, w);
  if (occ.size() < 3)
    throw range_error("too few occurrences in the stream; raise the stream length");
  int max_gap = 0;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i)
    max_gap = std::max(max_gap, occ[i + 1] - occ[i]);
  bool head_ok = occ.front() <= max_gap;
  bool tail_ok = L.stream.size() - w.size() - occ.back() <= max_gap;
  if (!head_ok || !tail_ok)
    throw range_error("occurrences of the word are not certified to recur");
  return occ;
}

// Exact enumeration of returns whose full extent fits inside the factor
// set: words u in L that start and end with w and contain no other
// occurrence of w. Used to cross-check the scan when everything is in
// range.
inline WordSet enumerate_returns(const LanguageApprox& L, const Word& w) {
  WordSet out;
  for (const Word& u : L.factors) {
    if (u.size() <= w.size()) continue;
    std::vector<int> occ = occurrences(u, w);
    if (occ.size() == 2 && occ[0] == 0 && occ[1] == u.size() - w.size())
      out.insert(u.prefix(u.size() - w.size()));
  }
  return out;
}

inline void verify_return(const LanguageApprox& L, const Word& w,
                          const Word& u, int expected_second) {
  // u must contain w exactly as prefix and at expected_second.
  std::vector<int> occ = occurrences(u, w);
  if (occ.size() != 2 || occ[0] != 0 || occ[1] != expected_second)
    throw internal_error("return word fails the defining condition");
  if (u.size() <= L.max_len && !L.factors.count(u))
    throw internal_error("return word extent missing from the factor set");
}

}  // namespace detail

// Words separating consecutive occurrences of w in the stream; each is
// verified against the defining condition (rw in L, starts with w, no
// interior occurrence). When all extents fit under max_len the set is
// additionally cross-checked against exhaustive enumeration from the
// factor set.
inline ReturnSet return_words(const LanguageApprox& L, const Word& w) {
  std::vector<int> occ = detail::certified_occurrences(L, w);
  ReturnSet rs;
  rs.base_word = w;
  int longest = 0;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
    Word r = L.stream.sub(occ[i], occ[i + 1] - occ[i]);
    longest = std::max(longest, r.size());
    if (rs.index_of(r) < 0) {
      detail::verify_return(L, w, r + w, r.size());
      rs.returns.push_back(std::move(r));
    }
  }
  if (longest + w.size() <= L.max_len) {
    if (rs.as_set() != detail::enumerate_returns(L, w))
      throw range_error("stream too short: a return word never appeared");
  }
  return rs;
}

// Right returns: words r' with wr' in L, ending with w, no interior
// occurrence. Equals w^-1 R(w) w letterwise under the shared ordering.
inline ReturnSet right_return_words(const LanguageApprox& L, const Word& w) {
  std::vector<int> occ = detail::certified_occurrences(L, w);
  ReturnSet rs;
  rs.base_word = w;
  int longest = 0;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
    Word r = L.stream.sub(occ[i] + w.size(), occ[i + 1] - occ[i]);
    longest = std::max(longest, r.size());
    if (rs.index_of(r) < 0) {
      detail::verify_return(L, w, w + r, r.size());
      rs.returns.push_back(std::move(r));
    }
  }
  if (longest + w.size() <= L.max_len) {
    WordSet expected;
    for (const Word& u : detail::enumerate_returns(L, w)) {
      // enumerate_returns yields left returns; conjugate to right form
      expected.insert((u + w).drop_prefix(w.size()));
    }
    if (rs.as_set() != expected)
      throw range_error("stream too short: a right return word never appeared");
  }
  return rs;
}

// --- derived systems -----------------------------------------------------------

// Recoding of the shift along return words to a base word. The derived
// alphabet is a fresh set r1..rk, theta maps it onto the return set, and
// the derived language satisfies: z in L(D) iff theta(z) w in L(X).
struct DerivedSystem {
  Word base_word;
  Alphabet derived_alphabet;
  Substitution theta;  // derived letter -> return word over the base alphabet
  LanguageApprox derived_language;

  // Right-return variant: theta'(b) = w^-1 theta(b) w, a positive word.
  Substitution theta_right() const {
    std::vector<Word> rules;
    rules.reserve(theta.rules.size());
    for (const Word& r : theta.rules)
      rules.push_back((r + base_word).drop_prefix(base_word.size()));
    return Substitution(derived_alphabet, theta.codomain, std::move(rules),
                        theta.name + "'");
  }
};

// Derives the shift at w with derived length bound `bound`. The decoded
// stream provides the derived stream and the letter coding; membership of
// every candidate derived factor is decided exactly through the defining
// property, which is why the base approximation must satisfy
// bound * max|r| + |w| <= max_len.
inline DerivedSystem derive(const LanguageApprox& L, const Word& w,
                            int bound) {
  if (bound < 1) throw input_error("derived length bound must be >= 1");
  ReturnSet rs = return_words(L, w);
  int max_r = 0;
  for (const Word& r : rs.returns) max_r = std::max(max_r, r.size());
  if (static_cast<long>(bound) * max_r + w.size() > L.max_len)
    throw range_error(
        "derived bound needs base max_len >= bound * max|r| + |w|");

  DerivedSystem d;
  d.base_word = w;
  d.derived_alphabet = Alphabet::symbols("r", rs.size());
  d.theta = Substitution(d.derived_alphabet, L.alphabet, rs.returns,
                         "theta_" + word_str(L.alphabet, w));

  // Decode the stream into derived letters.
  std::vector<int> occ = occurrences(L.stream, w);
  Word dstream;
  dstream.letters.reserve(occ.size());
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
    Word r = L.stream.sub(occ[i], occ[i + 1] - occ[i]);
    int id = rs.index_of(r);
    if (id < 0) throw internal_error("stream gap is not a return word");
    dstream.letters.push_back(id);
  }

  // Exact derived factor set by right extension: z b stays in the derived
  // language iff theta(z b) w is in the base language.
  WordSet dfactors;
  dfactors.insert(Word());
  std::vector<Word> frontier{Word()};
  for (int len = 1; len <= bound; ++len) {
    std::vector<Word> next;
    for (const Word& z : frontier) {
      for (int b = 0; b < rs.size(); ++b) {
        Word zb = z + Word::single(b);
        if (L.contains(apply(d.theta, zb) + w)) {
          dfactors.insert(zb);
          next.push_back(std::move(zb));
        }
      }
    }
    frontier = std::move(next);
  }

  // The decoded stream must witness exactly the same factors; otherwise
  // the stream is too short to represent the derived shift at this bound.
  WordSet from_stream;
  from_stream.insert(Word());
  detail::collect_factors(dstream, bound, from_stream);
  if (from_stream != dfactors)
    throw range_error("stream too short to witness the derived language");

  d.derived_language.alphabet = d.derived_alphabet;
  d.derived_language.max_len = bound;
  d.derived_language.factors = std::move(dfactors);
  d.derived_language.stream = std::move(dstream);
  d.derived_language.provenance =
      "derived[" + word_str(L.alphabet, w) + "] of " + L.provenance;
  detail::validate_language_invariants(d.derived_language);
  return d;
}

// --- return-set recoding (Durand's identity) ------------------------------------

// theta(returns of u in the derived language) must equal the base returns
// of theta(u) w, as sets of words.
inline bool check_durand_identity(const LanguageApprox& L,
                                  const DerivedSystem& d, const Word& u) {
  ReturnSet derived = return_words(d.derived_language, u);
  WordSet image;
  for (const Word& r : derived.returns) image.insert(apply(d.theta, r));
  ReturnSet base = return_words(L, apply(d.theta, u) + d.base_word);
  return image == base.as_set();
}

inline bool check_durand_identity(const LanguageApprox& L, const Word& w,
                                  const Word& u, int bound = 2) {
  return check_durand_identity(L, derive(L, w, std::max(bound, u.size())), u);
}

// --- extension-graph morphism -----------------------------------------------------

// The extension graph of w is the image of the derived system's extension
// graph of the empty word: left vertices map to the last letter of
// theta(b), right vertices to the first letter of theta'(b). The map is a
// graph morphism and is onto.
struct DerivedMorphismReport {
  Word base_word;
  ExtensionGraph derived_graph;  // over the derived alphabet, at eps
  ExtensionGraph base_graph;     // over the base alphabet, at w
  std::vector<int> left_image;   // derived letter -> base letter
  std::vector<int> right_image;  // derived letter -> base letter
  bool morphism = false;
  bool onto_left = false;
  bool onto_right = false;
  bool onto_edges = false;

  bool ok() const { return morphism && onto_left && onto_right && onto_edges; }
};

inline DerivedMorphismReport derived_extension_morphism(
    const LanguageApprox& L, const Word& w) {
  DerivedSystem d = derive(L, w, 2);
  DerivedMorphismReport rep;
  rep.base_word = w;
  rep.derived_graph = extension_graph(d.derived_language, Word());
  rep.base_graph = extension_graph(L, w);

  Substitution tr = d.theta_right();
  rep.left_image.assign(static_cast<std::size_t>(d.derived_alphabet.size()), -1);
  rep.right_image.assign(static_cast<std::size_t>(d.derived_alphabet.size()), -1);
  for (int b = 0; b < d.derived_alphabet.size(); ++b) {
    const Word& img = d.theta.rule(b);
    rep.left_image[static_cast<std::size_t>(b)] = img[img.size() - 1];
    rep.right_image[static_cast<std::size_t>(b)] = tr.rule(b)[0];
  }

  auto has_edge = [&](const ExtensionGraph& g, int a, int b) {
    return std::find(g.edges.begin(), g.edges.end(), std::make_pair(a, b)) !=
           g.edges.end();
  };

  rep.morphism = true;
  for (const auto& [r, s] : rep.derived_graph.edges) {
    int a = rep.left_image[static_cast<std::size_t>(r)];
    int b = rep.right_image[static_cast<std::size_t>(s)];
    if (!has_edge(rep.base_graph, a, b)) rep.morphism = false;
  }

  std::set<int> lhit, rhit;
  std::set<std::pair<int, int>> ehit;
  for (int r : rep.derived_graph.left)
    lhit.insert(rep.left_image[static_cast<std::size_t>(r)]);
  for (int s : rep.derived_graph.right)
    rhit.insert(rep.right_image[static_cast<std::size_t>(s)]);
  for (const auto& [r, s] : rep.derived_graph.edges)
    ehit.insert({rep.left_image[static_cast<std::size_t>(r)],
                 rep.right_image[static_cast<std::size_t>(s)]});

  rep.onto_left = std::set<int>(rep.base_graph.left.begin(),
                                rep.base_graph.left.end()) == lhit;
  rep.onto_right = std::set<int>(rep.base_graph.right.begin(),
                                 rep.base_graph.right.end()) == rhit;
  rep.onto_edges = std::set<std::pair<int, int>>(rep.base_graph.edges.begin(),
                                                 rep.base_graph.edges.end()) ==
                   ehit;
  return rep;
}

// Text report: one line per return word plus the coding table.
inline std::string return_report(const LanguageApprox& L, const ReturnSet& rs) {
  std::string out = "returns(" + word_str(L.alphabet, rs.base_word) + "): " +
                    std::to_string(rs.size()) + "\n";
  for (int i = 0; i < rs.size(); ++i) {
    out += "r" + std::to_string(i + 1) + " = " +
           word_str(L.alphabet, rs.returns[static_cast<std::size_t>(i)]) + "\n";
  }
  return out;
}

}  // namespace dendric
