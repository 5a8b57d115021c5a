#pragma once

// Rauzy graphs of a language approximation, loop-label subgroups at a
// vertex, and the connectivity criterion: a free return set whose
// subgroup is reached again one return later forces a connected
// extension graph.

#include "dendric/freegroup.hpp"
#include "dendric/returns.hpp"

namespace dendric {

// Directed graph on length-m factors: an edge u -> v labeled a whenever
// ub = av is a factor (a, b letters).
struct RauzyGraph {
  int order = 0;
  std::vector<Word> vertices;  // lexicographic
  struct Edge {
    int src = 0;
    int letter = 0;
    int dst = 0;
  };
  std::vector<Edge> edges;  // sorted (src, letter, dst)

  int vertex_index(const Word& w) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
    if (it == vertices.end() || *it != w) return -1;
    return static_cast<int>(it - vertices.begin());
  }
};

inline RauzyGraph rauzy_graph(const LanguageApprox& L, int m) {
  if (m < 0 || m + 1 > L.max_len)
    throw range_error("Rauzy graph needs m + 1 <= max_len");
  RauzyGraph g;
  g.order = m;
  g.vertices = L.factors_of_length(m);
  for (const Word& z : L.factors_of_length(m + 1)) {
    int src = g.vertex_index(z.prefix(m));
    int dst = g.vertex_index(z.drop_prefix(1));
    if (src < 0 || dst < 0) throw internal_error("Rauzy vertex missing");
    g.edges.push_back({src, z[0], dst});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.src, a.letter, a.dst) < std::tie(b.src, b.letter, b.dst);
  });
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
    bool has_in = false, has_out = false;
    for (const auto& e : g.edges) {
      has_out |= e.src == v;
      has_in |= e.dst == v;
    }
    if (!has_in || !has_out)
      throw internal_error("Rauzy vertex with missing in/out degree");
  }
  return g;
}

// Loop-label subgroup at a base vertex, computed from a breadth-first
// spanning tree: one generator P(u) * a * P(v)^-1 per non-tree edge
// (u, a, v), where P(x) is the label of the tree path from the base
// (edges traversed backwards contribute inverse letters). The subgroup
// does not depend on the tree.
struct RauzyGroupResult {
  std::vector<GroupWord> generators;  // one per non-tree edge, scan order
  StallingsGraph subgroup;
  bool restricted = false;  // base's component was a proper subgraph
};

inline RauzyGroupResult rauzy_group(const RauzyGraph& g, const Word& base,
                                    const Alphabet& alphabet) {
  int root = g.vertex_index(base);
  if (root < 0) throw input_error("base word is not a Rauzy vertex");

  // Incidence lists: (letter, direction 0=out/1=in, edge index), sorted.
  int n = static_cast<int>(g.vertices.size());
  std::vector<std::vector<std::tuple<int, int, int>>> inc(
      static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    inc[static_cast<std::size_t>(e.src)].push_back({e.letter, 0, static_cast<int>(i)});
    inc[static_cast<std::size_t>(e.dst)].push_back({e.letter, 1, static_cast<int>(i)});
  }
  for (auto& lst : inc) std::sort(lst.begin(), lst.end());

  std::vector<GroupWord> path(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<bool> tree_edge(g.edges.size(), false);
  std::queue<int> bfs;
  seen[static_cast<std::size_t>(root)] = true;
  bfs.push(root);
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (const auto& [letter, dir, ei] : inc[static_cast<std::size_t>(v)]) {
      const auto& e = g.edges[static_cast<std::size_t>(ei)];
      int u = dir == 0 ? e.dst : e.src;
      if (seen[static_cast<std::size_t>(u)]) continue;
      seen[static_cast<std::size_t>(u)] = true;
      tree_edge[static_cast<std::size_t>(ei)] = true;
      GroupWord step(std::vector<int>{make_syllable(letter, dir == 0 ? +1 : -1)});
      path[static_cast<std::size_t>(u)] = path[static_cast<std::size_t>(v)] * step;
      bfs.push(u);
    }
  }

  RauzyGroupResult out;
  for (int v = 0; v < n; ++v) out.restricted |= !seen[static_cast<std::size_t>(v)];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (tree_edge[i]) continue;
    const auto& e = g.edges[i];
    if (!seen[static_cast<std::size_t>(e.src)] ||
        !seen[static_cast<std::size_t>(e.dst)])
      continue;  // outside the base's component
    GroupWord a(std::vector<int>{make_syllable(e.letter, +1)});
    out.generators.push_back(path[static_cast<std::size_t>(e.src)] * a *
                             path[static_cast<std::size_t>(e.dst)].inverse());
  }
  out.subgroup = stallings(out.generators, alphabet);
  return out;
}

// --- connectivity criterion --------------------------------------------------

// Hypotheses: (1) the return set of w freely generates its subgroup;
// (2) some u = rw, r a return word, has <R(u)> = <R(w)>. When both hold
// the extension graph of w must be connected; the derived return set then
// generates the whole derived free group, and so does the loop-label
// subgroup at the matching vertex of the derived order-1 Rauzy graph.
struct ConnectivityCriterionReport {
  Word word;
  ReturnSet base_returns;
  bool returns_free = false;
  std::optional<Word> witness_u;  // first rw whose subgroup matches
  std::vector<std::string> skipped;  // candidates not decidable in range
  bool hypotheses_established = false;
  std::optional<bool> extension_connected;
  std::optional<bool> derived_returns_generate_all;  // <R_D(b*)> = F_B
  std::optional<bool> rauzy_group_is_all;            // loop subgroup = F_B

  bool conclusion_verified() const {
    return hypotheses_established && extension_connected.value_or(false);
  }
};

inline ConnectivityCriterionReport check_connectivity_criterion(
    const LanguageApprox& L, const Word& w) {
  ConnectivityCriterionReport rep;
  rep.word = w;
  rep.base_returns = return_words(L, w);

  std::vector<GroupWord> base_family;
  for (const Word& r : rep.base_returns.returns)
    base_family.push_back(to_group(r));
  rep.returns_free = is_free_family(base_family, L.alphabet);
  if (!rep.returns_free) return rep;

  int witness_index = -1;
  for (int i = 0; i < rep.base_returns.size(); ++i) {
    Word u = rep.base_returns.returns[static_cast<std::size_t>(i)] + w;
    try {
      ReturnSet ru = return_words(L, u);
      std::vector<GroupWord> fam;
      for (const Word& r : ru.returns) fam.push_back(to_group(r));
      if (subgroup_equals(fam, base_family, L.alphabet)) {
        rep.witness_u = u;
        witness_index = i;
        break;
      }
    } catch (const range_error& e) {
      rep.skipped.push_back(word_str(L.alphabet, u) + ": " + e.what());
    }
  }
  if (!rep.witness_u) return rep;
  rep.hypotheses_established = true;

  rep.extension_connected = is_connected(extension_graph(L, w));

  // Intermediate facts, derived system at the witness letter.
  try {
    int max_r = 0;
    for (const Word& r : rep.base_returns.returns)
      max_r = std::max(max_r, r.size());
    int bound = std::max(2, (L.max_len - w.size()) / std::max(1, max_r));
    DerivedSystem d = derive(L, w, bound);
    ReturnSet rd = return_words(d.derived_language,
                                Word::single(witness_index));
    std::vector<GroupWord> fam;
    for (const Word& r : rd.returns) fam.push_back(to_group(r));
    rep.derived_returns_generate_all =
        is_whole_group(stallings(fam, d.derived_alphabet));

    RauzyGraph g1 = rauzy_graph(d.derived_language, 1);
    RauzyGroupResult h =
        rauzy_group(g1, Word::single(witness_index), d.derived_alphabet);
    rep.rauzy_group_is_all = is_whole_group(h.subgroup);
  } catch (const range_error& e) {
    rep.skipped.push_back(std::string("derived facts: ") + e.what());
  }
  return rep;
}

// DOT export: directed, edge labels shown, vertices named by their words.
inline std::string to_dot(const RauzyGraph& g, const Alphabet& alphabet) {
  std::string out =
      "digraph rauzy" + std::to_string(g.order) + " {\n  rankdir=LR;\n";
  for (const Word& v : g.vertices)
    out += "  \"" + word_str(alphabet, v) + "\";\n";
  for (const auto& e : g.edges) {
    out += "  \"" + word_str(alphabet, g.vertices[static_cast<std::size_t>(e.src)]) +
           "\" -> \"" +
           word_str(alphabet, g.vertices[static_cast<std::size_t>(e.dst)]) +
           "\" [label=\"" + alphabet.name(e.letter) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace dendric
