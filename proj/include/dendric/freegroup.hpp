#pragma once

// Stallings-graph engine for finitely generated subgroups of a free
// group: construction by folding, membership, rank, subgroup equality,
// basis-of-the-free-group decision, and expression of members over a
// given generating family.
//
// Each edge carries a provenance tag: a word over generator symbols whose
// image under the generator coding equals (anchor of source) * letter *
// (anchor of target)^-1 for a fixed virtual anchoring of vertices at the
// basepoint. Folding rewrites tags so that tracing any basepoint loop
// accumulates a valid expression of its label over the generators.

#include <map>
#include <queue>
#include <span>
#include <tuple>

#include "dendric/words.hpp"

namespace dendric {

struct StallingsEdge {
  int src = 0;
  int dst = 0;
  int letter = 0;
  GroupWord tag;  // over generator symbols (index i = i-th generator)
};

// Folded, connected, core rooted graph. Basepoint is vertex 0. Immutable
// once built; queries are pure.
struct StallingsGraph {
  Alphabet alphabet;
  int num_vertices = 1;
  std::vector<StallingsEdge> edges;     // sorted by (src, letter, dst)
  std::vector<GroupWord> generators;    // as given (reduced), for provenance

  // -1 when absent; indices into `edges`.
  int out_edge(int v, int letter) const {
    return out_[static_cast<std::size_t>(v * alphabet.size() + letter)];
  }
  int in_edge(int v, int letter) const {
    return in_[static_cast<std::size_t>(v * alphabet.size() + letter)];
  }

  std::vector<int> out_, in_;  // filled by the builder
};

namespace detail {

struct FoldBuilder {
  const Alphabet& alphabet;
  std::vector<int> parent;  // union-find over vertices
  struct E {
    int src, dst, letter;
    GroupWord tag;
    bool alive = true;
  };
  std::vector<E> es;

  explicit FoldBuilder(const Alphabet& a) : alphabet(a), parent{0} {}

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  int fresh_vertex() {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  }

  // One petal per generator; only the final edge of a petal carries the
  // generator symbol (inverted when the last syllable is negative).
  void add_petal(const GroupWord& g, int symbol) {
    const auto& syl = g.syllables();
    if (syl.empty()) return;
    int cur = 0;
    for (std::size_t j = 0; j < syl.size(); ++j) {
      bool last = j + 1 == syl.size();
      int next = last ? 0 : fresh_vertex();
      int s = syl[j];
      GroupWord tag;
      if (last) {
        GroupWord sym(std::vector<int>{make_syllable(symbol, +1)});
        tag = s > 0 ? sym : sym.inverse();
      }
      if (s > 0) {
        es.push_back({cur, next, syllable_letter(s), tag, true});
      } else {
        es.push_back({next, cur, syllable_letter(s), tag, true});
      }
      cur = next;
    }
  }

  // Replaces the anchor of absorbed vertex x by that of survivor y;
  // delta satisfies coding(delta) = anchor(y) * anchor(x)^-1.
  void absorb(int x, int y, const GroupWord& delta) {
    GroupWord delta_inv = delta.inverse();
    for (E& h : es) {
      if (!h.alive) continue;
      int hs = find(h.src);
      int hd = find(h.dst);
      if (hs == x && hd == x) {
        h.tag = delta * h.tag * delta_inv;
      } else if (hs == x) {
        h.tag = delta * h.tag;
      } else if (hd == x) {
        h.tag = h.tag * delta_inv;
      }
    }
    parent[static_cast<std::size_t>(x)] = y;
  }

  // Finds the first clash in scan order and resolves it. Returns false
  // when the graph is folded.
  bool fold_step() {
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (!es[i].alive) continue;
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        if (!es[j].alive) continue;
        if (es[i].letter != es[j].letter) continue;
        int si = find(es[i].src), di = find(es[i].dst);
        int sj = find(es[j].src), dj = find(es[j].dst);
        if (si == sj && di == dj) {
          es[j].alive = false;  // parallel duplicate
          return true;
        }
        if (si == sj) {
          merge_targets(di, dj, es[i].tag, es[j].tag);
          return true;
        }
        if (di == dj) {
          merge_sources(si, sj, es[i].tag, es[j].tag);
          return true;
        }
      }
    }
    return false;
  }

  void merge_targets(int ti, int tj, const GroupWord& tag_i,
                     const GroupWord& tag_j) {
    // Keep the basepoint, else the smaller id.
    if (tj == 0 || (ti != 0 && tj < ti)) {
      absorb(ti, tj, tag_j.inverse() * tag_i);
    } else {
      absorb(tj, ti, tag_i.inverse() * tag_j);
    }
  }

  void merge_sources(int si, int sj, const GroupWord& tag_i,
                     const GroupWord& tag_j) {
    if (sj == 0 || (si != 0 && sj < si)) {
      absorb(si, sj, tag_j * tag_i.inverse());
    } else {
      absorb(sj, si, tag_i * tag_j.inverse());
    }
  }

  // Removes non-basepoint vertices of degree <= 1 together with their
  // pending edge, repeatedly.
  void trim() {
    for (;;) {
      std::map<int, int> degree;
      for (const E& h : es) {
        if (!h.alive) continue;
        ++degree[find(h.src)];
        ++degree[find(h.dst)];
      }
      int victim = -1;
      for (const auto& [v, d] : degree) {
        if (v != find(0) && d <= 1) {
          victim = v;
          break;
        }
      }
      if (victim < 0) return;
      for (E& h : es) {
        if (h.alive && (find(h.src) == victim || find(h.dst) == victim))
          h.alive = false;
      }
    }
  }

  // Canonical renumbering by breadth-first search from the basepoint,
  // visiting out-edges then in-edges in letter order.
  StallingsGraph finish(std::vector<GroupWord> generators) {
    StallingsGraph g;
    g.alphabet = alphabet;
    g.generators = std::move(generators);

    int base = find(0);
    std::map<int, std::vector<std::pair<std::pair<int, int>, int>>> adj;
    // adj[v]: ((0=out/1=in, letter), other endpoint), sorted for BFS order
    for (const E& h : es) {
      if (!h.alive) continue;
      int s = find(h.src), d = find(h.dst);
      adj[s].push_back({{0, h.letter}, d});
      adj[d].push_back({{1, h.letter}, s});
    }
    for (auto& [v, lst] : adj) std::sort(lst.begin(), lst.end());

    std::map<int, int> id;
    id[base] = 0;
    std::queue<int> bfs;
    bfs.push(base);
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (const auto& [key, u] : adj[v]) {
        if (!id.count(u)) {
          id[u] = static_cast<int>(id.size());
          bfs.push(u);
        }
      }
    }
    g.num_vertices = static_cast<int>(id.size());
    if (g.num_vertices == 0) g.num_vertices = 1;  // edgeless graph

    for (const E& h : es) {
      if (!h.alive) continue;
      g.edges.push_back({id.at(find(h.src)), id.at(find(h.dst)), h.letter,
                         h.tag});
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
      return std::tie(a.src, a.letter, a.dst) < std::tie(b.src, b.letter, b.dst);
    });

    int k = alphabet.size();
    g.out_.assign(static_cast<std::size_t>(g.num_vertices * k), -1);
    g.in_.assign(static_cast<std::size_t>(g.num_vertices * k), -1);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const StallingsEdge& e = g.edges[i];
      std::size_t oi = static_cast<std::size_t>(e.src * k + e.letter);
      std::size_t ii = static_cast<std::size_t>(e.dst * k + e.letter);
      if (g.out_[oi] != -1 || g.in_[ii] != -1)
        throw internal_error("fold left a clash behind");
      g.out_[oi] = static_cast<int>(i);
      g.in_[ii] = static_cast<int>(i);
    }
    return g;
  }
};

}  // namespace detail

// Folded core rooted graph whose basepoint loops read exactly the
// subgroup generated by the words. Deterministic: fixed clash scan order
// plus canonical breadth-first renumbering.
inline StallingsGraph stallings(std::span<const GroupWord> generators,
                                const Alphabet& alphabet) {
  for (const GroupWord& g : generators) {
    for (int s : g.syllables()) {
      if (syllable_letter(s) >= alphabet.size())
        throw input_error("generator uses a letter outside the alphabet");
    }
  }
  detail::FoldBuilder b(alphabet);
  for (std::size_t i = 0; i < generators.size(); ++i)
    b.add_petal(generators[i], static_cast<int>(i));
  while (b.fold_step()) {
  }
  b.trim();
  return b.finish(std::vector<GroupWord>(generators.begin(), generators.end()));
}

inline StallingsGraph stallings(std::span<const Word> generators,
                                const Alphabet& alphabet) {
  std::vector<GroupWord> gs;
  gs.reserve(generators.size());
  for (const Word& w : generators) gs.push_back(to_group(w));
  return stallings(gs, alphabet);
}

namespace detail {

// Follows g from the basepoint; returns the end vertex (or -1 when the
// path leaves the graph) and accumulates the tag expression.
inline int trace(const StallingsGraph& g, const GroupWord& w,
                 GroupWord* expression) {
  int cur = 0;
  for (int s : w.syllables()) {
    int letter = syllable_letter(s);
    if (letter >= g.alphabet.size())
      throw input_error("word uses a letter outside the alphabet");
    int e = s > 0 ? g.out_edge(cur, letter) : g.in_edge(cur, letter);
    if (e < 0) return -1;
    const StallingsEdge& edge = g.edges[static_cast<std::size_t>(e)];
    if (expression)
      *expression = s > 0 ? (*expression * edge.tag)
                          : (*expression * edge.tag.inverse());
    cur = s > 0 ? edge.dst : edge.src;
  }
  return cur;
}

}  // namespace detail

// Membership: g is in the subgroup iff it traces a basepoint loop.
inline bool contains(const StallingsGraph& graph, const GroupWord& g) {
  return detail::trace(graph, g, nullptr) == 0;
}

// Cycle rank of the folded core graph = rank of the subgroup.
inline int rank(const StallingsGraph& graph) {
  return static_cast<int>(graph.edges.size()) - graph.num_vertices + 1;
}

// The graph of the full free group: a single vertex with one loop per
// letter.
inline bool is_whole_group(const StallingsGraph& graph) {
  if (graph.num_vertices != 1) return false;
  for (int a = 0; a < graph.alphabet.size(); ++a) {
    if (graph.out_edge(0, a) < 0) return false;
  }
  return true;
}

namespace detail {

inline std::vector<GroupWord> distinct(std::span<const GroupWord> ws) {
  std::vector<GroupWord> out;
  for (const GroupWord& w : ws) {
    if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  }
  return out;
}

}  // namespace detail

// W freely generates its subgroup iff the subgroup's rank equals the
// number of distinct generators.
inline bool is_free_family(std::span<const GroupWord> ws,
                           const Alphabet& alphabet) {
  std::vector<GroupWord> d = detail::distinct(ws);
  return rank(stallings(std::span<const GroupWord>(d), alphabet)) ==
         static_cast<int>(d.size());
}

// Basis of the whole free group: as many generators as letters and the
// folded graph is the rose with every letter looping at the basepoint.
// (A generating set of F_A of size #A is a basis since F_A is Hopfian.)
inline bool is_basis_of_free_group(std::span<const GroupWord> ws,
                                   const Alphabet& alphabet) {
  std::vector<GroupWord> d = detail::distinct(ws);
  if (static_cast<int>(d.size()) != alphabet.size()) return false;
  return is_whole_group(stallings(std::span<const GroupWord>(d), alphabet));
}

inline bool subgroup_equals(std::span<const GroupWord> w1,
                            std::span<const GroupWord> w2,
                            const Alphabet& alphabet) {
  StallingsGraph g1 = stallings(w1, alphabet);
  StallingsGraph g2 = stallings(w2, alphabet);
  for (const GroupWord& g : w1) {
    if (!contains(g2, g)) return false;
  }
  for (const GroupWord& g : w2) {
    if (!contains(g1, g)) return false;
  }
  return true;
}

// Coding that sends generator symbol i to the i-th generator word.
inline GroupWord evaluate_symbols(const GroupWord& expression,
                                  std::span<const GroupWord> generators) {
  GroupWord out;
  for (int s : expression.syllables()) {
    std::size_t i = static_cast<std::size_t>(syllable_letter(s));
    if (i >= generators.size())
      throw internal_error("expression symbol out of range");
    out = s > 0 ? out * generators[i] : out * generators[i].inverse();
  }
  return out;
}

// Expression of target over the given ordered family, recovered from the
// fold provenance tags and round-trip checked. Unique (as a reduced word
// over the symbols) whenever the family is a free family.
inline GroupWord express(std::span<const GroupWord> family,
                         const GroupWord& target, const Alphabet& alphabet) {
  StallingsGraph g = stallings(family, alphabet);
  GroupWord expression;
  if (detail::trace(g, target, &expression) != 0)
    throw input_error("target is not a member of the subgroup");
  if (evaluate_symbols(expression, family) != target)
    throw internal_error("expression round-trip failed");
  return expression;
}

// DOT export: directed edges labeled by letters, basepoint doubly circled.
inline std::string to_dot(const StallingsGraph& g) {
  std::string out = "digraph stallings {\n  rankdir=LR;\n";
  out += "  0 [shape=doublecircle];\n";
  for (int v = 1; v < g.num_vertices; ++v)
    out += "  " + std::to_string(v) + " [shape=circle];\n";
  for (const StallingsEdge& e : g.edges) {
    out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
           " [label=\"" + g.alphabet.name(e.letter) + "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace dendric
