#pragma once

// Elementary positive automorphisms of the free group, decomposition of a
// positive basis into such moves, and certificate replay.
//
// Moves act on a tuple of positive words indexed by the alphabet:
//   alpha(a,b):       entry a becomes V[a] * V[b]
//   alphatilde(a,b):  entry a becomes V[b] * V[a]
//   perm:             entries are reindexed
// Replaying a certificate starts from the identity tuple (a)_{a in A};
// the claim is that the final entries equal the target set.

#include <span>

#include "dendric/freegroup.hpp"

namespace dendric {

struct ElementaryMove {
  enum class Kind { Permutation, Alpha, AlphaTilde };
  Kind kind = Kind::Permutation;
  std::vector<int> perm;  // Permutation: entry i receives V[perm[i]]
  int a = -1, b = -1;     // Alpha kinds; requires a != b

  static ElementaryMove permutation(std::vector<int> p) {
    ElementaryMove m;
    m.kind = Kind::Permutation;
    m.perm = std::move(p);
    return m;
  }
  static ElementaryMove alpha(int a, int b) {
    ElementaryMove m;
    m.kind = Kind::Alpha;
    m.a = a;
    m.b = b;
    return m;
  }
  static ElementaryMove alpha_tilde(int a, int b) {
    ElementaryMove m;
    m.kind = Kind::AlphaTilde;
    m.a = a;
    m.b = b;
    return m;
  }
};

inline std::vector<Word> apply_move(const std::vector<Word>& tuple,
                                    const ElementaryMove& mv,
                                    const Alphabet& alphabet) {
  int k = alphabet.size();
  if (static_cast<int>(tuple.size()) != k)
    throw input_error("tuple must have one entry per letter");
  std::vector<Word> out = tuple;
  switch (mv.kind) {
    case ElementaryMove::Kind::Permutation: {
      if (static_cast<int>(mv.perm.size()) != k)
        throw input_error("permutation has wrong size");
      std::vector<bool> hit(static_cast<std::size_t>(k), false);
      for (int img : mv.perm) {
        if (img < 0 || img >= k || hit[static_cast<std::size_t>(img)])
          throw input_error("not a permutation of the alphabet");
        hit[static_cast<std::size_t>(img)] = true;
      }
      for (int i = 0; i < k; ++i)
        out[static_cast<std::size_t>(i)] =
            tuple[static_cast<std::size_t>(mv.perm[static_cast<std::size_t>(i)])];
      break;
    }
    case ElementaryMove::Kind::Alpha:
    case ElementaryMove::Kind::AlphaTilde: {
      if (mv.a == mv.b) throw input_error("alpha moves need a != b");
      if (mv.a < 0 || mv.a >= k || mv.b < 0 || mv.b >= k)
        throw input_error("move letters outside alphabet");
      const Word& va = tuple[static_cast<std::size_t>(mv.a)];
      const Word& vb = tuple[static_cast<std::size_t>(mv.b)];
      out[static_cast<std::size_t>(mv.a)] =
          mv.kind == ElementaryMove::Kind::Alpha ? va + vb : vb + va;
      break;
    }
  }
  return out;
}

struct TameCertificate {
  std::vector<ElementaryMove> moves;  // applied top to bottom from A
};

inline std::vector<Word> replay(const TameCertificate& cert,
                                const Alphabet& alphabet) {
  std::vector<Word> tuple;
  for (int a = 0; a < alphabet.size(); ++a) tuple.push_back(Word::single(a));
  for (const ElementaryMove& mv : cert.moves)
    tuple = apply_move(tuple, mv, alphabet);
  return tuple;
}

inline bool verify_certificate(const TameCertificate& cert,
                               std::span<const Word> target,
                               const Alphabet& alphabet) {
  std::vector<Word> got = replay(cert, alphabet);
  std::sort(got.begin(), got.end(), shortlex_less);
  std::vector<Word> want(target.begin(), target.end());
  std::sort(want.begin(), want.end(), shortlex_less);
  want.erase(std::unique(want.begin(), want.end()), want.end());
  return got == want;
}

struct TameResult {
  bool found = false;
  TameCertificate certificate;
  long nodes = 0;
  bool budget_exhausted = false;
};

namespace detail {

struct TameSearch {
  const Alphabet& alphabet;
  long budget;
  long nodes = 0;
  std::set<std::vector<Word>> failed;
  std::vector<ElementaryMove> backward;  // moves stripped so far, last first

  explicit TameSearch(const Alphabet& a, long b) : alphabet(a), budget(b) {}

  static bool proper_suffix(const Word& part, const Word& whole) {
    return part.size() < whole.size() && whole.ends_with(part);
  }
  static bool proper_prefix(const Word& part, const Word& whole) {
    return part.size() < whole.size() && whole.starts_with(part);
  }

  bool all_letters(const std::vector<Word>& tuple) const {
    for (const Word& w : tuple) {
      if (w.size() != 1) return false;
    }
    return true;
  }

  void assert_basis(const std::vector<Word>& tuple) const {
    std::vector<GroupWord> fam;
    for (const Word& w : tuple) fam.push_back(to_group(w));
    if (!is_basis_of_free_group(fam, alphabet))
      throw internal_error("backward step left a non-basis tuple");
  }

  // Depth-first backward stripping; total length strictly decreases along
  // every branch. Returns true once the tuple is a permutation of A.
  bool dfs(const std::vector<Word>& tuple) {
    if (all_letters(tuple)) return true;
    if (failed.count(tuple)) return false;
    if (nodes >= budget) return false;
    ++nodes;

    struct Candidate {
      int strip;
      int i, j;
      bool suffix;  // suffix strip inverts an alpha move
    };
    std::vector<Candidate> cands;
    int k = alphabet.size();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        if (i == j) continue;
        const Word& vi = tuple[static_cast<std::size_t>(i)];
        const Word& vj = tuple[static_cast<std::size_t>(j)];
        if (proper_suffix(vj, vi)) cands.push_back({vj.size(), i, j, true});
        if (proper_prefix(vj, vi)) cands.push_back({vj.size(), i, j, false});
      }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& x, const Candidate& y) {
                       if (x.strip != y.strip) return x.strip > y.strip;
                       if (x.i != y.i) return x.i < y.i;
                       if (x.j != y.j) return x.j < y.j;
                       return x.suffix && !y.suffix;
                     });

    for (const Candidate& c : cands) {
      std::vector<Word> prev = tuple;
      const Word& vi = tuple[static_cast<std::size_t>(c.i)];
      prev[static_cast<std::size_t>(c.i)] =
          c.suffix ? vi.prefix(vi.size() - c.strip)
                   : vi.drop_prefix(c.strip);
      assert_basis(prev);
      backward.push_back(c.suffix ? ElementaryMove::alpha(c.i, c.j)
                                  : ElementaryMove::alpha_tilde(c.i, c.j));
      if (dfs(prev)) return true;
      backward.pop_back();
      if (nodes >= budget) return false;
    }
    failed.insert(tuple);
    return false;
  }
};

}  // namespace detail

// Searches for a sequence of elementary moves producing the target set
// from the alphabet: backward greedy stripping with backtracking,
// longest strip first. Requires the target to be a basis of the free
// group. Not-found within the budget is inconclusive, not a proof that
// no decomposition exists.
inline TameResult tame_decompose(std::span<const Word> target,
                                 const Alphabet& alphabet, long budget = 100000) {
  if (budget < 1) throw input_error("budget must be >= 1");
  std::vector<Word> distinct(target.begin(), target.end());
  std::sort(distinct.begin(), distinct.end(), shortlex_less);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  {
    std::vector<GroupWord> fam;
    for (const Word& w : distinct) fam.push_back(to_group(w));
    if (!is_basis_of_free_group(fam, alphabet))
      throw input_error("target set is not a basis of the free group");
  }

  detail::TameSearch search(alphabet, budget);
  TameResult out;
  bool ok = search.dfs(distinct);
  out.nodes = search.nodes;
  out.budget_exhausted = search.nodes >= budget;
  if (!ok) return out;

  // The backward walk ended at a tuple of single letters; replaying needs
  // the matching permutation first, then the stripped moves in reverse.
  std::vector<Word> tuple = distinct;
  for (auto it = search.backward.begin(); it != search.backward.end(); ++it) {
    const ElementaryMove& mv = *it;
    Word vi = tuple[static_cast<std::size_t>(mv.a)];
    const Word& vj = tuple[static_cast<std::size_t>(mv.b)];
    tuple[static_cast<std::size_t>(mv.a)] =
        mv.kind == ElementaryMove::Kind::Alpha
            ? vi.prefix(vi.size() - vj.size())
            : vi.drop_prefix(vj.size());
  }
  std::vector<int> perm;
  bool identity = true;
  for (int i = 0; i < alphabet.size(); ++i) {
    perm.push_back(tuple[static_cast<std::size_t>(i)][0]);
    identity &= perm.back() == i;
  }
  out.found = true;
  if (!identity)
    out.certificate.moves.push_back(ElementaryMove::permutation(perm));
  for (auto it = search.backward.rbegin(); it != search.backward.rend(); ++it)
    out.certificate.moves.push_back(*it);

  if (!verify_certificate(out.certificate, distinct, alphabet))
    throw internal_error("tame certificate failed replay");
  return out;
}

// --- certificate text format ---------------------------------------------------
//
// One move per line, applied top to bottom starting from the alphabet:
//   perm (b a c)
//   alpha a b
//   alphatilde a b

inline std::string certificate_to_text(const TameCertificate& cert,
                                       const Alphabet& alphabet) {
  std::string out;
  for (const ElementaryMove& mv : cert.moves) {
    switch (mv.kind) {
      case ElementaryMove::Kind::Permutation: {
        out += "perm (";
        for (std::size_t i = 0; i < mv.perm.size(); ++i) {
          if (i) out += ' ';
          out += alphabet.name(mv.perm[i]);
        }
        out += ")\n";
        break;
      }
      case ElementaryMove::Kind::Alpha:
        out += "alpha " + alphabet.name(mv.a) + " " + alphabet.name(mv.b) + "\n";
        break;
      case ElementaryMove::Kind::AlphaTilde:
        out += "alphatilde " + alphabet.name(mv.a) + " " + alphabet.name(mv.b) +
               "\n";
        break;
    }
  }
  return out;
}

inline TameCertificate certificate_from_text(const std::string& text,
                                             const Alphabet& alphabet) {
  TameCertificate cert;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos)
      line = line.substr(0, pos);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "perm") {
      std::string rest;
      std::getline(ls, rest);
      std::string names;
      for (char c : rest) {
        if (c == '(' || c == ')') continue;
        names += c;
      }
      std::istringstream ns(names);
      std::vector<int> perm;
      std::string nm;
      while (ns >> nm) perm.push_back(alphabet.id(nm));
      cert.moves.push_back(ElementaryMove::permutation(std::move(perm)));
    } else if (head == "alpha" || head == "alphatilde") {
      std::string an, bn;
      if (!(ls >> an >> bn)) throw input_error("malformed move: " + line);
      int a = alphabet.id(an), b = alphabet.id(bn);
      cert.moves.push_back(head == "alpha" ? ElementaryMove::alpha(a, b)
                                           : ElementaryMove::alpha_tilde(a, b));
    } else {
      throw input_error("unknown move '" + head + "'");
    }
  }
  return cert;
}

}  // namespace dendric
