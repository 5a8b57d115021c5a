#pragma once

// Test-only oracles. Deliberately independent of the library's own
// computation paths: the language oracle works on plain strings, the
// basis oracle uses brute-force Nielsen reduction instead of graph
// folding.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dendric/words.hpp"

namespace oracles {

// --- naive substitutive language -------------------------------------------

using StringRules = std::map<char, std::string>;

inline std::string naive_apply(const StringRules& rules, const std::string& w) {
  std::string out;
  for (char c : w) out += rules.at(c);
  return out;
}

inline std::string naive_iterate(const StringRules& rules, char start, int k) {
  std::string w(1, start);
  for (int i = 0; i < k; ++i) w = naive_apply(rules, w);
  return w;
}

// All factors of w of length 1..n (the empty factor is implicit).
inline std::set<std::string> naive_factors(const std::string& w, int n) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (int len = 1; len <= n && i + static_cast<std::size_t>(len) <= w.size();
         ++len) {
      out.insert(w.substr(i, static_cast<std::size_t>(len)));
    }
  }
  return out;
}

// --- brute-force Nielsen reduction -------------------------------------------

struct NielsenVerdict {
  bool free_family = false;
  bool basis = false;
};

// Repeatedly replaces a generator by a strictly shorter product with
// another generator or its inverse, dropping generators that reduce to
// the identity. The input family is free iff nothing was dropped; it is
// a basis of the free group iff moreover the stable set is the alphabet
// up to inversion and permutation.
inline NielsenVerdict nielsen_oracle(std::vector<dendric::GroupWord> gens,
                                     const dendric::Alphabet& alphabet) {
  // set semantics on the input
  std::vector<dendric::GroupWord> ws;
  for (const auto& g : gens) {
    bool dup = false;
    for (const auto& h : ws) dup |= g == h;
    if (!dup) ws.push_back(g);
  }
  std::size_t initial = ws.size();

  bool eliminated = false;
  for (std::size_t i = 0; i < ws.size();) {
    if (ws[i].empty()) {
      ws.erase(ws.begin() + static_cast<long>(i));
      eliminated = true;
    } else {
      ++i;
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < ws.size() && !changed; ++i) {
      for (std::size_t j = 0; j < ws.size() && !changed; ++j) {
        if (i == j) continue;
        const dendric::GroupWord cands[4] = {
            ws[i] * ws[j], ws[i] * ws[j].inverse(), ws[j] * ws[i],
            ws[j].inverse() * ws[i]};
        for (const dendric::GroupWord& c : cands) {
          if (c.size() < ws[i].size()) {
            if (c.empty()) {
              ws.erase(ws.begin() + static_cast<long>(i));
              eliminated = true;
            } else {
              ws[i] = c;
            }
            changed = true;
            break;
          }
        }
      }
    }
  }

  NielsenVerdict v;
  v.free_family = !eliminated && ws.size() == initial;
  if (v.free_family && static_cast<int>(ws.size()) == alphabet.size()) {
    std::set<int> letters;
    bool all_single = true;
    for (const auto& g : ws) {
      if (g.size() != 1) {
        all_single = false;
        break;
      }
      letters.insert(dendric::syllable_letter(g.syllables()[0]));
    }
    v.basis = all_single && static_cast<int>(letters.size()) == alphabet.size();
  }
  return v;
}

// --- random generators ----------------------------------------------------------

inline dendric::GroupWord random_reduced_word(std::mt19937& rng, int letters,
                                              int max_len) {
  std::uniform_int_distribution<int> len_dist(0, max_len);
  int len = len_dist(rng);
  std::vector<int> syl;
  std::uniform_int_distribution<int> letter_dist(0, letters - 1);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  while (static_cast<int>(syl.size()) < len) {
    int s = dendric::make_syllable(letter_dist(rng), sign_dist(rng) ? +1 : -1);
    if (!syl.empty() && syl.back() == -s) continue;
    syl.push_back(s);
  }
  return dendric::GroupWord(std::move(syl));
}

}  // namespace oracles
