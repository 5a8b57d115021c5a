#pragma once

#include <map>
#include <string>

#include "dendric/language.hpp"

namespace helpers {

inline std::string data_path(const std::string& name) {
  return std::string(DENDRIC_DATA_DIR) + "/" + name;
}

inline const dendric::Substitution& tribonacci() {
  static dendric::Substitution s =
      dendric::parse_substitution("a -> ab\nb -> ac\nc -> a\n", "tribonacci");
  return s;
}

inline const dendric::Substitution& fibonacci() {
  static dendric::Substitution s =
      dendric::parse_substitution("a -> ab\nb -> a\n", "fibonacci");
  return s;
}

inline const dendric::Substitution& thuemorse() {
  static dendric::Substitution s =
      dendric::parse_substitution("a -> ab\nb -> ba\n", "thuemorse");
  return s;
}

// Languages are expensive enough to share across test cases.
inline const dendric::LanguageApprox& lang(const dendric::Substitution& s,
                                           int n) {
  static std::map<std::pair<std::string, int>, dendric::LanguageApprox> cache;
  auto key = std::make_pair(s.name, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, dendric::generate_language(s, n)).first;
  return it->second;
}

inline dendric::Word W(const dendric::Alphabet& alphabet,
                       const std::string& text) {
  return dendric::parse_word(text, alphabet);
}

inline dendric::GroupWord G(const dendric::Alphabet& alphabet,
                            const std::string& text) {
  return dendric::to_group(dendric::parse_word(text, alphabet));
}

inline dendric::WordSet word_set(const dendric::Alphabet& alphabet,
                                 const std::vector<std::string>& words) {
  dendric::WordSet out;
  for (const std::string& w : words) out.insert(W(alphabet, w));
  return out;
}

inline std::vector<dendric::Word> word_vec(const dendric::Alphabet& alphabet,
                                           const std::vector<std::string>& ws) {
  std::vector<dendric::Word> out;
  for (const std::string& w : ws) out.push_back(W(alphabet, w));
  return out;
}

inline std::vector<dendric::GroupWord> group_vec(
    const dendric::Alphabet& alphabet, const std::vector<std::string>& ws) {
  std::vector<dendric::GroupWord> out;
  for (const std::string& w : ws) out.push_back(G(alphabet, w));
  return out;
}

}  // namespace helpers
