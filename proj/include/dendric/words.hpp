#pragma once

// Alphabets, words over an alphabet, freely reduced group words, and
// substitutions (monoid morphisms), plus the substitution text format.
//
// Letters are interned: a Word stores letter ids into its Alphabet, so
// comparisons and canonical (shortlex) orderings follow the declared
// alphabet order rather than the spelling of letter names.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dendric {

// Bad user input: unknown letters, malformed files, invalid arguments.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A query that the finite approximation cannot answer soundly. Raised
// instead of returning a truncated (silently wrong) object.
class range_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Indicates a bug, not a caller mistake.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Splits a UTF-8 string into code points. Letter names in substitution
// files are single code points.
inline std::vector<std::string> utf8_split(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t len = 1;
    unsigned char c = static_cast<unsigned char>(s[i]);
    if ((c & 0x80u) != 0) {
      while (i + len < s.size() &&
             (static_cast<unsigned char>(s[i + len]) & 0xC0u) == 0x80u) {
        ++len;
      }
    }
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

// Ordered finite set of letter names. The declared order is total and
// fixed; it drives every canonical ordering downstream.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw input_error("alphabet must be nonempty");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw input_error("empty letter name");
      for (std::size_t j = i + 1; j < names_.size(); ++j) {
        if (names_[i] == names_[j])
          throw input_error("duplicate letter '" + names_[i] + "'");
      }
    }
  }

  // Generated alphabets: prefix1, prefix2, ..., prefixk.
  static Alphabet symbols(const std::string& prefix, int k) {
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) names.push_back(prefix + std::to_string(i));
    return Alphabet(std::move(names));
  }

  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(int id) const {
    if (id < 0 || id >= size()) throw internal_error("letter id out of range");
    return names_[static_cast<std::size_t>(id)];
  }

  std::optional<int> find(const std::string& name) const {
    for (int i = 0; i < size(); ++i) {
      if (names_[static_cast<std::size_t>(i)] == name) return i;
    }
    return std::nullopt;
  }

  int id(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw input_error("unknown letter '" + name + "'");
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> names_;
};

// Finite (possibly empty) sequence of letters of some Alphabet.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}
  static Word single(int a) { return Word(std::vector<int>{a}); }

  int size() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  int operator[](int i) const { return letters[static_cast<std::size_t>(i)]; }

  Word sub(int pos, int len) const {
    return Word(std::vector<int>(letters.begin() + pos,
                                 letters.begin() + pos + len));
  }
  Word prefix(int len) const { return sub(0, len); }
  Word suffix(int len) const { return sub(size() - len, len); }
  Word drop_prefix(int len) const { return sub(len, size() - len); }

  bool starts_with(const Word& p) const {
    return p.size() <= size() &&
           std::equal(p.letters.begin(), p.letters.end(), letters.begin());
  }
  bool ends_with(const Word& s) const {
    return s.size() <= size() &&
           std::equal(s.letters.begin(), s.letters.end(),
                      letters.end() - s.size());
  }

  Word operator+(const Word& rhs) const {
    Word out = *this;
    out.letters.insert(out.letters.end(), rhs.letters.begin(),
                       rhs.letters.end());
    return out;
  }

  auto operator<=>(const Word&) const = default;
};

inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters < b.letters;
}

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const {
    return shortlex_less(a, b);
  }
};

using WordSet = std::set<Word, ShortlexLess>;

// Start positions of every occurrence of pattern in text. The empty
// pattern occurs at every position 0..|text|.
inline std::vector<int> occurrences(const Word& text, const Word& pattern) {
  std::vector<int> out;
  if (pattern.empty()) {
    out.resize(static_cast<std::size_t>(text.size()) + 1);
    for (int i = 0; i <= text.size(); ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
  }
  for (int i = 0; i + pattern.size() <= text.size(); ++i) {
    bool hit = true;
    for (int j = 0; j < pattern.size(); ++j) {
      if (text[i + j] != pattern[j]) {
        hit = false;
        break;
      }
    }
    if (hit) out.push_back(i);
  }
  return out;
}

// Syllables of group words are encoded as nonzero ints: letter id i with
// sign +1 is i+1, with sign -1 is -(i+1). Inversion is negation.
inline int make_syllable(int letter, int sign) {
  return sign >= 0 ? letter + 1 : -(letter + 1);
}
inline int syllable_letter(int s) { return (s > 0 ? s : -s) - 1; }
inline int syllable_sign(int s) { return s > 0 ? 1 : -1; }

// Freely reduced word over A u A^-1. Always stores the reduced form, so
// equality of subgroup elements is structural equality.
class GroupWord {
 public:
  GroupWord() = default;

  explicit GroupWord(std::vector<int> raw) {
    for (int s : raw) {
      if (s == 0) throw internal_error("zero syllable");
      if (!syl_.empty() && syl_.back() == -s) {
        syl_.pop_back();
      } else {
        syl_.push_back(s);
      }
    }
  }

  const std::vector<int>& syllables() const { return syl_; }
  int size() const { return static_cast<int>(syl_.size()); }
  bool empty() const { return syl_.empty(); }

  GroupWord inverse() const {
    GroupWord out;
    out.syl_.reserve(syl_.size());
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
      out.syl_.push_back(-*it);
    return out;
  }

  friend GroupWord operator*(const GroupWord& a, const GroupWord& b) {
    std::vector<int> raw = a.syl_;
    raw.insert(raw.end(), b.syl_.begin(), b.syl_.end());
    return GroupWord(std::move(raw));
  }

  auto operator<=>(const GroupWord&) const = default;

 private:
  std::vector<int> syl_;
};

// The unique freely reduced form of a raw syllable sequence. Letters are
// checked against the alphabet; idempotent on already-reduced input.
inline GroupWord reduce(const std::vector<int>& raw, const Alphabet& alphabet) {
  for (int s : raw) {
    if (s == 0 || syllable_letter(s) >= alphabet.size())
      throw input_error("syllable letter outside alphabet");
  }
  return GroupWord(raw);
}

inline GroupWord to_group(const Word& w) {
  std::vector<int> raw;
  raw.reserve(w.letters.size());
  for (int a : w.letters) raw.push_back(make_syllable(a, +1));
  return GroupWord(std::move(raw));
}

inline std::optional<Word> to_positive(const GroupWord& g) {
  std::vector<int> ls;
  ls.reserve(g.syllables().size());
  for (int s : g.syllables()) {
    if (s < 0) return std::nullopt;
    ls.push_back(syllable_letter(s));
  }
  return Word(std::move(ls));
}

// w^-1 g w, freely reduced.
inline GroupWord conjugate(const GroupWord& g, const GroupWord& by) {
  return by.inverse() * g * by;
}

// --- display ------------------------------------------------------------

inline std::string letter_str(const Alphabet& alphabet, int id) {
  return alphabet.name(id);
}

// Single-character letter names concatenate (e.g. "abac"); otherwise
// letters are joined with '.'. The empty word renders as "eps".
inline std::string word_str(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "eps";
  bool compact = true;
  for (int a : w.letters) {
    if (utf8_split(alphabet.name(a)).size() != 1) {
      compact = false;
      break;
    }
  }
  std::string out;
  for (int i = 0; i < w.size(); ++i) {
    if (i > 0 && !compact) out += '.';
    out += alphabet.name(w[i]);
  }
  return out;
}

inline std::string group_word_str(const Alphabet& alphabet,
                                  const GroupWord& g) {
  if (g.empty()) return "eps";
  bool compact = true;
  for (int s : g.syllables()) {
    if (utf8_split(alphabet.name(syllable_letter(s))).size() != 1) {
      compact = false;
      break;
    }
  }
  std::string out;
  bool first = true;
  for (int s : g.syllables()) {
    if (!first && !compact) out += '.';
    first = false;
    out += alphabet.name(syllable_letter(s));
    if (s < 0) out += "^-1";
  }
  return out;
}

// --- substitutions --------------------------------------------------------

// A monoid morphism given by letter images. domain == codomain for the
// generating substitutions; derivating substitutions map a derived
// alphabet into the base one.
struct Substitution {
  Alphabet domain;
  Alphabet codomain;
  std::vector<Word> rules;  // indexed by domain letter id, over codomain
  std::string name;

  Substitution() = default;
  Substitution(Alphabet dom, Alphabet cod, std::vector<Word> rs,
               std::string nm = "")
      : domain(std::move(dom)),
        codomain(std::move(cod)),
        rules(std::move(rs)),
        name(std::move(nm)) {
    if (static_cast<int>(rules.size()) != domain.size())
      throw input_error("substitution must have one rule per letter");
    for (const Word& r : rules) {
      if (r.empty()) throw input_error("empty image in substitution");
      for (int a : r.letters) {
        if (a < 0 || a >= codomain.size())
          throw input_error("rule image uses a letter outside the alphabet");
      }
    }
  }

  static Substitution identity(const Alphabet& alphabet) {
    std::vector<Word> rules;
    for (int a = 0; a < alphabet.size(); ++a) rules.push_back(Word::single(a));
    return Substitution(alphabet, alphabet, std::move(rules), "id");
  }

  bool is_endomorphism() const { return domain == codomain; }

  const Word& rule(int letter) const {
    if (letter < 0 || letter >= domain.size())
      throw input_error("letter outside substitution domain");
    return rules[static_cast<std::size_t>(letter)];
  }
};

inline Word apply(const Substitution& s, const Word& w) {
  Word out;
  for (int a : w.letters) {
    const Word& img = s.rule(a);
    out.letters.insert(out.letters.end(), img.letters.begin(),
                       img.letters.end());
  }
  return out;
}

// Image under the group-morphism extension, freely reduced. Agrees with
// apply on positive words.
inline GroupWord apply_group(const Substitution& s, const GroupWord& g) {
  std::vector<int> raw;
  for (int syl : g.syllables()) {
    const Word& img = s.rule(syllable_letter(syl));
    if (syl > 0) {
      for (int a : img.letters) raw.push_back(make_syllable(a, +1));
    } else {
      for (auto it = img.letters.rbegin(); it != img.letters.rend(); ++it)
        raw.push_back(make_syllable(*it, -1));
    }
  }
  return GroupWord(std::move(raw));
}

// Rewrites w, given over `from`, by matching letter names in `to`.
inline Word remap(const Word& w, const Alphabet& from, const Alphabet& to) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (int a : w.letters) out.letters.push_back(to.id(from.name(a)));
  return out;
}

// (s o t)(a) = apply(s, t(a)). Requires every letter used by t's images
// to exist in s's domain.
inline Substitution compose(const Substitution& s, const Substitution& t) {
  std::vector<Word> rules;
  rules.reserve(t.rules.size());
  for (const Word& img : t.rules) {
    Word lifted;
    try {
      lifted = remap(img, t.codomain, s.domain);
    } catch (const input_error&) {
      throw input_error("compose: image alphabet not contained in domain");
    }
    rules.push_back(apply(s, lifted));
  }
  std::string nm = s.name.empty() || t.name.empty() ? std::string()
                                                    : s.name + "*" + t.name;
  return Substitution(t.domain, s.codomain, std::move(rules), nm);
}

// Primitivity via the letter-occurrence matrix: some power up to the
// Wielandt bound (k-1)^2 + 1 must be positive in every entry.
inline bool is_primitive(const Substitution& s) {
  if (!s.is_endomorphism())
    throw input_error("primitivity requires an endomorphism");
  int k = s.domain.size();
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(k),
                                   std::vector<bool>(static_cast<std::size_t>(k), false));
  for (int a = 0; a < k; ++a) {
    for (int b : s.rule(a).letters)
      m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
  }
  auto all_positive = [&](const std::vector<std::vector<bool>>& x) {
    for (const auto& row : x)
      for (bool v : row)
        if (!v) return false;
    return true;
  };
  int bound = (k - 1) * (k - 1) + 1;
  std::vector<std::vector<bool>> pw = m;
  for (int e = 1; e <= bound; ++e) {
    if (all_positive(pw)) return true;
    std::vector<std::vector<bool>> nx(static_cast<std::size_t>(k),
                                      std::vector<bool>(static_cast<std::size_t>(k), false));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          for (int l = 0; l < k; ++l)
            if (m[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)])
              nx[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] = true;
    pw = std::move(nx);
  }
  return false;
}

// --- substitution text format ----------------------------------------------
//
// One rule per line, `x -> w`, single-code-point letters, `#` starts a
// comment, blank lines ignored. The alphabet is the ordered set of
// left-hand-side letters; every letter used on a right-hand side must
// have a rule of its own.

inline Substitution parse_substitution(const std::string& text,
                                       const std::string& name = "") {
  std::vector<std::string> lhs;
  std::vector<std::vector<std::string>> rhs;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string();
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line = line.substr(0, pos);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos)
      throw input_error("line " + std::to_string(lineno) + ": expected 'x -> w'");
    std::string left = trim(line.substr(0, arrow));
    std::string right = trim(line.substr(arrow + 2));
    auto left_cps = utf8_split(left);
    if (left_cps.size() != 1)
      throw input_error("line " + std::to_string(lineno) +
                        ": left-hand side must be a single letter");
    if (right.empty())
      throw input_error("line " + std::to_string(lineno) + ": empty image");
    for (const std::string& seen : lhs) {
      if (seen == left)
        throw input_error("line " + std::to_string(lineno) +
                          ": duplicate rule for '" + left + "'");
    }
    std::vector<std::string> image;
    for (const std::string& cp : utf8_split(right)) {
      if (cp == " " || cp == "\t") continue;
      image.push_back(cp);
    }
    lhs.push_back(left);
    rhs.push_back(std::move(image));
  }
  if (lhs.empty()) throw input_error("no rules found");
  Alphabet alphabet(lhs);
  std::vector<Word> rules;
  rules.reserve(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    Word img;
    for (const std::string& cp : rhs[i]) {
      auto id = alphabet.find(cp);
      if (!id)
        throw input_error("letter '" + cp + "' in image of '" + lhs[i] +
                          "' has no rule");
      img.letters.push_back(*id);
    }
    rules.push_back(std::move(img));
  }
  return Substitution(alphabet, alphabet, std::move(rules), name);
}

// Parses a word given as single-code-point letter names ("eps" = empty).
inline Word parse_word(const std::string& text, const Alphabet& alphabet) {
  if (text.empty() || text == "eps") return Word();
  Word out;
  for (const std::string& cp : utf8_split(text)) out.letters.push_back(alphabet.id(cp));
  return out;
}

}  // namespace dendric
