#pragma once

// Command-line front end. Kept in a header so the test suite can invoke
// `run` in-process and assert on exit codes and output.
//
// Exit codes: 0 = holds / done, 1 = fails with witness, 2 = usage, parse
// or range errors.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dendric/language.hpp"
#include "dendric/rauzy.hpp"
#include "dendric/returns.hpp"
#include "dendric/tame.hpp"

namespace dendric::cli {

struct RunConfig {
  std::string system_path;
  int max_len = 24;
  int bound = 6;
  std::string format = "text";
  long budget = 100000;
  unsigned long seed = 0;  // reserved for sampling sweeps
};

namespace detail {

inline Substitution load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open system file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos)
    name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos)
    name = name.substr(0, dot);
  return parse_substitution(ss.str(), name);
}

inline void require_sweep_margin(const RunConfig& cfg) {
  if (cfg.max_len < cfg.bound + 2)
    throw input_error("--max-len must be at least --bound + 2");
}

inline std::string yesno(bool b) { return b ? "yes" : "no"; }

inline std::vector<Word> sweep_words(const LanguageApprox& L, int bound) {
  std::vector<Word> ws;
  for (const Word& w : L.factors) {
    if (w.size() > bound) break;
    ws.push_back(w);
  }
  return ws;
}

// ---- language -------------------------------------------------------------

inline int cmd_language(const RunConfig& cfg, bool list, std::ostream& out) {
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);
  ComplexityTable t = complexity(L);
  bool tsv = cfg.format == "tsv";
  if (!tsv) out << "# " << L.provenance << ", max length " << L.max_len << "\n";
  out << "n\tp\ts\tb\n";
  for (int n = 0; n <= t.max_n(); ++n) {
    out << n << '\t' << t.p[static_cast<std::size_t>(n)] << '\t';
    if (auto sv = t.s(n)) out << *sv;
    else out << '-';
    out << '\t';
    if (auto bv = t.b(n)) out << *bv;
    else out << '-';
    out << '\n';
  }
  if (list) {
    if (!tsv) out << "# factors\n";
    for (const Word& f : L.factors) out << word_str(L.alphabet, f) << '\n';
  }
  return 0;
}

// ---- returns ---------------------------------------------------------------

inline int cmd_returns(const RunConfig& cfg, const std::string& word,
                       bool right, std::ostream& out) {
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);
  Word w = parse_word(word, L.alphabet);
  if (right) {
    ReturnSet rs = right_return_words(L, w);
    out << "right-returns(" << word_str(L.alphabet, w) << "): " << rs.size()
        << "\n";
    for (int i = 0; i < rs.size(); ++i) {
      out << "r" << i + 1 << " = "
          << word_str(L.alphabet, rs.returns[static_cast<std::size_t>(i)])
          << "\n";
    }
  } else {
    out << return_report(L, return_words(L, w));
  }
  return 0;
}

// ---- derive ----------------------------------------------------------------

inline int cmd_derive(const RunConfig& cfg, const std::string& word,
                      std::ostream& out) {
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);
  Word w = parse_word(word, L.alphabet);
  DerivedSystem d = derive(L, w, cfg.bound);
  out << "derive(" << word_str(L.alphabet, w) << "): alphabet";
  for (int b = 0; b < d.derived_alphabet.size(); ++b)
    out << ' ' << d.derived_alphabet.name(b);
  out << "\n";
  for (int b = 0; b < d.derived_alphabet.size(); ++b) {
    out << d.derived_alphabet.name(b) << " = "
        << word_str(L.alphabet, d.theta.rule(b)) << "\n";
  }
  ComplexityTable t = complexity(d.derived_language);
  out << "n\tp\n";
  for (int n = 0; n <= t.max_n(); ++n)
    out << n << '\t' << t.p[static_cast<std::size_t>(n)] << '\n';
  return 0;
}

// ---- check-dendric -----------------------------------------------------------

inline int cmd_check_dendric(const RunConfig& cfg, std::ostream& out) {
  require_sweep_margin(cfg);
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);
  DendricReport rep = dendric_report(L, cfg.bound);
  if (cfg.format == "tsv") {
    out << "word\tconnected\ttree\tm\n";
    for (const DendricRow& row : rep.rows) {
      out << word_str(L.alphabet, row.word) << '\t' << yesno(row.connected)
          << '\t' << yesno(row.tree) << '\t' << row.m << '\n';
    }
  }
  out << "dendric up to length " << cfg.bound << ": "
      << yesno(rep.all_dendric) << "\n";
  if (!rep.all_dendric) {
    out << "witness: " << word_str(L.alphabet, *rep.first_non_tree) << "\n";
    out << to_dot(extension_graph(L, *rep.first_non_tree), L.alphabet);
    return 1;
  }
  return 0;
}

// ---- check-returns -------------------------------------------------------------

inline int cmd_check_returns(const RunConfig& cfg, std::ostream& out) {
  require_sweep_margin(cfg);
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);
  out << "word\t|R|\tbasis\ttame\n";
  std::optional<Word> witness;
  std::vector<Word> inconclusive;
  for (const Word& w : sweep_words(L, cfg.bound)) {
    ReturnSet rs = return_words(L, w);
    std::vector<GroupWord> fam;
    for (const Word& r : rs.returns) fam.push_back(to_group(r));
    bool basis = is_basis_of_free_group(fam, L.alphabet);
    std::string tame = "-";
    if (basis) {
      TameResult tr = tame_decompose(rs.returns, L.alphabet, cfg.budget);
      if (tr.found) {
        tame = "yes";
      } else {
        tame = "inconclusive";
        inconclusive.push_back(w);
      }
    } else if (!witness) {
      witness = w;
    }
    out << word_str(L.alphabet, w) << '\t' << rs.size() << '\t' << yesno(basis)
        << '\t' << tame << '\n';
  }
  for (const Word& w : inconclusive) {
    out << "warning: tame search inconclusive for "
        << word_str(L.alphabet, w) << " within budget " << cfg.budget << "\n";
  }
  if (witness) {
    out << "witness: " << word_str(L.alphabet, *witness)
        << " (return set is not a basis)\n";
    return 1;
  }
  return 0;
}

// ---- theorem --------------------------------------------------------------------

// Runs the dendricity sweep and the return-set basis sweep independently
// and reports whether they agree in the direction testable at this scale.
// Local consistency facts (connected implies multiplicity >= 0, connected
// neutral implies tree, second complexity difference equals the
// multiplicity sum) are verified along the way; a violation is reported
// as a contradiction since no shift space can produce one.
inline int cmd_theorem(const RunConfig& cfg, std::ostream& out) {
  require_sweep_margin(cfg);
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);

  std::vector<std::string> contradictions;
  std::optional<Word> non_tree;
  for (const Word& w : sweep_words(L, cfg.bound)) {
    ExtensionGraph g = extension_graph(L, w);
    bool conn = is_connected(g);
    bool tree = is_tree(g);
    int m = multiplicity(g);
    if (conn && m < 0)
      contradictions.push_back("connected word with negative multiplicity: " +
                               word_str(L.alphabet, w));
    if (conn && m == 0 && !tree)
      contradictions.push_back("connected neutral word that is not a tree: " +
                               word_str(L.alphabet, w));
    if (!tree && !non_tree) non_tree = w;
  }
  for (int n = 0; n + 2 <= L.max_len && n <= cfg.bound; ++n) {
    if (!check_multiplicity_sum(L, n).holds)
      contradictions.push_back(
          "second complexity difference mismatch at n = " + std::to_string(n));
  }

  std::optional<Word> non_basis;
  int unchecked = 0;
  for (const Word& w : sweep_words(L, cfg.bound)) {
    try {
      ReturnSet rs = return_words(L, w);
      std::vector<GroupWord> fam;
      for (const Word& r : rs.returns) fam.push_back(to_group(r));
      if (!is_basis_of_free_group(fam, L.alphabet) && !non_basis) non_basis = w;
    } catch (const range_error&) {
      ++unchecked;
    }
  }

  out << "dendricity: "
      << (non_tree ? "witness " + word_str(L.alphabet, *non_tree)
                   : "all words up to " + std::to_string(cfg.bound) +
                         " are dendric")
      << "\n";
  out << "return sets: "
      << (non_basis ? "witness " + word_str(L.alphabet, *non_basis) +
                          " is not a basis"
                    : "all return sets up to " + std::to_string(cfg.bound) +
                          " are bases")
      << "\n";
  if (unchecked > 0) out << "unchecked words (range): " << unchecked << "\n";

  if (!contradictions.empty()) {
    for (const std::string& c : contradictions)
      out << "contradiction: " << c << "\n";
    out << "status: contradiction\n";
    return 1;
  }
  if (!non_tree && !non_basis && unchecked == 0) {
    out << "status: agree (dendric and every return set is a basis)\n";
    return 0;
  }
  if (non_tree && non_basis) {
    out << "status: agree (non-dendric and a non-basis return set exists)\n";
    return 0;
  }
  out << "status: inconclusive (a witness may lie beyond the bound)\n";
  return 0;
}

// ---- graph ----------------------------------------------------------------------

inline Alphabet infer_alphabet(const std::vector<std::string>& words) {
  std::vector<std::string> names;
  for (const std::string& w : words) {
    for (const std::string& cp : utf8_split(w)) {
      if (std::find(names.begin(), names.end(), cp) == names.end())
        names.push_back(cp);
    }
  }
  return Alphabet(names);
}

inline int cmd_graph(const RunConfig& cfg, const std::string& kind,
                     const std::string& word, int order,
                     const std::vector<std::string>& gens, std::ostream& out) {
  if (kind == "stallings") {
    if (gens.empty()) throw input_error("graph stallings needs --gens");
    Alphabet alphabet = cfg.system_path.empty()
                            ? infer_alphabet(gens)
                            : load_system(cfg.system_path).domain;
    std::vector<Word> ws;
    for (const std::string& g : gens) ws.push_back(parse_word(g, alphabet));
    out << to_dot(stallings(std::span<const Word>(ws), alphabet));
    return 0;
  }
  Substitution s = load_system(cfg.system_path);
  LanguageApprox L = generate_language(s, cfg.max_len);
  if (kind == "extension") {
    out << to_dot(extension_graph(L, parse_word(word, L.alphabet)), L.alphabet);
  } else if (kind == "rauzy") {
    out << to_dot(rauzy_graph(L, order), L.alphabet);
  } else if (kind == "derived") {
    DerivedSystem d = derive(L, parse_word(word, L.alphabet), 2);
    out << to_dot(extension_graph(d.derived_language, Word()),
                  d.derived_alphabet);
  } else {
    throw input_error("unknown graph kind '" + kind + "'");
  }
  return 0;
}

// ---- tame -----------------------------------------------------------------------

inline int cmd_tame(const RunConfig& cfg, const std::string& word,
                    const std::vector<std::string>& gens, std::ostream& out,
                    std::ostream& err) {
  Alphabet alphabet;
  std::vector<Word> target;
  if (!gens.empty()) {
    alphabet = cfg.system_path.empty()
                   ? infer_alphabet(gens)
                   : load_system(cfg.system_path).domain;
    for (const std::string& g : gens) target.push_back(parse_word(g, alphabet));
  } else {
    if (word.empty()) throw input_error("tame needs --word or --gens");
    Substitution s = load_system(cfg.system_path);
    LanguageApprox L = generate_language(s, cfg.max_len);
    alphabet = L.alphabet;
    target = return_words(L, parse_word(word, L.alphabet)).returns;
  }
  try {
    TameResult tr = tame_decompose(target, alphabet, cfg.budget);
    if (!tr.found) {
      out << "# inconclusive: no certificate within budget " << cfg.budget
          << " (" << tr.nodes << " nodes)\n";
      return 0;
    }
    out << certificate_to_text(tr.certificate, alphabet);
    return 0;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;  // the set exists but is not a basis
  }
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"combinatorics of substitutive shift spaces: languages, "
               "extension graphs, return words, derived systems, and "
               "free-group basis checks"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool list = false;
  bool right = false;
  std::string word;
  std::string kind;
  int order = 1;
  std::vector<std::string> gens;

  auto add_common = [&](CLI::App* sub, bool needs_system) {
    auto* sys = sub->add_option("--system", cfg.system_path,
                                "substitution file (lines 'x -> w')");
    if (needs_system) sys->required();
    sub->add_option("--max-len", cfg.max_len, "language length bound")
        ->check(CLI::PositiveNumber);
    sub->add_option("--bound", cfg.bound, "word-length bound for sweeps")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--format", cfg.format, "text | tsv")
        ->check(CLI::IsMember({"text", "tsv", "dot"}));
    sub->add_option("--budget", cfg.budget, "search budget in nodes")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for sampling sweeps (reserved)");
  };

  CLI::App* language = app.add_subcommand("language", "complexity table");
  add_common(language, true);
  language->add_flag("--list", list, "also list the factors");

  CLI::App* returns = app.add_subcommand("returns", "return words of a factor");
  add_common(returns, true);
  returns->add_option("--word", word, "factor, or 'eps'")->required();
  returns->add_flag("--right", right, "right return words");

  CLI::App* derives = app.add_subcommand("derive", "derived system at a factor");
  add_common(derives, true);
  derives->add_option("--word", word, "factor, or 'eps'")->required();

  CLI::App* checkd = app.add_subcommand("check-dendric",
                                        "are all extension graphs trees?");
  add_common(checkd, true);

  CLI::App* checkr = app.add_subcommand(
      "check-returns", "are all return sets (tame) bases of the free group?");
  add_common(checkr, true);

  CLI::App* theorem = app.add_subcommand(
      "theorem", "dendricity sweep vs return-set basis sweep");
  add_common(theorem, true);

  CLI::App* graph = app.add_subcommand("graph", "DOT export of a graph");
  add_common(graph, false);
  graph->add_option("kind", kind, "extension | rauzy | stallings | derived")
      ->required();
  graph->add_option("--word", word, "factor for extension/derived graphs");
  graph->add_option("--order", order, "Rauzy graph order");
  graph->add_option("--gens", gens, "generators for stallings graphs")
      ->delimiter(',');

  CLI::App* tame = app.add_subcommand("tame", "elementary-move certificate");
  add_common(tame, false);
  tame->add_option("--word", word, "use the return set of this factor");
  tame->add_option("--gens", gens, "explicit positive generators")
      ->delimiter(',');

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  std::string prog = "dendric";
  argv.push_back(prog.data());
  for (std::string& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(language)) return detail::cmd_language(cfg, list, out);
    if (app.got_subcommand(returns)) return detail::cmd_returns(cfg, word, right, out);
    if (app.got_subcommand(derives)) return detail::cmd_derive(cfg, word, out);
    if (app.got_subcommand(checkd)) return detail::cmd_check_dendric(cfg, out);
    if (app.got_subcommand(checkr)) return detail::cmd_check_returns(cfg, out);
    if (app.got_subcommand(theorem)) return detail::cmd_theorem(cfg, out);
    if (app.got_subcommand(graph))
      return detail::cmd_graph(cfg, kind, word, order, gens, out);
    if (app.got_subcommand(tame)) return detail::cmd_tame(cfg, word, gens, out, err);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const range_error& e) {
    err << "range error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace dendric::cli
