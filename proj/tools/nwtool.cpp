// Command-line front end. Exit codes: 0 accepted or property holds,
// 1 rejected or property fails, 2 usage or input error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nw/automata.hpp"
#include "nw/circularity.hpp"
#include "nw/grids.hpp"
#include "nw/io.hpp"
#include "nw/logic.hpp"
#include "nw/parallel.hpp"
#include "nw/sphere_automaton.hpp"
#include "nw/sphere_constraints.hpp"
#include "nw/spheres.hpp"

namespace fs = std::filesystem;
using namespace nw;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

struct Globals {
  int threads = 1;
  std::string alphabet_file;
};

AlphabetPtr load_alphabet(const Globals& g) {
  return g.alphabet_file.empty() ? two_stack_alphabet()
                                 : parse_alphabet(read_text_file(g.alphabet_file));
}

std::vector<NestedWord> load_words(const std::string& path, const AlphabetPtr& sigma) {
  std::vector<NestedWord> out;
  for (auto& w : parse_words(read_text_file(path), *sigma)) out.push_back(nested(sigma, std::move(w)));
  if (out.empty()) fail(ErrorKind::EmptyWord, "no words in '" + path + "'");
  return out;
}

Mnwa as_mnwa(const Automaton& a) {
  if (auto* m = std::get_if<Mvpa>(&a)) return mvpa_to_mnwa(*m);
  return std::get<Mnwa>(a);
}

std::string join(const std::vector<int>& xs, int offset = 1) {
  std::ostringstream out;
  for (std::size_t k = 0; k < xs.size(); ++k) out << (k ? " " : "") << xs[k] + offset;
  return out.str();
}

int cmd_nest(const Globals& g, const std::string& file, bool dot) {
  const auto sigma = load_alphabet(g);
  bool first = true;
  for (const auto& w : load_words(file, sigma)) {
    if (dot) {
      std::cout << to_dot(w);
      continue;
    }
    if (!first) std::cout << "\n";
    first = false;
    std::cout << "word: " << format_word(*sigma, w.word()) << "\n";
    std::cout << "length: " << w.length() << "\n";
    for (const auto& e : w.matching())
      std::cout << "match: " << e.call + 1 << " " << e.ret + 1 << " " << e.stack + 1 << "\n";
    std::cout << "pending_calls: " << join(w.pending_calls()) << "\n";
    std::cout << "pending_returns: " << join(w.pending_returns()) << "\n";
  }
  return kOk;
}

int cmd_simulate(const Globals& g, const std::string& automaton_file, const std::string& words_file) {
  const auto a = parse_automaton(read_text_file(automaton_file));
  const auto sigma = std::visit([](const auto& x) { return x.alphabet; }, a);
  const auto words = load_words(words_file, sigma);
  std::vector<char> verdict(words.size());
  if (auto* m = std::get_if<Mvpa>(&a)) {
    parallel_for(words.size(), g.threads, [&](std::size_t k) { verdict[k] = mvpa_accepts(*m, words[k].word()); });
  } else {
    const MnwaAcceptor acc(std::get<Mnwa>(a));
    parallel_for(words.size(), g.threads, [&](std::size_t k) { verdict[k] = acc.accepts(words[k].word()); });
  }
  const auto accepted = std::count(verdict.begin(), verdict.end(), 1);
  if (words.size() == 1) {
    std::cout << (verdict[0] ? "ACCEPT" : "REJECT") << "\n";
  } else {
    for (std::size_t k = 0; k < words.size(); ++k)
      std::cout << (verdict[k] ? "ACCEPT " : "REJECT ") << format_word(*sigma, words[k].word()) << "\n";
    std::cout << "accepted: " << accepted << "/" << words.size() << "\n";
  }
  return accepted == static_cast<long>(words.size()) ? kOk : kRejected;
}

int cmd_convert(const std::string& file, bool degeneralize_first) {
  const auto a = parse_automaton(read_text_file(file));
  if (auto* m = std::get_if<Mvpa>(&a)) {
    std::cout << automaton_to_json(mvpa_to_mnwa(*m));
  } else {
    auto b = std::get<Mnwa>(a);
    if (degeneralize_first && b.has_calling_states()) b = degeneralize(b);
    std::cout << automaton_to_json(mnwa_to_mvpa(b));
  }
  return kOk;
}

int cmd_degeneralize(const std::string& file) {
  const auto a = parse_automaton(read_text_file(file));
  const auto* b = std::get_if<Mnwa>(&a);
  if (!b) fail(ErrorKind::InvalidArgument, "degeneralize expects an mnwa file");
  std::cout << automaton_to_json(degeneralize(*b));
  return kOk;
}

int cmd_product(const std::string& f1, const std::string& f2, const std::string& mode) {
  const auto b1 = as_mnwa(parse_automaton(read_text_file(f1)));
  const auto b2 = as_mnwa(parse_automaton(read_text_file(f2)));
  const auto m = mode == "union" ? ProductMode::Union : ProductMode::Intersection;
  std::cout << automaton_to_json(product(b1, b2, m));
  return kOk;
}

int cmd_spheres(const Globals& g, const std::string& file, int r, int position, bool dot, bool coloring) {
  const auto sigma = load_alphabet(g);
  int status = kOk;
  for (const auto& w : load_words(file, sigma)) {
    const auto all = spheres_of(w, r);
    if (dot) {
      if (position < 1 || position > w.length())
        fail(ErrorKind::PositionOutOfRange, "--dot needs --position within the word");
      std::cout << to_dot(all[position - 1]);
      continue;
    }
    std::cout << "word: " << format_word(*sigma, w.word()) << "\n";
    std::vector<SphereKey> keys;
    for (int i = 0; i < w.length(); ++i) {
      if (position > 0 && i + 1 != position) continue;
      std::cout << "sphere " << i + 1 << ": " << sphere_to_json(all[i]);
      keys.push_back(canonical_key(all[i]));
    }
    std::sort(keys.begin(), keys.end());
    std::cout << "distinct: " << std::unique(keys.begin(), keys.end()) - keys.begin() << "\n";
    if (coloring) {
      const auto c = chi_coloring(w, r, all);
      const int size = max_size_bound(r);
      std::cout << "colors: " << join(c.color, 0) << "\n";
      std::cout << "max_overlap_degree: " << c.max_overlap_degree << "\n";
      std::cout << "colors_used: " << c.colors_used << "\n";
      std::cout << "color_bound: " << color_bound(r) << "\n";
      if (c.max_overlap_degree > 4 * size * size || c.colors_used > color_bound(r)) status = kRejected;
    }
  }
  return status;
}

int cmd_sphere_run(const Globals& g, const std::string& file, int r, bool dot) {
  const auto sigma = load_alphabet(g);
  int status = kOk;
  for (const auto& w : load_words(file, sigma)) {
    const auto run = canonical_run(w, r);
    if (dot) {
      for (const auto& q : run) std::cout << to_dot(eta(q, sigma));
      continue;
    }
    std::cout << "word: " << format_word(*sigma, w.word()) << "\n";
    for (int i = 0; i < w.length(); ++i) {
      const auto& q = run[i];
      std::cout << "state " << i + 1 << ": members=" << q.members.size()
                << " final=" << is_final(q) << " calling=" << is_calling(q) << "\n";
      for (const auto& e : q.members)
        std::cout << "  member: active=" << e.active + 1 << " color=" << e.color
                  << " sphere=" << sphere_to_json(e.sphere());
    }
    const auto v = run_violation(w, r, run);
    std::cout << "verdict: " << (v ? "INVALID " + *v : std::string("VALID")) << "\n";
    if (v) status = kRejected;
  }
  return status;
}

int cmd_eval(const Globals& g, const std::string& words_file, const std::string& formula_file) {
  const auto sigma = load_alphabet(g);
  const auto f = parse_formula(read_text_file(formula_file));
  if (!free_variables(*f).empty()) fail(ErrorKind::UnboundVariable, "formula must be a sentence");
  const auto words = load_words(words_file, sigma);
  int status = kOk;
  for (const auto& w : words) {
    const bool v = eval(w, *f);
    if (words.size() == 1)
      std::cout << (v ? "TRUE" : "FALSE") << "\n";
    else
      std::cout << (v ? "TRUE " : "FALSE ") << format_word(*sigma, w.word()) << "\n";
    if (!v) status = kRejected;
  }
  return status;
}

std::vector<NestedWord> load_corpus(const std::string& path, const AlphabetPtr& sigma) {
  std::vector<std::string> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  std::vector<NestedWord> out;
  for (const auto& f : files)
    for (auto& w : parse_words(read_text_file(f), *sigma)) out.push_back(nested(sigma, std::move(w)));
  return out;
}

int cmd_compile_count(const Globals& g, const std::string& expr_file, int radius,
                      const std::string& corpus, const std::string& words_file) {
  auto c = parse_constraint(read_text_file(expr_file));
  if (radius >= 0 && radius != c.radius) fail(ErrorKind::RadiusMismatch, "--radius disagrees with the constraint");
  const auto acc = compile_constraint(c.expr, c.radius);
  std::cout << "radius: " << c.radius << "\n";
  int status = kOk;
  if (!words_file.empty()) {
    for (const auto& w : load_words(words_file, c.alphabet)) {
      const bool v = acc.accepts(w);
      std::cout << (v ? "ACCEPT " : "REJECT ") << format_word(*c.alphabet, w.word()) << "\n";
      if (!v) status = kRejected;
    }
  }
  if (!corpus.empty()) {
    const auto words = load_corpus(corpus, c.alphabet);
    std::vector<char> compiled(words.size()), direct(words.size());
    parallel_for(words.size(), g.threads, [&](std::size_t k) {
      compiled[k] = acc.accepts(words[k]);
      direct[k] = direct_count_verdict(c.expr, words[k]);
    });
    long disagreements = 0;
    for (std::size_t k = 0; k < words.size(); ++k)
      if (compiled[k] != direct[k]) {
        if (disagreements++ < 10)
          std::cout << "disagree: " << format_word(*c.alphabet, words[k].word()) << "\n";
      }
    std::cout << "words: " << words.size() << "\n";
    std::cout << "accepted: " << std::count(compiled.begin(), compiled.end(), 1) << "\n";
    std::cout << "disagreements: " << disagreements << "\n";
    status = disagreements == 0 ? kOk : kRejected;
  }
  return status;
}

int cmd_grid_encode(int n, int m, bool dot) {
  const auto e = encode(n, m);
  if (dot) {
    std::cout << to_dot(e);
    return kOk;
  }
  std::cout << "word: " << format_word(*two_stack_alphabet(), e.word.word()) << "\n";
  std::cout << "length: " << e.word.length() << "\n";
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= n; ++i) {
      const GridStructure grid(n, m);
      const int u = grid.node(i, j);
      std::cout << "chi " << i << " " << j << ": " << e.chi[u] + 1 << " " << e.chibar(1, u) + 1 << " "
                << e.chibar(2, u) + 1 << "\n";
    }
  return kOk;
}

int cmd_grid_verify(int n, int m) {
  const auto rep = verify_reduction(n, m);
  std::cout << "checked: " << rep.checked << "\n";
  std::cout << "verdict: " << (rep.ok ? "OK" : "FAIL " + rep.failure) << "\n";
  return rep.ok ? kOk : kRejected;
}

int cmd_grid_member(const std::string& file) {
  const auto sigma = two_stack_alphabet();
  int status = kOk;
  for (const auto& w : load_words(file, sigma)) {
    const bool v = image_membership(w);
    std::cout << (v ? "MEMBER " : "NOT MEMBER ") << format_word(*sigma, w.word()) << "\n";
    if (!v) status = kRejected;
  }
  return status;
}

int cmd_circular(const std::string& file, int bound, bool show_fmap) {
  const auto w = parse_directions(read_text_file(file));
  if (show_fmap) std::cout << "f_map: " << format_topo(f_map(w)) << "\n";
  const auto v = is_circular(w, bound);
  if (!v.circular) {
    std::cout << "NOT CIRCULAR (bound=" << bound << ")\n";
    return kRejected;
  }
  std::cout << "CIRCULAR (bound=" << bound << ")\n";
  std::cout << "witness: " << format_word(*two_stack_alphabet(), v.witness) << "\n";
  std::cout << "position: " << v.position + 1 << "\n";
  return kOk;
}

int cmd_corpus(const Globals& g, int length) {
  if (length < 1) fail(ErrorKind::InvalidArgument, "corpus length must be at least 1");
  const auto sigma = load_alphabet(g);
  std::string buffer;
  for_each_word(*sigma, length, [&](const Word& w) {
    buffer += format_word(*sigma, w);
    buffer += '\n';
    if (buffer.size() > (1 << 16)) {
      std::cout << buffer;
      buffer.clear();
    }
  });
  std::cout << buffer;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested words, multi-stack automata and sphere analysis"};
  app.require_subcommand(1);
  Globals g;
  g.threads = default_threads();
  app.add_option("--threads", g.threads, "Worker threads for bulk checks")->check(CLI::PositiveNumber);
  app.add_option("--alphabet", g.alphabet_file, "Alphabet file (default: two stacks a a~ | b b~)");

  int result = kOk;
  std::string p1, p2, mode = "intersection", corpus, words;
  int radius = -1, position = 0, n = 0, m = 0, bound = 0, length = 0;
  bool dot = false, coloring = false, degen = false, fmap = false;

  auto* nest = app.add_subcommand("nest", "Print the matching relation of each word");
  nest->add_option("words", p1)->required();
  nest->add_flag("--dot", dot);
  nest->callback([&] { result = cmd_nest(g, p1, dot); });

  auto* sim = app.add_subcommand("simulate", "Run an automaton on each word (0 iff all accepted)");
  sim->add_option("automaton", p1)->required();
  sim->add_option("words", p2)->required();
  sim->callback([&] { result = cmd_simulate(g, p1, p2); });

  auto* conv = app.add_subcommand("convert", "MVPA to MNWA or MNWA to MVPA");
  conv->add_option("automaton", p1)->required();
  conv->add_flag("--degeneralize", degen, "Remove calling states first");
  conv->callback([&] { result = cmd_convert(p1, degen); });

  auto* degn = app.add_subcommand("degeneralize", "Remove calling states from an MNWA");
  degn->add_option("automaton", p1)->required();
  degn->callback([&] { result = cmd_degeneralize(p1); });

  auto* prod = app.add_subcommand("product", "Intersection or union of two automata");
  prod->add_option("first", p1)->required();
  prod->add_option("second", p2)->required();
  prod->add_option("--mode", mode)->check(CLI::IsMember({"intersection", "union"}));
  prod->callback([&] { result = cmd_product(p1, p2, mode); });

  auto* sph = app.add_subcommand("spheres", "Spheres of each position (1 if the coloring bound fails)");
  sph->add_option("words", p1)->required();
  sph->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  sph->add_option("--position", position, "1-based position");
  sph->add_flag("--dot", dot);
  sph->add_flag("--coloring", coloring);
  sph->callback([&] { result = cmd_spheres(g, p1, radius, position, dot, coloring); });

  auto* run = app.add_subcommand("sphere-run", "Canonical sphere-automaton run (1 if it fails verification)");
  run->add_option("words", p1)->required();
  run->add_option("--radius", radius)->required()->check(CLI::NonNegativeNumber);
  run->add_flag("--dot", dot);
  run->callback([&] { result = cmd_sphere_run(g, p1, radius, dot); });

  auto* ev = app.add_subcommand("eval", "Evaluate a sentence on each word (0 iff all true)");
  ev->add_option("words", p1)->required();
  ev->add_option("formula", p2)->required();
  ev->callback([&] { result = cmd_eval(g, p1, p2); });

  auto* cc = app.add_subcommand("compile-count", "Compile a sphere-count constraint (1 on disagreement or rejection)");
  cc->add_option("expr", p1)->required();
  cc->add_option("--radius", radius)->check(CLI::NonNegativeNumber);
  cc->add_option("--check-against-corpus", corpus, "Word file or directory of word files");
  cc->add_option("--words", words, "Word file to classify");
  cc->callback([&] { result = cmd_compile_count(g, p1, radius, corpus, words); });

  auto* grid = app.add_subcommand("grid", "Grid encodings");
  grid->require_subcommand(1);
  auto* genc = grid->add_subcommand("encode", "Encode the n x m grid");
  genc->add_option("n", n)->required()->check(CLI::PositiveNumber);
  genc->add_option("m", m)->required()->check(CLI::PositiveNumber);
  genc->add_flag("--dot", dot);
  genc->callback([&] { result = cmd_grid_encode(n, m, dot); });
  auto* gver = grid->add_subcommand("verify", "Check the reduction formulas on the n x m grid");
  gver->add_option("n", n)->required();
  gver->add_option("m", m)->required();
  gver->callback([&] { result = cmd_grid_verify(n, m); });
  auto* gmem = grid->add_subcommand("member", "Decide whether each word encodes a grid");
  gmem->add_option("words", p1)->required();
  gmem->callback([&] { result = cmd_grid_member(p1); });

  auto* circ = app.add_subcommand("circular", "Bounded circularity search for a direction string");
  circ->add_option("directions", p1)->required();
  circ->add_option("--bound", bound)->required();
  circ->add_flag("--fmap", fmap, "Also print the topological image");
  circ->callback([&] { result = cmd_circular(p1, bound, fmap); });

  auto* corp = app.add_subcommand("corpus", "All words of length 1..L in length-lexicographic order");
  corp->add_option("length", length)->required();
  corp->callback([&] { result = cmd_corpus(g, length); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const Error& e) {
    std::cout.flush();
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return result;
}
