#include "nw/grids.hpp"

#include <sstream>

namespace nw {

namespace {

// Roles in two_stack_alphabet().
enum Tok { A = 0, ABAR = 1, B = 2, BBAR = 3 };

const char* const kLabelNames[4] = {"a", "a~", "b", "b~"};

std::vector<int> roles(const NestedWord& w) {
  if (!w.alphabet()->same_as(*two_stack_alphabet()))
    fail(ErrorKind::AlphabetMismatch, "grid encodings live over the alphabet a a~ b b~");
  return std::vector<int>(w.word().begin(), w.word().end());
}

std::string node_name(const GridStructure& g, int u) {
  return "(" + std::to_string(g.row(u)) + "," + std::to_string(g.column(u)) + ")";
}

}  // namespace

GridStructure::GridStructure(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) fail(ErrorKind::InvalidArgument, "grid dimensions must be positive");
}

bool GridStructure::relation(std::string_view name, const std::vector<int>& args) const {
  auto arity = [&](std::size_t k) {
    if (args.size() != k)
      fail(ErrorKind::InvalidFormula, "relation '" + std::string(name) + "' has the wrong arity");
  };
  if (name == "Pa" || name == "Pb") {
    arity(1);
    return (column(args[0]) % 2 == 1) == (name == "Pa");
  }
  if (name == "succ1") {
    arity(2);
    return column(args[0]) == column(args[1]) && row(args[1]) == row(args[0]) + 1;
  }
  if (name == "succ2") {
    arity(2);
    return row(args[0]) == row(args[1]) && column(args[1]) == column(args[0]) + 1;
  }
  return Structure::relation(name, args);
}

int GridEncoding::chibar(int copy, int u) const {
  const int p = chi.at(u);
  if (copy == 1) return p;
  const int q = word.return_of(p);
  if (copy != 2 || q < 0) fail(ErrorKind::InvalidArgument, "no such copy of a grid node");
  return q;
}

GridEncoding encode(int n, int m) {
  if (n < 1 || m < 1) fail(ErrorKind::InvalidArgument, "grid dimensions must be positive");
  Word w;
  auto repeat = [&](std::initializer_list<int> block, int times) {
    for (int t = 0; t < times; ++t) w.insert(w.end(), block.begin(), block.end());
  };
  repeat({A}, n);
  const int brackets = m % 2 == 1 ? (m - 1) / 2 : m / 2 - 1;
  for (int k = 0; k < brackets; ++k) {
    repeat({ABAR, B}, n);
    repeat({BBAR, A}, n);
  }
  if (m % 2 == 1) {
    repeat({ABAR}, n);
  } else {
    repeat({ABAR, B}, n);
    repeat({BBAR}, n);
  }
  std::vector<int> pos_a, pos_b;
  for (int p = 0; p < static_cast<int>(w.size()); ++p) {
    if (w[p] == A) pos_a.push_back(p);
    if (w[p] == B) pos_b.push_back(p);
  }
  GridEncoding e{n, m, nested(two_stack_alphabet(), std::move(w)), {}};
  GridStructure g(n, m);
  e.chi.assign(n * m, -1);
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= n; ++i) {
      e.chi[g.node(i, j)] = j % 2 == 1 ? pos_a.at(n * ((j + 1) / 2 - 1) + i - 1)
                                       : pos_b.at(n * (j / 2 - 1) + (n + 1 - i) - 1);
    }
  return e;
}

ReductionFormulas reduction_formulas() {
  ReductionFormulas f;
  f.copies = parse_formula("(match x1 x2)");
  const auto no = fo::falsity();
  f.label = {{parse_formula("(Pa x1)"), no},
             {no, parse_formula("(Pa x1)")},
             {parse_formula("(Pb x1)"), no},
             {no, parse_formula("(Pb x1)")}};
  f.succ[0][0] = parse_formula("(and (succ1 x1 x2) (not (exists z (succ2 z x1))))");
  f.succ[1][1] = parse_formula(
      "(or (and (Pa x1) (succ1 x2 x1) (not (exists z (succ2 x1 z))))"
      "    (and (Pb x1) (succ1 x1 x2) (not (exists z (succ2 x1 z)))))");
  // A copy-1 a at (i,j), j > 1, is followed by the copy-2 b~ of (i+1,j-1).
  f.succ[0][1] = parse_formula(
      "(or (and (eq x1 x2) (Pa x1) (not (exists z (succ1 x1 z))))"
      "    (and (eq x1 x2) (Pb x1) (not (exists z (succ1 z x1))))"
      "    (and (Pa x1) (Pb x2) (exists z (and (succ1 x1 z) (succ2 x2 z))))"
      "    (and (Pb x1) (Pa x2) (exists z (and (succ1 z x1) (succ2 x2 z)))))");
  f.succ[1][0] = parse_formula(
      "(or (and (Pa x1) (Pb x2) (succ2 x1 x2)) (and (Pb x1) (Pa x2) (succ2 x1 x2)))");
  f.match[0][0] = no;
  f.match[0][1] = parse_formula("(eq x1 x2)");
  f.match[1][0] = no;
  f.match[1][1] = no;
  f.pa = parse_formula("(label x1 a)");
  f.pb = parse_formula("(label x1 b)");
  // The a's of column 1 are adjacent, later odd columns interleave b~; the
  // two-step case must not jump over an a.
  f.succ1 = parse_formula(
      "(or (and (label x1 a) (label x2 a) (or (succ x1 x2) (exists z (and (succ x1 z) (succ z x2) (not (label z a))))))"
      "    (and (label x1 b) (label x2 b) (exists z (and (succ x2 z) (succ z x1)))))");
  f.succ2 = parse_formula("(exists z (and (match x1 z) (succ z x2)))");
  return f;
}

ReductionReport verify_reduction(int n, int m) { return verify_reduction(n, m, reduction_formulas()); }

ReductionReport verify_reduction(int n, int m, const ReductionFormulas& f) {
  if (n < 1 || m < 1 || n > 8 || m > 8)
    fail(ErrorKind::BoundsExceeded, "grid dimensions must lie in 1..8");
  const auto e = encode(n, m);
  const GridStructure g(n, m);
  const WordStructure ws(e.word);
  const int size = n * m;
  ReductionReport report;
  auto failed = [&](std::string what) {
    report.ok = false;
    report.failure = std::move(what);
    return report;
  };
  auto one = [](int u) { return Assignment{{{"x1", u}}, {}}; };
  auto two = [](int u, int v) { return Assignment{{{"x1", u}, {"x2", v}}, {}}; };

  // The two copies of the grid exactly cover the word.
  std::vector<int> seen(e.word.length(), 0);
  for (int k = 1; k <= 2; ++k)
    for (int u = 0; u < size; ++u) ++seen[e.chibar(k, u)];
  for (int p = 0; p < e.word.length(); ++p)
    if (seen[p] != 1) return failed("position " + std::to_string(p + 1) + " is not covered exactly once");

  for (int k1 = 1; k1 <= 2; ++k1)
    for (int k2 = 1; k2 <= 2; ++k2)
      for (int u1 = 0; u1 < size; ++u1)
        for (int u2 = 0; u2 < size; ++u2) {
          ++report.checked;
          const bool lhs = eval(ws, *f.copies, two(e.chibar(k1, u1), e.chibar(k2, u2)));
          const bool rhs = k1 == 1 && k2 == 2 && u1 == u2;
          if (lhs != rhs)
            return failed("copies: k=(" + std::to_string(k1) + "," + std::to_string(k2) +
                          ") u1=" + node_name(g, u1) + " u2=" + node_name(g, u2));
        }

  const auto sigma = two_stack_alphabet();
  for (int c = 0; c < 4; ++c)
    for (int k = 1; k <= 2; ++k)
      for (int u = 0; u < size; ++u) {
        ++report.checked;
        const bool lhs = eval(g, *f.label[c][k - 1], one(u));
        const bool rhs = e.word.label(e.chibar(k, u)) == sigma->at(kLabelNames[c]);
        if (lhs != rhs)
          return failed(std::string("label ") + kLabelNames[c] + ": k=" + std::to_string(k) +
                        " u=" + node_name(g, u));
      }

  for (int k1 = 1; k1 <= 2; ++k1)
    for (int k2 = 1; k2 <= 2; ++k2)
      for (int u1 = 0; u1 < size; ++u1)
        for (int u2 = 0; u2 < size; ++u2) {
          const int p1 = e.chibar(k1, u1), p2 = e.chibar(k2, u2);
          const std::string where = "k=(" + std::to_string(k1) + "," + std::to_string(k2) +
                                    ") u1=" + node_name(g, u1) + " u2=" + node_name(g, u2);
          report.checked += 2;
          if (eval(g, *f.succ[k1 - 1][k2 - 1], two(u1, u2)) != ws.succ(p1, p2))
            return failed("successor: " + where);
          if (eval(g, *f.match[k1 - 1][k2 - 1], two(u1, u2)) != ws.match(p1, p2))
            return failed("matching: " + where);
        }

  for (int u1 = 0; u1 < size; ++u1) {
    report.checked += 2;
    if (eval(ws, *f.pa, one(e.chibar(1, u1))) != g.relation("Pa", {u1}))
      return failed("Pa: u=" + node_name(g, u1));
    if (eval(ws, *f.pb, one(e.chibar(1, u1))) != g.relation("Pb", {u1}))
      return failed("Pb: u=" + node_name(g, u1));
    for (int u2 = 0; u2 < size; ++u2) {
      report.checked += 2;
      const auto env = two(e.chibar(1, u1), e.chibar(1, u2));
      if (eval(ws, *f.succ1, env) != g.relation("succ1", {u1, u2}))
        return failed("succ1: u1=" + node_name(g, u1) + " u2=" + node_name(g, u2));
      if (eval(ws, *f.succ2, env) != g.relation("succ2", {u1, u2}))
        return failed("succ2: u1=" + node_name(g, u1) + " u2=" + node_name(g, u2));
    }
  }
  return report;
}

bool image_shape(const NestedWord& w) {
  const auto t = roles(w);
  const std::size_t n = t.size();
  std::size_t i = 0;
  auto run_of = [&](int tok) {
    std::size_t k = 0;
    while (i < n && t[i] == tok) ++i, ++k;
    return k;
  };
  auto pairs_of = [&](int first, int second) {
    std::size_t k = 0;
    while (i + 1 < n && t[i] == first && t[i + 1] == second) i += 2, ++k;
    return k;
  };
  if (run_of(A) == 0) return false;
  while (true) {
    if (i == n) return false;
    // Final a~ run.
    if (t[i] == ABAR && (i + 1 == n || t[i + 1] == ABAR)) {
      run_of(ABAR);
      return i == n;
    }
    if (pairs_of(ABAR, B) == 0) return false;
    if (i == n || t[i] != BBAR) return false;
    // Final b~ run, or a (b~ a)+ block followed by another round.
    if (i + 1 == n || t[i + 1] == BBAR) {
      run_of(BBAR);
      return i == n;
    }
    if (pairs_of(BBAR, A) == 0) return false;
  }
}

bool image_total_matching(const NestedWord& w) {
  roles(w);
  for (int p = 0; p < w.length(); ++p)
    if (w.return_of(p) < 0 && w.call_of(p) < 0) return false;
  return true;
}

bool image_offsets(const NestedWord& w) {
  const auto t = roles(w);
  const int n = w.length();
  auto in12 = [](int d) { return d == 1 || d == 2; };
  for (int x1 = 0; x1 < n; ++x1) {
    const int y1 = w.return_of(x1);
    if (y1 < 0) continue;
    for (int x2 = 0; x2 < n; ++x2) {
      const int y2 = w.return_of(x2);
      if (y2 < 0 || t[x1] != t[x2]) continue;
      const int dx = x2 - x1, dy = y1 - y2;
      if (t[x1] == A && dx == 1 && !in12(dy)) return false;
      if (t[y1] == ABAR && dy == 1 && !in12(dx)) return false;
      if (t[y1] == BBAR && dy == 1 && dx != 2) return false;
      if (dx == 2 && t[x1 + 1] != t[x1] && !in12(dy)) return false;
      if (dy == 2 && t[y2 + 1] != t[y2] && !in12(dx)) return false;
    }
  }
  return true;
}

bool image_membership(const NestedWord& w) {
  return image_shape(w) && image_total_matching(w) && image_offsets(w);
}

FormulaPtr image_offsets_formula() {
  using namespace fo;
  auto diff1 = [](const std::string& x, const std::string& y) { return succ(x, y); };
  auto diff2 = [](const std::string& x, const std::string& y) {
    return exists("z", all({succ(x, "z"), succ("z", y)}));
  };
  auto diff12 = [&](const std::string& x, const std::string& y) {
    return any({diff1(x, y), diff2(x, y)});
  };
  auto same_label = [](const std::string& x, const std::string& y) {
    std::vector<FormulaPtr> cases;
    for (const char* c : kLabelNames) cases.push_back(all({label(x, c), label(y, c)}));
    return any(std::move(cases));
  };
  auto next_differs = [&](const std::string& x) {
    return exists("z", all({succ(x, "z"), neg(same_label("z", x))}));
  };
  auto body = all({
      implies(all({label("x1", "a"), diff1("x1", "x2")}), diff12("y2", "y1")),
      implies(all({label("y1", "a~"), diff1("y2", "y1")}), diff12("x1", "x2")),
      implies(all({label("y1", "b~"), diff1("y2", "y1")}), diff2("x1", "x2")),
      implies(all({diff2("x1", "x2"), next_differs("x1")}), diff12("y2", "y1")),
      implies(all({diff2("y2", "y1"), next_differs("y2")}), diff12("x1", "x2")),
  });
  auto guard = all({same_label("x1", "x2"), match("x1", "y1"), match("x2", "y2")});
  return forall("x1", forall("x2", forall("y1", forall("y2", implies(guard, body)))));
}

std::string to_dot(const GridEncoding& e) {
  const GridStructure g(e.n, e.m);
  std::vector<std::string> tag(e.word.length());
  for (int k = 1; k <= 2; ++k)
    for (int u = 0; u < e.n * e.m; ++u)
      tag[e.chibar(k, u)] = std::to_string(k) + node_name(g, u);
  std::ostringstream out;
  out << "digraph grid_word {\n  rankdir=LR;\n";
  for (int p = 0; p < e.word.length(); ++p)
    out << "  n" << p + 1 << " [label=\"" << p + 1 << ":" << kLabelNames[e.word.label(p)]
        << "\\n" << tag[p] << "\"];\n";
  for (int p = 0; p + 1 < e.word.length(); ++p) out << "  n" << p + 1 << " -> n" << p + 2 << ";\n";
  for (const auto& m : e.word.matching())
    out << "  n" << m.call + 1 << " -> n" << m.ret + 1 << " [style=dashed, label=\""
        << m.stack + 1 << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace nw
