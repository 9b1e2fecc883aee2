#include "nw/logic.hpp"

#include <cctype>
#include <cstdint>

namespace nw {

namespace fo {

namespace {
FormulaPtr node(FormulaKind k, std::string symbol, std::vector<std::string> vars,
                std::vector<FormulaPtr> sub) {
  return std::make_shared<Formula>(Formula{k, std::move(symbol), std::move(vars), std::move(sub)});
}
}  // namespace

FormulaPtr truth() { return node(FormulaKind::True, "", {}, {}); }
FormulaPtr falsity() { return node(FormulaKind::False, "", {}, {}); }
FormulaPtr label(const std::string& x, const std::string& a) {
  return node(FormulaKind::Label, a, {x}, {});
}
FormulaPtr succ(const std::string& x, const std::string& y) {
  return node(FormulaKind::Succ, "", {x, y}, {});
}
FormulaPtr match(const std::string& x, const std::string& y) {
  return node(FormulaKind::Match, "", {x, y}, {});
}
FormulaPtr eq(const std::string& x, const std::string& y) {
  return node(FormulaKind::Eq, "", {x, y}, {});
}
FormulaPtr in(const std::string& x, const std::string& set) {
  return node(FormulaKind::In, "", {x, set}, {});
}
FormulaPtr rel(const std::string& name, std::vector<std::string> args) {
  return node(FormulaKind::Rel, name, std::move(args), {});
}
FormulaPtr neg(FormulaPtr f) { return node(FormulaKind::Not, "", {}, {std::move(f)}); }
FormulaPtr any(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return falsity();
  if (fs.size() == 1) return fs[0];
  return node(FormulaKind::Or, "", {}, std::move(fs));
}
FormulaPtr all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return truth();
  if (fs.size() == 1) return fs[0];
  for (auto& f : fs) f = neg(f);
  return neg(any(std::move(fs)));
}
FormulaPtr implies(FormulaPtr f, FormulaPtr g) { return any({neg(std::move(f)), std::move(g)}); }
FormulaPtr iff(FormulaPtr f, FormulaPtr g) { return all({implies(f, g), implies(g, f)}); }
FormulaPtr exists(const std::string& x, FormulaPtr f) {
  return node(FormulaKind::Exists, "", {x}, {std::move(f)});
}
FormulaPtr forall(const std::string& x, FormulaPtr f) { return neg(exists(x, neg(std::move(f)))); }
FormulaPtr exists_set(const std::string& set, FormulaPtr f) {
  return node(FormulaKind::ExistsSet, "", {set}, {std::move(f)});
}
FormulaPtr forall_set(const std::string& set, FormulaPtr f) {
  return neg(exists_set(set, neg(std::move(f))));
}

}  // namespace fo

namespace {

struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) error("unexpected end of formula");
    if (text_[pos_] == ')') error("unbalanced ')'");
    SExpr e;
    if (text_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      while (true) {
        skip();
        if (pos_ >= text_.size()) error("missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.list.push_back(read());
      }
      return e;
    }
    const auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')')
      ++pos_;
    e.atom = std::string(text_.substr(start, pos_ - start));
    return e;
  }

  void expect_end() {
    skip();
    if (pos_ != text_.size()) error("trailing input after formula");
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void bad_formula(const std::string& what) { fail(ErrorKind::ParseError, what); }

const std::string& atom_of(const SExpr& e, const char* role) {
  if (e.is_list) bad_formula(std::string("expected ") + role + ", found a list");
  return e.atom;
}

FormulaPtr convert(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "true") return fo::truth();
    if (e.atom == "false") return fo::falsity();
    bad_formula("unexpected atom '" + e.atom + "'");
  }
  if (e.list.empty()) bad_formula("empty list");
  const auto& head = atom_of(e.list[0], "an operator");
  const auto argc = e.list.size() - 1;
  auto arity = [&](std::size_t k) {
    if (argc != k)
      bad_formula("'" + head + "' takes " + std::to_string(k) + " arguments");
  };
  auto var = [&](std::size_t k) { return atom_of(e.list[k], "a variable"); };
  auto subs = [&](std::size_t from) {
    std::vector<FormulaPtr> out;
    for (std::size_t k = from; k < e.list.size(); ++k) out.push_back(convert(e.list[k]));
    return out;
  };
  if (head == "true" || head == "false") {
    arity(0);
    return head == "true" ? fo::truth() : fo::falsity();
  }
  if (head == "label") return arity(2), fo::label(var(1), atom_of(e.list[2], "a symbol"));
  if (head == "succ") return arity(2), fo::succ(var(1), var(2));
  if (head == "match") return arity(2), fo::match(var(1), var(2));
  if (head == "eq" || head == "=") return arity(2), fo::eq(var(1), var(2));
  if (head == "in") return arity(2), fo::in(var(1), var(2));
  if (head == "not") return arity(1), fo::neg(convert(e.list[1]));
  if (head == "or") return fo::any(subs(1));
  if (head == "and") return fo::all(subs(1));
  if (head == "implies") return arity(2), fo::implies(convert(e.list[1]), convert(e.list[2]));
  if (head == "iff") return arity(2), fo::iff(convert(e.list[1]), convert(e.list[2]));
  if (head == "exists") return arity(2), fo::exists(var(1), convert(e.list[2]));
  if (head == "forall") return arity(2), fo::forall(var(1), convert(e.list[2]));
  if (head == "exists-set") return arity(2), fo::exists_set(var(1), convert(e.list[2]));
  if (head == "forall-set") return arity(2), fo::forall_set(var(1), convert(e.list[2]));
  std::vector<std::string> args;
  for (std::size_t k = 1; k < e.list.size(); ++k) args.push_back(var(k));
  return fo::rel(head, std::move(args));
}

void print(const Formula& f, std::string& out) {
  auto args = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& v : f.vars) out += ' ' + v;
  };
  switch (f.kind) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Label: out += "(label " + f.vars[0] + ' ' + f.symbol + ')'; return;
    case FormulaKind::Succ: args("succ"); break;
    case FormulaKind::Match: args("match"); break;
    case FormulaKind::Eq: args("eq"); break;
    case FormulaKind::In: args("in"); break;
    case FormulaKind::Rel: args(f.symbol.c_str()); break;
    case FormulaKind::Not: out += "(not"; break;
    case FormulaKind::Or: out += "(or"; break;
    case FormulaKind::Exists: args("exists"); break;
    case FormulaKind::ExistsSet: args("exists-set"); break;
  }
  for (const auto& s : f.sub) {
    out += ' ';
    print(*s, out);
  }
  out += ')';
}

bool has_set_quantifier(const Formula& f) {
  if (f.kind == FormulaKind::ExistsSet || f.kind == FormulaKind::In) return true;
  for (const auto& s : f.sub)
    if (has_set_quantifier(*s)) return true;
  return false;
}

bool has_exists_set(const Formula& f) {
  if (f.kind == FormulaKind::ExistsSet) return true;
  for (const auto& s : f.sub)
    if (has_exists_set(*s)) return true;
  return false;
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  auto is_bound = [&](const std::string& v) {
    for (const auto& b : bound)
      if (b == v) return true;
    return false;
  };
  switch (f.kind) {
    case FormulaKind::Exists:
    case FormulaKind::ExistsSet:
      bound.push_back(f.vars[0]);
      collect_free(*f.sub[0], bound, out);
      bound.pop_back();
      return;
    case FormulaKind::Label:
      if (!is_bound(f.vars[0])) out.insert(f.vars[0]);
      return;
    default:
      for (const auto& v : f.vars)
        if (!is_bound(v)) out.insert(v);
      for (const auto& s : f.sub) collect_free(*s, bound, out);
  }
}

// Formulas are compiled once per evaluation: variables become slots and label
// names are resolved against the structure.
class Evaluator {
 public:
  Evaluator(const Structure& s, const EvalOptions& options) : s_(s), options_(options) {}

  bool run(const Formula& f, const Assignment& env) {
    const int n = s_.size();
    for (const auto& [name, value] : env.positions) {
      if (value < 0 || value >= n)
        fail(ErrorKind::PositionOutOfRange, "assignment to '" + name + "' is out of range");
      scope_.push_back({name, false, static_cast<int>(fo_.size())});
      fo_.push_back(value);
    }
    for (const auto& [name, members] : env.sets) {
      if (n > 63) fail(ErrorKind::WordTooLargeForSO, "set variables need at most 63 positions");
      std::uint64_t mask = 0;
      for (int v : members) {
        if (v < 0 || v >= n)
          fail(ErrorKind::PositionOutOfRange, "member of '" + name + "' is out of range");
        mask |= std::uint64_t{1} << v;
      }
      scope_.push_back({name, true, static_cast<int>(so_.size())});
      so_.push_back(mask);
    }
    const int root = compile(f);
    return eval(root);
  }

 private:
  struct Node {
    FormulaKind kind = FormulaKind::True;
    int x = -1, y = -1;  // slots
    int label = -1;
    std::string name;
    std::vector<int> args;
    std::vector<int> kids;
  };
  struct Binding {
    std::string name;
    bool set;
    int slot;
  };

  int lookup(const std::string& name, bool set) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->name != name) continue;
      if (it->set != set)
        fail(ErrorKind::InvalidFormula,
             "variable '" + name + "' used as " + (set ? "a set" : "a position"));
      return it->slot;
    }
    fail(ErrorKind::UnboundVariable, "variable '" + name + "' is not bound");
  }

  int compile(const Formula& f) {
    Node n;
    n.kind = f.kind;
    switch (f.kind) {
      case FormulaKind::True:
      case FormulaKind::False:
        break;
      case FormulaKind::Label:
        n.x = lookup(f.vars[0], false);
        n.label = s_.label_id(f.symbol);
        break;
      case FormulaKind::Succ:
      case FormulaKind::Match:
      case FormulaKind::Eq:
        n.x = lookup(f.vars[0], false);
        n.y = lookup(f.vars[1], false);
        break;
      case FormulaKind::In:
        n.x = lookup(f.vars[0], false);
        n.y = lookup(f.vars[1], true);
        break;
      case FormulaKind::Rel:
        n.name = f.symbol;
        for (const auto& v : f.vars) n.args.push_back(lookup(v, false));
        break;
      case FormulaKind::Not:
      case FormulaKind::Or:
        for (const auto& s : f.sub) n.kids.push_back(compile(*s));
        break;
      case FormulaKind::Exists:
      case FormulaKind::ExistsSet: {
        const bool set = f.kind == FormulaKind::ExistsSet;
        n.x = static_cast<int>(set ? so_.size() : fo_.size());
        if (set)
          so_.push_back(0);
        else
          fo_.push_back(0);
        scope_.push_back({f.vars[0], set, n.x});
        n.kids.push_back(compile(*f.sub[0]));
        scope_.pop_back();
        break;
      }
    }
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  bool eval(int k) {
    const Node& n = nodes_[k];
    const int size = s_.size();
    switch (n.kind) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Label: return s_.has_label(fo_[n.x], n.label);
      case FormulaKind::Succ: return s_.succ(fo_[n.x], fo_[n.y]);
      case FormulaKind::Match: return s_.match(fo_[n.x], fo_[n.y]);
      case FormulaKind::Eq: return fo_[n.x] == fo_[n.y];
      case FormulaKind::In: return (so_[n.y] >> fo_[n.x]) & 1;
      case FormulaKind::Rel: {
        std::vector<int> values;
        values.reserve(n.args.size());
        for (int a : n.args) values.push_back(fo_[a]);
        return s_.relation(n.name, values);
      }
      case FormulaKind::Not: return !eval(n.kids[0]);
      case FormulaKind::Or:
        for (int c : n.kids)
          if (eval(c)) return true;
        return false;
      case FormulaKind::Exists:
        for (int v = 0; v < size; ++v) {
          fo_[n.x] = v;
          if (eval(n.kids[0])) return true;
        }
        return false;
      case FormulaKind::ExistsSet: {
        if (size > options_.set_quantifier_limit || size > 63)
          fail(ErrorKind::WordTooLargeForSO,
               "set quantification over " + std::to_string(size) + " positions exceeds the limit of " +
                   std::to_string(options_.set_quantifier_limit));
        const std::uint64_t end = std::uint64_t{1} << size;
        for (std::uint64_t m = 0; m < end; ++m) {
          so_[n.x] = m;
          if (eval(n.kids[0])) return true;
        }
        return false;
      }
    }
    return false;
  }

  const Structure& s_;
  EvalOptions options_;
  std::vector<Node> nodes_;
  std::vector<Binding> scope_;
  std::vector<int> fo_;
  std::vector<std::uint64_t> so_;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
  Reader r(text);
  auto e = r.read();
  r.expect_end();
  return convert(e);
}

std::string to_sexpr(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

bool is_fo(const Formula& f) { return !has_set_quantifier(f); }

bool is_emso(const Formula& f) {
  const Formula* g = &f;
  while (g->kind == FormulaKind::ExistsSet) g = g->sub[0].get();
  return !has_exists_set(*g);
}

std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(f, bound, out);
  return out;
}

int Structure::label_id(std::string_view name) const {
  fail(ErrorKind::Unsupported, "structure has no label '" + std::string(name) + "'");
}
bool Structure::has_label(int, int) const {
  fail(ErrorKind::Unsupported, "structure has no labels");
}
bool Structure::succ(int, int) const {
  fail(ErrorKind::Unsupported, "structure has no successor relation");
}
bool Structure::match(int, int) const {
  fail(ErrorKind::Unsupported, "structure has no matching relation");
}
bool Structure::relation(std::string_view name, const std::vector<int>&) const {
  fail(ErrorKind::Unsupported, "structure has no relation '" + std::string(name) + "'");
}

int WordStructure::label_id(std::string_view name) const { return w_->alphabet()->at(name); }

bool eval(const Structure& s, const Formula& f, const Assignment& env, const EvalOptions& options) {
  Evaluator e(s, options);
  return e.run(f, env);
}

bool eval(const NestedWord& w, const Formula& f, const Assignment& env, const EvalOptions& options) {
  return eval(WordStructure(w), f, env, options);
}

}  // namespace nw
