#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nw/core.hpp"

namespace nw {

// Core syntax. Conjunction, implication and universal quantifiers are built by
// the helpers below as negated disjunctions and negated existentials.
enum class FormulaKind {
  True,
  False,
  Label,      // label(x) = symbol
  Succ,       // x is the immediate predecessor of y
  Match,      // (x, y) is a matching edge
  Eq,
  In,         // x in X
  Rel,        // any other named relation, for non-word structures
  Not,
  Or,
  Exists,     // first-order
  ExistsSet,  // monadic second-order
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string symbol;             // label symbol or relation name
  std::vector<std::string> vars;  // atom arguments, or the bound variable
  std::vector<FormulaPtr> sub;
};

namespace fo {
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr label(const std::string& x, const std::string& a);
FormulaPtr succ(const std::string& x, const std::string& y);
FormulaPtr match(const std::string& x, const std::string& y);
FormulaPtr eq(const std::string& x, const std::string& y);
FormulaPtr in(const std::string& x, const std::string& set);
FormulaPtr rel(const std::string& name, std::vector<std::string> args);
FormulaPtr neg(FormulaPtr f);
FormulaPtr any(std::vector<FormulaPtr> fs);  // n-ary or; empty is false
FormulaPtr all(std::vector<FormulaPtr> fs);  // n-ary and; empty is true
FormulaPtr implies(FormulaPtr f, FormulaPtr g);
FormulaPtr iff(FormulaPtr f, FormulaPtr g);
FormulaPtr exists(const std::string& x, FormulaPtr f);
FormulaPtr forall(const std::string& x, FormulaPtr f);
FormulaPtr exists_set(const std::string& set, FormulaPtr f);
FormulaPtr forall_set(const std::string& set, FormulaPtr f);
}  // namespace fo

// Prefix s-expressions:
//   true false (label x a) (succ x y) (match x y) (eq x y) (in x X)
//   (not f) (or f...) (and f...) (implies f g) (iff f g)
//   (exists x f) (forall x f) (exists-set X f) (forall-set X f)
//   (R x...) for any other relation name R
FormulaPtr parse_formula(std::string_view text);
std::string to_sexpr(const Formula& f);

bool is_fo(const Formula& f);
bool is_emso(const Formula& f);
std::set<std::string> free_variables(const Formula& f);

// A finite relational structure over the universe 0..size()-1. Word structures
// provide labels, successor and matching; other structures provide named
// relations.
class Structure {
 public:
  virtual ~Structure() = default;
  virtual int size() const = 0;
  // Identifier for a label name, used with has_label.
  virtual int label_id(std::string_view name) const;
  virtual bool has_label(int x, int id) const;
  virtual bool succ(int x, int y) const;
  virtual bool match(int x, int y) const;
  virtual bool relation(std::string_view name, const std::vector<int>& args) const;
};

class WordStructure : public Structure {
 public:
  explicit WordStructure(const NestedWord& w) : w_(&w) {}
  int size() const override { return w_->length(); }
  int label_id(std::string_view name) const override;
  bool has_label(int x, int id) const override { return w_->label(x) == id; }
  bool succ(int x, int y) const override { return y == x + 1; }
  bool match(int x, int y) const override { return w_->return_of(x) == y && y >= 0; }

 private:
  const NestedWord* w_;
};

struct Assignment {
  std::map<std::string, int> positions;  // 0-based
  std::map<std::string, std::vector<int>> sets;
};

struct EvalOptions {
  int set_quantifier_limit = 18;  // largest universe over which sets are enumerated
};

bool eval(const Structure& s, const Formula& f, const Assignment& env = {},
          const EvalOptions& options = {});
bool eval(const NestedWord& w, const Formula& f, const Assignment& env = {},
          const EvalOptions& options = {});

}  // namespace nw
