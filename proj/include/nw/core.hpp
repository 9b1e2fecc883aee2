#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nw/error.hpp"

namespace nw {

// Symbols are dense indices into an Alphabet, in declaration order: for each
// stack its calls then its returns, then the internal symbols.
using Symbol = int;
using Word = std::vector<Symbol>;

enum class SymbolKind : std::uint8_t { Call, Return, Internal };

struct SymbolClass {
  SymbolKind kind;
  int stack;  // 0-based; -1 for internal symbols
};

struct StackSymbols {
  std::vector<std::string> calls;
  std::vector<std::string> returns;
};

struct AlphabetSpec {
  std::vector<StackSymbols> stacks;
  std::vector<std::string> internal;
};

class Alphabet;
using AlphabetPtr = std::shared_ptr<const Alphabet>;

// Present on alphabets built by expand_alphabet: symbol k stands for the pair
// (origin[k].first, origin[k].second) of a base symbol and a mark set.
struct Expansion {
  AlphabetPtr base;
  int marks = 0;
  std::vector<std::pair<Symbol, unsigned>> origin;
};

class Alphabet {
 public:
  // Throws DuplicateSymbol if any name occurs twice, EmptyAlphabet if there is
  // no stack.
  static AlphabetPtr make(const AlphabetSpec& spec);
  static AlphabetPtr make_expanded(const AlphabetSpec& spec, Expansion expansion);

  int stacks() const { return static_cast<int>(spec_.stacks.size()); }
  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(Symbol a) const { return names_.at(a); }
  SymbolClass cls(Symbol a) const { return classes_.at(a); }
  bool is_call(Symbol a) const { return classes_.at(a).kind == SymbolKind::Call; }
  bool is_return(Symbol a) const { return classes_.at(a).kind == SymbolKind::Return; }
  bool is_internal(Symbol a) const { return classes_.at(a).kind == SymbolKind::Internal; }
  bool is_call(Symbol a, int stack) const {
    return is_call(a) && classes_[a].stack == stack;
  }
  bool is_return(Symbol a, int stack) const {
    return is_return(a) && classes_[a].stack == stack;
  }

  std::optional<Symbol> find(std::string_view name) const;
  Symbol at(std::string_view name) const;  // throws UnknownSymbol

  const AlphabetSpec& spec() const { return spec_; }
  const Expansion* expansion() const { return expansion_ ? &*expansion_ : nullptr; }

  // Same stacks, same symbols per role, same order.
  bool same_as(const Alphabet& other) const;

 private:
  Alphabet() = default;

  AlphabetSpec spec_;
  std::vector<std::string> names_;
  std::vector<SymbolClass> classes_;
  std::unordered_map<std::string, Symbol> index_;
  std::optional<Expansion> expansion_;
};

// Two stacks with one call and one return each and no internal symbols:
// a / a~ on the first stack, b / b~ on the second.
AlphabetPtr two_stack_alphabet();

Word parse_word(const Alphabet& alphabet, std::string_view text);
std::string format_word(const Alphabet& alphabet, const Word& word);

// The projection of w onto the calls and returns of `stack` is balanced.
bool is_well_formed(const Alphabet& alphabet, int stack, const Word& word);

struct MatchEdge {
  int call;
  int ret;
  int stack;
  bool operator==(const MatchEdge&) const = default;
  auto operator<=>(const MatchEdge&) const = default;
};

// Positions are 0-based in memory and 1-based whenever printed or serialized.
class NestedWord {
 public:
  int length() const { return static_cast<int>(word_.size()); }
  Symbol label(int i) const { return word_.at(i); }
  const Word& word() const { return word_; }
  const AlphabetPtr& alphabet() const { return alphabet_; }

  int return_of(int i) const { return ret_.at(i); }  // -1 if undefined
  int call_of(int j) const { return call_.at(j); }   // -1 if undefined

  // Sorted by call position.
  std::vector<MatchEdge> matching() const;
  std::vector<int> pending_calls() const;
  std::vector<int> pending_returns() const;

 private:
  friend NestedWord nested(AlphabetPtr alphabet, Word word);

  AlphabetPtr alphabet_;
  Word word_;
  std::vector<int> ret_;
  std::vector<int> call_;
};

// Throws EmptyWord on the empty word.
NestedWord nested(AlphabetPtr alphabet, Word word);
inline const Word& string_of(const NestedWord& w) { return w.word(); }

// Shortest path length in the undirected graph of successor and matching edges.
int distance(const NestedWord& w, int i, int j);
// Distances from i to every position; positions farther than `limit` get -1
// when limit >= 0.
std::vector<int> distances_from(const NestedWord& w, int i, int limit = -1);

std::string to_dot(const NestedWord& w);

// Calls f on every word of length 1..max_length in length-lexicographic order
// (symbol order is declaration order).
void for_each_word(const Alphabet& alphabet, int max_length,
                   const std::function<void(const Word&)>& f);

}  // namespace nw
