#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nw/core.hpp"

namespace nw {

using State = int;

// Multi-stack visibly pushdown automaton. Stack symbol 0 is the bottom marker:
// calls never push it, and a return reading it only fires on an empty stack.
struct Mvpa {
  struct CallRule {
    State from;
    Symbol a;
    int push;
    State to;
    auto operator<=>(const CallRule&) const = default;
  };
  struct ReturnRule {
    State from;
    Symbol a;
    int pop;
    State to;
    auto operator<=>(const ReturnRule&) const = default;
  };
  struct InternalRule {
    State from;
    Symbol a;
    State to;
    auto operator<=>(const InternalRule&) const = default;
  };

  AlphabetPtr alphabet;
  std::vector<std::string> states;
  std::vector<std::string> gamma;  // gamma[0] is the bottom marker
  std::vector<bool> initial;
  std::vector<bool> accepting;
  std::vector<CallRule> delta_call;
  std::vector<ReturnRule> delta_return;
  std::vector<InternalRule> delta_internal;

  int size() const { return static_cast<int>(states.size()); }
  void validate() const;  // throws MalformedAutomaton
};

// Multi-stack nested word automaton in the generalized form: a run may end
// only if every position carrying a calling state is a matched call.
struct Mnwa {
  struct LinearRule {
    State from;
    Symbol a;
    State to;
    auto operator<=>(const LinearRule&) const = default;
  };
  struct ReturnRule {
    State call;  // state at the matching call position
    State from;  // state at the previous position
    Symbol a;
    State to;
    auto operator<=>(const ReturnRule&) const = default;
  };

  AlphabetPtr alphabet;
  std::vector<std::string> states;
  std::vector<bool> initial;
  std::vector<bool> accepting;
  std::vector<bool> calling;
  std::vector<LinearRule> delta_linear;
  std::vector<ReturnRule> delta_return;

  int size() const { return static_cast<int>(states.size()); }
  bool has_calling_states() const;
  void validate() const;  // throws MalformedAutomaton
};

// Breadth-first simulation over sets of configurations. Exposed so that
// exhaustive enumerators can share work between words with common prefixes.
class MvpaSimulator {
 public:
  struct Config {
    State state;
    std::vector<std::vector<int>> stacks;
    auto operator<=>(const Config&) const = default;
  };
  using Frontier = std::vector<Config>;  // sorted, duplicate free

  explicit MvpaSimulator(const Mvpa& a);

  // Pseudo-configurations in the initial states with empty stacks. The empty
  // word is never accepted, so accepting() on this frontier is false.
  Frontier start() const;
  Frontier step(const Frontier& from, Symbol a) const;
  bool accepting(const Frontier& frontier) const;

 private:
  const Mvpa* a_;
  int sigma_;
  std::vector<std::vector<std::pair<int, State>>> calls_;    // (push, to)
  std::vector<std::vector<std::pair<int, State>>> returns_;  // (pop, to)
  std::vector<std::vector<State>> internals_;
};

bool mvpa_accepts(const Mvpa& a, const Word& w);

std::optional<std::string> mnwa_run_violation(const Mnwa& b, const NestedWord& w,
                                              const std::vector<State>& run);
inline bool mnwa_run_check(const Mnwa& b, const NestedWord& w, const std::vector<State>& run) {
  return !mnwa_run_violation(b, w, run);
}

Mnwa mvpa_to_mnwa(const Mvpa& a);
Mnwa degeneralize(const Mnwa& b);
Mvpa mnwa_to_mvpa(const Mnwa& b);  // throws CallingStatesPresent

// Decides membership through degeneralization and the MVPA simulator. The
// converted automaton is built once per acceptor.
class MnwaAcceptor {
 public:
  explicit MnwaAcceptor(const Mnwa& b);
  bool accepts(const Word& w) const;
  const Mvpa& mvpa() const { return mvpa_; }

 private:
  Mvpa mvpa_;
};

bool mnwa_accepts(const Mnwa& b, const NestedWord& w);

// Flag vectors attached to a run by the degeneralization, one per position
// preceded by the all-zero initial vector.
std::vector<std::vector<int>> flag_trace(const Mnwa& b, const NestedWord& w,
                                         const std::vector<State>& run);

enum class ProductMode { Intersection, Union };
Mnwa product(const Mnwa& b1, const Mnwa& b2, ProductMode mode);

// Running examples over two_stack_alphabet(); both recognize L+ for
// L = { (a b)^n a~^(n+1) b~^(n+1) : n >= 1 }.
Mvpa example_mvpa();
Mnwa example_mnwa();

}  // namespace nw
