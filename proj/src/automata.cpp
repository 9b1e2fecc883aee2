#include "nw/automata.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace nw {

namespace {

void check_state(int q, int n, const char* where) {
  if (q < 0 || q >= n)
    fail(ErrorKind::MalformedAutomaton, std::string("state index out of range in ") + where);
}

void check_symbol(const Alphabet& sigma, Symbol a, const char* where) {
  if (a < 0 || a >= sigma.size())
    fail(ErrorKind::MalformedAutomaton, std::string("symbol index out of range in ") + where);
}

void check_sizes(std::size_t states, std::size_t flags, const char* what) {
  if (flags != states)
    fail(ErrorKind::MalformedAutomaton, std::string(what) + " does not cover every state");
}

std::vector<int> flag_digits(int code, int k) {
  std::vector<int> d(k);
  for (int s = 0; s < k; ++s, code /= 3) d[s] = code % 3;
  return d;
}

int flag_code(const std::vector<int>& d) {
  int code = 0;
  for (int s = static_cast<int>(d.size()) - 1; s >= 0; --s) code = code * 3 + d[s];
  return code;
}

std::vector<int> flags_after_linear(const Alphabet& sigma, const std::vector<int>& b, Symbol a,
                                    bool calling_target) {
  std::vector<int> next(b.size());
  for (int s = 0; s < static_cast<int>(b.size()); ++s) {
    if (b[s] == 1 || b[s] == 2)
      next[s] = 2;
    else
      next[s] = (sigma.is_call(a, s) && calling_target) ? 1 : 0;
  }
  return next;
}

std::vector<int> flags_after_return(const std::vector<int>& at_call, const std::vector<int>& b) {
  std::vector<int> next(b.size());
  for (std::size_t s = 0; s < b.size(); ++s) next[s] = at_call[s] == 1 ? 0 : b[s];
  return next;
}

std::string flag_name(const std::vector<int>& d) {
  std::string s;
  for (int x : d) s += static_cast<char>('0' + x);
  return s;
}

std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += '#';
  return base;
}

}  // namespace

void Mvpa::validate() const {
  if (!alphabet) fail(ErrorKind::MalformedAutomaton, "automaton has no alphabet");
  if (gamma.empty()) fail(ErrorKind::MalformedAutomaton, "stack alphabet lacks a bottom marker");
  const int n = size();
  check_sizes(states.size(), initial.size(), "initial");
  check_sizes(states.size(), accepting.size(), "final");
  const int g = static_cast<int>(gamma.size());
  for (const auto& r : delta_call) {
    check_state(r.from, n, "delta_c");
    check_state(r.to, n, "delta_c");
    check_symbol(*alphabet, r.a, "delta_c");
    if (!alphabet->is_call(r.a)) fail(ErrorKind::MalformedAutomaton, "delta_c reads a non-call");
    if (r.push <= 0 || r.push >= g)
      fail(ErrorKind::MalformedAutomaton, "delta_c must push a non-bottom stack symbol");
  }
  for (const auto& r : delta_return) {
    check_state(r.from, n, "delta_r");
    check_state(r.to, n, "delta_r");
    check_symbol(*alphabet, r.a, "delta_r");
    if (!alphabet->is_return(r.a))
      fail(ErrorKind::MalformedAutomaton, "delta_r reads a non-return");
    if (r.pop < 0 || r.pop >= g)
      fail(ErrorKind::MalformedAutomaton, "delta_r stack symbol out of range");
  }
  for (const auto& r : delta_internal) {
    check_state(r.from, n, "delta_int");
    check_state(r.to, n, "delta_int");
    check_symbol(*alphabet, r.a, "delta_int");
    if (!alphabet->is_internal(r.a))
      fail(ErrorKind::MalformedAutomaton, "delta_int reads a non-internal symbol");
  }
}

bool Mnwa::has_calling_states() const {
  return std::find(calling.begin(), calling.end(), true) != calling.end();
}

void Mnwa::validate() const {
  if (!alphabet) fail(ErrorKind::MalformedAutomaton, "automaton has no alphabet");
  const int n = size();
  check_sizes(states.size(), initial.size(), "initial");
  check_sizes(states.size(), accepting.size(), "final");
  check_sizes(states.size(), calling.size(), "calling");
  for (const auto& r : delta_linear) {
    check_state(r.from, n, "delta_1");
    check_state(r.to, n, "delta_1");
    check_symbol(*alphabet, r.a, "delta_1");
  }
  for (const auto& r : delta_return) {
    check_state(r.call, n, "delta_2");
    check_state(r.from, n, "delta_2");
    check_state(r.to, n, "delta_2");
    check_symbol(*alphabet, r.a, "delta_2");
    if (!alphabet->is_return(r.a))
      fail(ErrorKind::MalformedAutomaton, "delta_2 reads a non-return");
  }
}

MvpaSimulator::MvpaSimulator(const Mvpa& a) : a_(&a), sigma_(a.alphabet->size()) {
  a.validate();
  const std::size_t cells = static_cast<std::size_t>(a.size()) * sigma_;
  calls_.resize(cells);
  returns_.resize(cells);
  internals_.resize(cells);
  for (const auto& r : a.delta_call) calls_[r.from * sigma_ + r.a].push_back({r.push, r.to});
  for (const auto& r : a.delta_return) returns_[r.from * sigma_ + r.a].push_back({r.pop, r.to});
  for (const auto& r : a.delta_internal) internals_[r.from * sigma_ + r.a].push_back(r.to);
}

MvpaSimulator::Frontier MvpaSimulator::start() const {
  Frontier f;
  for (State q = 0; q < a_->size(); ++q)
    if (a_->initial[q]) f.push_back({q, std::vector<std::vector<int>>(a_->alphabet->stacks())});
  return f;
}

MvpaSimulator::Frontier MvpaSimulator::step(const Frontier& from, Symbol a) const {
  Frontier next;
  const auto c = a_->alphabet->cls(a);
  for (const auto& conf : from) {
    const std::size_t cell = static_cast<std::size_t>(conf.state) * sigma_ + a;
    switch (c.kind) {
      case SymbolKind::Call:
        for (auto [push, to] : calls_[cell]) {
          Config n{to, conf.stacks};
          n.stacks[c.stack].push_back(push);
          next.push_back(std::move(n));
        }
        break;
      case SymbolKind::Return: {
        const auto& st = conf.stacks[c.stack];
        for (auto [pop, to] : returns_[cell]) {
          if (pop == 0) {
            if (st.empty()) next.push_back({to, conf.stacks});
          } else if (!st.empty() && st.back() == pop) {
            Config n{to, conf.stacks};
            n.stacks[c.stack].pop_back();
            next.push_back(std::move(n));
          }
        }
        break;
      }
      case SymbolKind::Internal:
        for (State to : internals_[cell]) next.push_back({to, conf.stacks});
        break;
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

bool MvpaSimulator::accepting(const Frontier& frontier) const {
  return std::any_of(frontier.begin(), frontier.end(),
                     [&](const Config& c) { return a_->accepting[c.state]; });
}

bool mvpa_accepts(const Mvpa& a, const Word& w) {
  if (w.empty()) fail(ErrorKind::EmptyWord, "the empty word is not a nested word");
  MvpaSimulator sim(a);
  auto f = sim.start();
  for (Symbol x : w) {
    f = sim.step(f, x);
    if (f.empty()) return false;
  }
  return sim.accepting(f);
}

std::optional<std::string> mnwa_run_violation(const Mnwa& b, const NestedWord& w,
                                              const std::vector<State>& run) {
  b.validate();
  if (!b.alphabet->same_as(*w.alphabet()))
    fail(ErrorKind::AlphabetMismatch, "word and automaton use different alphabets");
  const int n = w.length();
  if (static_cast<int>(run.size()) != n)
    fail(ErrorKind::LengthMismatch, "run length differs from word length");
  for (State q : run)
    if (q < 0 || q >= b.size()) return "run uses an unknown state";
  const std::set<Mnwa::LinearRule> lin(b.delta_linear.begin(), b.delta_linear.end());
  const std::set<Mnwa::ReturnRule> ret(b.delta_return.begin(), b.delta_return.end());
  bool first_ok = false;
  for (State q = 0; q < b.size() && !first_ok; ++q)
    first_ok = b.initial[q] && lin.count({q, w.label(0), run[0]});
  if (!first_ok) return "no initial transition into the first state";
  for (int i = 1; i < n; ++i) {
    const int c = w.call_of(i);
    const bool ok = c >= 0 ? ret.count({run[c], run[i - 1], w.label(i), run[i]}) > 0
                           : lin.count({run[i - 1], w.label(i), run[i]}) > 0;
    if (!ok) return "no transition at position " + std::to_string(i + 1);
  }
  if (!b.accepting[run[n - 1]]) return "last state is not final";
  for (int i = 0; i < n; ++i)
    if (b.calling[run[i]] && w.return_of(i) < 0)
      return "calling state at position " + std::to_string(i + 1) + " without a matching return";
  return std::nullopt;
}

Mnwa mvpa_to_mnwa(const Mvpa& a) {
  a.validate();
  const int g = static_cast<int>(a.gamma.size());
  const int n = a.size();
  auto id = [g](State q, int A) { return q * g + A; };
  Mnwa b;
  b.alphabet = a.alphabet;
  for (State q = 0; q < n; ++q)
    for (int A = 0; A < g; ++A) {
      b.states.push_back(a.states[q] + "|" + a.gamma[A]);
      b.initial.push_back(a.initial[q] && A == 0);
      b.accepting.push_back(a.accepting[q]);
      b.calling.push_back(false);
    }
  // The second component remembers the symbol pushed at the last call; a
  // matched return reads it back from the state at its call position.
  for (const auto& r : a.delta_call)
    for (int A = 0; A < g; ++A) b.delta_linear.push_back({id(r.from, A), r.a, id(r.to, r.push)});
  for (const auto& r : a.delta_internal)
    for (int A = 0; A < g; ++A)
      for (int A2 = 0; A2 < g; ++A2) b.delta_linear.push_back({id(r.from, A), r.a, id(r.to, A2)});
  for (const auto& r : a.delta_return) {
    if (r.pop == 0)
      for (int A = 0; A < g; ++A)
        for (int A2 = 0; A2 < g; ++A2)
          b.delta_linear.push_back({id(r.from, A), r.a, id(r.to, A2)});
    for (State p = 0; p < n; ++p)
      for (int A = 0; A < g; ++A)
        for (int A2 = 0; A2 < g; ++A2)
          b.delta_return.push_back({id(p, r.pop), id(r.from, A), r.a, id(r.to, A2)});
  }
  std::sort(b.delta_linear.begin(), b.delta_linear.end());
  b.delta_linear.erase(std::unique(b.delta_linear.begin(), b.delta_linear.end()),
                       b.delta_linear.end());
  std::sort(b.delta_return.begin(), b.delta_return.end());
  b.delta_return.erase(std::unique(b.delta_return.begin(), b.delta_return.end()),
                       b.delta_return.end());
  return b;
}

Mnwa degeneralize(const Mnwa& b) {
  b.validate();
  const auto& sigma = *b.alphabet;
  const int k = sigma.stacks();
  int codes = 1;
  for (int s = 0; s < k; ++s) codes *= 3;
  auto id = [codes](State q, int f) { return q * codes + f; };
  Mnwa d;
  d.alphabet = b.alphabet;
  for (State q = 0; q < b.size(); ++q)
    for (int f = 0; f < codes; ++f) {
      d.states.push_back(b.states[q] + "|" + flag_name(flag_digits(f, k)));
      d.initial.push_back(b.initial[q] && f == 0);
      d.accepting.push_back(b.accepting[q] && f == 0);
      d.calling.push_back(false);
    }
  for (const auto& r : b.delta_linear) {
    // A calling state may only be entered by a call.
    if (b.calling[r.to] && !sigma.is_call(r.a)) continue;
    for (int f = 0; f < codes; ++f) {
      const auto next = flags_after_linear(sigma, flag_digits(f, k), r.a, b.calling[r.to]);
      d.delta_linear.push_back({id(r.from, f), r.a, id(r.to, flag_code(next))});
    }
  }
  for (const auto& r : b.delta_return) {
    if (b.calling[r.to]) continue;
    for (int c = 0; c < codes; ++c) {
      const auto at_call = flag_digits(c, k);
      for (int f = 0; f < codes; ++f) {
        const auto next = flags_after_return(at_call, flag_digits(f, k));
        d.delta_return.push_back({id(r.call, c), id(r.from, f), r.a, id(r.to, flag_code(next))});
      }
    }
  }
  return d;
}

std::vector<std::vector<int>> flag_trace(const Mnwa& b, const NestedWord& w,
                                         const std::vector<State>& run) {
  if (static_cast<int>(run.size()) != w.length())
    fail(ErrorKind::LengthMismatch, "run length differs from word length");
  const auto& sigma = *w.alphabet();
  std::vector<std::vector<int>> trace{std::vector<int>(sigma.stacks(), 0)};
  for (int i = 0; i < w.length(); ++i) {
    const int c = w.call_of(i);
    trace.push_back(c >= 0 ? flags_after_return(trace[c + 1], trace.back())
                           : flags_after_linear(sigma, trace.back(), w.label(i), b.calling[run[i]]));
  }
  return trace;
}

Mvpa mnwa_to_mvpa(const Mnwa& b) {
  b.validate();
  if (b.has_calling_states())
    fail(ErrorKind::CallingStatesPresent, "degeneralize the automaton before converting it");
  Mvpa a;
  a.alphabet = b.alphabet;
  a.states = b.states;
  a.initial = b.initial;
  a.accepting = b.accepting;
  // Stack symbol q+1 records that the call was read into state q.
  a.gamma.push_back(fresh_name("_|_", b.states));
  for (const auto& q : b.states) a.gamma.push_back(q);
  const auto& sigma = *b.alphabet;
  for (const auto& r : b.delta_linear) {
    switch (sigma.cls(r.a).kind) {
      case SymbolKind::Call: a.delta_call.push_back({r.from, r.a, r.to + 1, r.to}); break;
      case SymbolKind::Internal: a.delta_internal.push_back({r.from, r.a, r.to}); break;
      case SymbolKind::Return: a.delta_return.push_back({r.from, r.a, 0, r.to}); break;
    }
  }
  for (const auto& r : b.delta_return) a.delta_return.push_back({r.from, r.a, r.call + 1, r.to});
  std::sort(a.delta_return.begin(), a.delta_return.end());
  a.delta_return.erase(std::unique(a.delta_return.begin(), a.delta_return.end()),
                       a.delta_return.end());
  return a;
}

MnwaAcceptor::MnwaAcceptor(const Mnwa& b)
    : mvpa_(mnwa_to_mvpa(b.has_calling_states() ? degeneralize(b) : b)) {}

bool MnwaAcceptor::accepts(const Word& w) const { return mvpa_accepts(mvpa_, w); }

bool mnwa_accepts(const Mnwa& b, const NestedWord& w) {
  if (!b.alphabet->same_as(*w.alphabet()))
    fail(ErrorKind::AlphabetMismatch, "word and automaton use different alphabets");
  return MnwaAcceptor(b).accepts(w.word());
}

Mnwa product(const Mnwa& b1, const Mnwa& b2, ProductMode mode) {
  b1.validate();
  b2.validate();
  if (!b1.alphabet->same_as(*b2.alphabet))
    fail(ErrorKind::AlphabetMismatch, "product of automata over different alphabets");
  Mnwa p;
  p.alphabet = b1.alphabet;
  if (mode == ProductMode::Union) {
    const int off = b1.size();
    auto add = [&](const Mnwa& b, const std::string& tag, int shift) {
      for (State q = 0; q < b.size(); ++q) {
        p.states.push_back(tag + b.states[q]);
        p.initial.push_back(b.initial[q]);
        p.accepting.push_back(b.accepting[q]);
        p.calling.push_back(b.calling[q]);
      }
      for (const auto& r : b.delta_linear) p.delta_linear.push_back({r.from + shift, r.a, r.to + shift});
      for (const auto& r : b.delta_return)
        p.delta_return.push_back({r.call + shift, r.from + shift, r.a, r.to + shift});
    };
    add(b1, "1:", 0);
    add(b2, "2:", off);
    return p;
  }
  const int n2 = b2.size();
  auto id = [n2](State q1, State q2) { return q1 * n2 + q2; };
  for (State q1 = 0; q1 < b1.size(); ++q1)
    for (State q2 = 0; q2 < n2; ++q2) {
      p.states.push_back(b1.states[q1] + "|" + b2.states[q2]);
      p.initial.push_back(b1.initial[q1] && b2.initial[q2]);
      p.accepting.push_back(b1.accepting[q1] && b2.accepting[q2]);
      p.calling.push_back(b1.calling[q1] || b2.calling[q2]);
    }
  for (const auto& r1 : b1.delta_linear)
    for (const auto& r2 : b2.delta_linear)
      if (r1.a == r2.a) p.delta_linear.push_back({id(r1.from, r2.from), r1.a, id(r1.to, r2.to)});
  for (const auto& r1 : b1.delta_return)
    for (const auto& r2 : b2.delta_return)
      if (r1.a == r2.a)
        p.delta_return.push_back(
            {id(r1.call, r2.call), id(r1.from, r2.from), r1.a, id(r1.to, r2.to)});
  return p;
}

Mvpa example_mvpa() {
  const auto sigma = two_stack_alphabet();
  const Symbol a = sigma->at("a"), ab = sigma->at("a~"), b = sigma->at("b"), bb = sigma->at("b~");
  Mvpa m;
  m.alphabet = sigma;
  m.states = {"q0", "q1", "q2", "q3", "q4"};
  m.gamma = {"_|_", "$"};
  m.initial = {true, false, false, false, false};
  m.accepting = {true, false, false, false, false};
  m.delta_call = {{0, a, 1, 2}, {2, b, 1, 1}, {1, a, 1, 2}, {2, b, 1, 3}};
  m.delta_return = {{3, ab, 1, 3}, {3, ab, 0, 4}, {4, bb, 1, 4}, {4, bb, 0, 0}};
  return m;
}

Mnwa example_mnwa() {
  const auto sigma = two_stack_alphabet();
  const Symbol a = sigma->at("a"), ab = sigma->at("a~"), b = sigma->at("b"), bb = sigma->at("b~");
  Mnwa m;
  m.alphabet = sigma;
  m.states = {"q0", "q1", "q2", "q3", "q4"};
  m.initial = {true, false, false, false, false};
  m.accepting = {true, false, false, false, false};
  m.calling.assign(5, false);
  m.delta_linear = {{0, a, 2}, {2, b, 1}, {1, a, 2}, {2, b, 3}, {3, ab, 4}, {4, bb, 0}};
  m.delta_return = {{2, 3, ab, 3}, {3, 4, bb, 4}, {1, 4, bb, 4}};
  return m;
}

}  // namespace nw
