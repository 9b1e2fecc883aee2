#include "nw/core.hpp"

#include <deque>
#include <sstream>

namespace nw {

AlphabetPtr Alphabet::make(const AlphabetSpec& spec) {
  return make_expanded(spec, Expansion{});
}

AlphabetPtr Alphabet::make_expanded(const AlphabetSpec& spec, Expansion expansion) {
  if (spec.stacks.empty()) fail(ErrorKind::EmptyAlphabet, "alphabet has no stack");
  auto a = std::shared_ptr<Alphabet>(new Alphabet());
  a->spec_ = spec;
  auto add = [&](const std::string& name, SymbolClass c) {
    if (name.empty()) fail(ErrorKind::ParseError, "empty symbol name");
    if (!a->index_.emplace(name, a->size()).second)
      fail(ErrorKind::DuplicateSymbol, "symbol '" + name + "' declared twice");
    a->names_.push_back(name);
    a->classes_.push_back(c);
  };
  for (int s = 0; s < a->stacks(); ++s) {
    for (const auto& c : spec.stacks[s].calls) add(c, {SymbolKind::Call, s});
    for (const auto& r : spec.stacks[s].returns) add(r, {SymbolKind::Return, s});
  }
  for (const auto& c : spec.internal) add(c, {SymbolKind::Internal, -1});
  if (expansion.base) a->expansion_ = std::move(expansion);
  return a;
}

std::optional<Symbol> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::at(std::string_view name) const {
  if (auto s = find(name)) return *s;
  fail(ErrorKind::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
}

bool Alphabet::same_as(const Alphabet& other) const {
  if (this == &other) return true;
  if (spec_.internal != other.spec_.internal) return false;
  if (spec_.stacks.size() != other.spec_.stacks.size()) return false;
  for (std::size_t s = 0; s < spec_.stacks.size(); ++s) {
    if (spec_.stacks[s].calls != other.spec_.stacks[s].calls) return false;
    if (spec_.stacks[s].returns != other.spec_.stacks[s].returns) return false;
  }
  return true;
}

AlphabetPtr two_stack_alphabet() {
  static const AlphabetPtr sigma = Alphabet::make({{{{"a"}, {"a~"}}, {{"b"}, {"b~"}}}, {}});
  return sigma;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) w.push_back(alphabet.at(tok));
  return w;
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.name(word[i]);
  }
  return out;
}

bool is_well_formed(const Alphabet& alphabet, int stack, const Word& word) {
  int depth = 0;
  for (Symbol a : word) {
    if (alphabet.is_call(a, stack)) {
      ++depth;
    } else if (alphabet.is_return(a, stack)) {
      if (--depth < 0) return false;
    }
  }
  return depth == 0;
}

std::vector<MatchEdge> NestedWord::matching() const {
  std::vector<MatchEdge> m;
  for (int i = 0; i < length(); ++i)
    if (ret_[i] >= 0) m.push_back({i, ret_[i], alphabet_->cls(word_[i]).stack});
  return m;
}

std::vector<int> NestedWord::pending_calls() const {
  std::vector<int> p;
  for (int i = 0; i < length(); ++i)
    if (alphabet_->is_call(word_[i]) && ret_[i] < 0) p.push_back(i);
  return p;
}

std::vector<int> NestedWord::pending_returns() const {
  std::vector<int> p;
  for (int i = 0; i < length(); ++i)
    if (alphabet_->is_return(word_[i]) && call_[i] < 0) p.push_back(i);
  return p;
}

NestedWord nested(AlphabetPtr alphabet, Word word) {
  if (word.empty()) fail(ErrorKind::EmptyWord, "nested words are non-empty");
  for (Symbol a : word)
    if (a < 0 || a >= alphabet->size())
      fail(ErrorKind::UnknownSymbol, "symbol index out of range");
  NestedWord w;
  const int n = static_cast<int>(word.size());
  w.ret_.assign(n, -1);
  w.call_.assign(n, -1);
  // A return closes the most recent open call of its own stack; with none open
  // it stays pending.
  std::vector<std::vector<int>> open(alphabet->stacks());
  for (int i = 0; i < n; ++i) {
    const auto c = alphabet->cls(word[i]);
    if (c.kind == SymbolKind::Call) {
      open[c.stack].push_back(i);
    } else if (c.kind == SymbolKind::Return && !open[c.stack].empty()) {
      const int j = open[c.stack].back();
      open[c.stack].pop_back();
      w.ret_[j] = i;
      w.call_[i] = j;
    }
  }
  w.alphabet_ = std::move(alphabet);
  w.word_ = std::move(word);
  return w;
}

std::vector<int> distances_from(const NestedWord& w, int i, int limit) {
  const int n = w.length();
  if (i < 0 || i >= n) fail(ErrorKind::PositionOutOfRange, "position out of range");
  std::vector<int> d(n, -1);
  std::deque<int> queue{i};
  d[i] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (limit >= 0 && d[u] == limit) continue;
    for (int v : {u - 1, u + 1, w.return_of(u), w.call_of(u)}) {
      if (v < 0 || v >= n || d[v] >= 0) continue;
      d[v] = d[u] + 1;
      queue.push_back(v);
    }
  }
  return d;
}

int distance(const NestedWord& w, int i, int j) {
  if (j < 0 || j >= w.length()) fail(ErrorKind::PositionOutOfRange, "position out of range");
  return distances_from(w, i)[j];
}

std::string to_dot(const NestedWord& w) {
  std::ostringstream out;
  out << "digraph nested {\n  rankdir=LR;\n";
  for (int i = 0; i < w.length(); ++i)
    out << "  n" << i + 1 << " [label=\"" << i + 1 << ":" << w.alphabet()->name(w.label(i))
        << "\"];\n";
  for (int i = 0; i + 1 < w.length(); ++i)
    out << "  n" << i + 1 << " -> n" << i + 2 << ";\n";
  for (const auto& e : w.matching())
    out << "  n" << e.call + 1 << " -> n" << e.ret + 1 << " [style=dashed, label=\""
        << e.stack + 1 << "\"];\n";
  out << "}\n";
  return out.str();
}

void for_each_word(const Alphabet& alphabet, int max_length,
                   const std::function<void(const Word&)>& f) {
  const int k = alphabet.size();
  for (int len = 1; len <= max_length; ++len) {
    Word w(len, 0);
    while (true) {
      f(w);
      int pos = len - 1;
      while (pos >= 0 && w[pos] == k - 1) w[pos--] = 0;
      if (pos < 0) break;
      ++w[pos];
    }
  }
}

}  // namespace nw
