#include "nw/circularity.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nw {

DirectionString parse_directions(std::string_view text) {
  DirectionString w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    Direction d;
    auto stack_of = [&](std::size_t prefix) {
      const auto digits = tok.substr(prefix);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
          std::stoi(digits) < 1)
        fail(ErrorKind::ParseError, "bad direction '" + tok + "'");
      return std::stoi(digits) - 1;
    };
    if (tok == "fwd") {
      d.move = Direction::Move::Fwd;
    } else if (tok == "bwd") {
      d.move = Direction::Move::Bwd;
    } else if (tok.rfind("jump", 0) == 0) {
      d = {Direction::Move::Jump, stack_of(4)};
    } else if (tok.rfind("back", 0) == 0) {
      d = {Direction::Move::Back, stack_of(4)};
    } else {
      fail(ErrorKind::ParseError, "bad direction '" + tok + "'");
    }
    w.push_back(d);
  }
  return w;
}

std::string format_directions(const DirectionString& w) {
  std::string out;
  for (const auto& d : w) {
    if (!out.empty()) out += ' ';
    switch (d.move) {
      case Direction::Move::Fwd: out += "fwd"; break;
      case Direction::Move::Bwd: out += "bwd"; break;
      case Direction::Move::Jump: out += "jump" + std::to_string(d.stack + 1); break;
      case Direction::Move::Back: out += "back" + std::to_string(d.stack + 1); break;
    }
  }
  return out;
}

std::optional<int> step(const NestedWord& w, int i, Direction d) {
  const auto& sigma = *w.alphabet();
  switch (d.move) {
    case Direction::Move::Fwd:
      if (i + 1 < w.length()) return i + 1;
      return std::nullopt;
    case Direction::Move::Bwd:
      if (i > 0) return i - 1;
      return std::nullopt;
    case Direction::Move::Jump:
      if (w.return_of(i) >= 0 && sigma.is_call(w.label(i), d.stack)) return w.return_of(i);
      return std::nullopt;
    case Direction::Move::Back:
      if (w.call_of(i) >= 0 && sigma.is_return(w.label(i), d.stack)) return w.call_of(i);
      return std::nullopt;
  }
  return std::nullopt;
}

std::set<int> path_exists(const NestedWord& w, const DirectionString& path, int i, bool distinct) {
  if (i < 0 || i >= w.length()) fail(ErrorKind::PositionOutOfRange, "position out of range");
  std::vector<int> visited{i};
  int cur = i;
  for (const auto& d : path) {
    const auto next = step(w, cur, d);
    if (!next) return {};
    cur = *next;
    visited.push_back(cur);
  }
  if (distinct) {
    const std::size_t m = path.size();
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = k + 1; l <= m; ++l)
        if (visited[k] == visited[l] && !(k == 0 && l == m)) return {};
  }
  return {cur};
}

namespace {

// Roles coincide with the symbol indices of two_stack_alphabet().
constexpr int call_role(int s) { return 2 * s; }
constexpr int return_role(int s) { return 2 * s + 1; }

class CircleSearch {
 public:
  CircleSearch(const DirectionString& path, int bound)
      : path_(path), bound_(bound), span_(2 * bound + 1) {
    label_.assign(span_, -1);
    partner_.assign(span_, kNone);
    used_.assign(span_, false);
    fixed_tail_.assign(path.size() + 1, 0);
    // Displacement of a suffix made only of fwd/bwd steps, for early pruning.
    bool fixed = true;
    int disp = 0;
    for (int k = static_cast<int>(path.size()) - 1; k >= 0; --k) {
      const auto mv = path[k].move;
      if (mv == Direction::Move::Jump || mv == Direction::Move::Back) fixed = false;
      disp += mv == Direction::Move::Fwd ? 1 : mv == Direction::Move::Bwd ? -1 : 0;
      fixed_tail_[k] = fixed ? disp : kNone;
    }
    fixed_tail_[path.size()] = 0;
  }

  bool run() {
    lo_ = hi_ = 0;
    used_[idx(0)] = true;
    return extend(0, 0);
  }

  Word witness;
  int start = -1;

 private:
  static constexpr int kNone = 1 << 29;

  int idx(int p) const { return p + bound_; }
  bool in_window(int p) const {
    return std::max(hi_, p) - std::min(lo_, p) + 1 <= bound_ && p > -bound_ && p < bound_;
  }

  // Records label and partner constraints; returns false on conflict. Undo
  // information is pushed on the trail.
  bool constrain(int p, int role) {
    int& l = label_[idx(p)];
    if (l >= 0) return l == role;
    l = role;
    trail_.push_back({0, p});
    return true;
  }
  bool pair(int c, int r, int s) {
    int& pc = partner_[idx(c)];
    int& pr = partner_[idx(r)];
    if (pc != kNone || pr != kNone) return pc == r && pr == c;
    for (const auto& [c2, r2, s2] : pairs_)
      if (s2 == s && ((c < c2 && c2 < r && r < r2) || (c2 < c && c < r2 && r2 < r))) return false;
    pc = r;
    pr = c;
    pairs_.push_back({c, r, s});
    trail_.push_back({1, c});
    return true;
  }
  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto [kind, p] = trail_.back();
      trail_.pop_back();
      if (kind == 0) {
        label_[idx(p)] = -1;
      } else {
        partner_[idx(partner_[idx(p)])] = kNone;
        partner_[idx(p)] = kNone;
        pairs_.pop_back();
      }
    }
  }

  bool extend(std::size_t k, int p) {
    const std::size_t m = path_.size();
    if (k == m) return p == 0 && complete();
    if (fixed_tail_[k] != kNone && p + fixed_tail_[k] != 0) return false;
    const auto d = path_[k];
    std::vector<int> candidates;
    switch (d.move) {
      case Direction::Move::Fwd: candidates = {p + 1}; break;
      case Direction::Move::Bwd: candidates = {p - 1}; break;
      case Direction::Move::Jump:
        for (int q = p + 1; q < bound_; ++q) candidates.push_back(q);
        break;
      case Direction::Move::Back:
        for (int q = p - 1; q > -bound_; --q) candidates.push_back(q);
        break;
    }
    for (int q : candidates) {
      if (!in_window(q)) {
        if (d.move == Direction::Move::Jump || d.move == Direction::Move::Back) break;
        continue;
      }
      const bool closing = k + 1 == m;
      if (closing ? q != 0 : used_[idx(q)]) continue;
      const auto mark = trail_.size();
      bool ok = true;
      if (d.move == Direction::Move::Jump)
        ok = constrain(p, call_role(d.stack)) && constrain(q, return_role(d.stack)) &&
             pair(p, q, d.stack);
      else if (d.move == Direction::Move::Back)
        ok = constrain(p, return_role(d.stack)) && constrain(q, call_role(d.stack)) &&
             pair(q, p, d.stack);
      if (ok) {
        const int lo = lo_, hi = hi_;
        lo_ = std::min(lo_, q);
        hi_ = std::max(hi_, q);
        if (!closing) used_[idx(q)] = true;
        const bool found = extend(k + 1, q);
        if (!closing) used_[idx(q)] = false;
        lo_ = lo;
        hi_ = hi;
        if (found) return true;
      }
      undo_to(mark);
    }
    return false;
  }

  // Fills the unconstrained positions of [lo, hi] so that every recorded pair
  // is a matching edge of the resulting word. Per stack, the search state is
  // the list of open constrained calls with the number of unconstrained calls
  // opened above each; unconstrained calls below all constrained ones never
  // matter.
  bool complete() {
    std::vector<int> labels(hi_ - lo_ + 1, -1);
    std::vector<std::vector<std::pair<int, int>>> open(2);
    failed_.clear();
    if (!fill(lo_, open, labels)) return false;
    witness.assign(labels.begin(), labels.end());
    start = -lo_;
    return true;
  }

  bool fill(int p, std::vector<std::vector<std::pair<int, int>>>& open, std::vector<int>& labels) {
    if (p > hi_) return true;
    std::vector<int> key{p};
    for (const auto& st : open) {
      key.push_back(static_cast<int>(st.size()));
      for (auto [c, f] : st) key.insert(key.end(), {c, f});
    }
    if (failed_.count(key)) return false;
    const int role = label_[idx(p)];
    if (role >= 0) {
      const int s = role / 2;
      labels[p - lo_] = role;
      if (role == call_role(s)) {
        open[s].push_back({p, 0});
        if (fill(p + 1, open, labels)) return true;
        open[s].pop_back();
      } else {
        // A constrained return must close its own call with nothing above it.
        const auto& st = open[s];
        if (!st.empty() && st.back().first == partner_[idx(p)] && st.back().second == 0) {
          const auto top = st.back();
          open[s].pop_back();
          if (fill(p + 1, open, labels)) return true;
          open[s].push_back(top);
        }
      }
    } else {
      for (int s = 0; s < 2; ++s) {
        labels[p - lo_] = call_role(s);
        if (!open[s].empty()) ++open[s].back().second;
        if (fill(p + 1, open, labels)) return true;
        if (!open[s].empty()) --open[s].back().second;

        labels[p - lo_] = return_role(s);
        if (open[s].empty()) {
          if (fill(p + 1, open, labels)) return true;
        } else if (open[s].back().second > 0) {
          --open[s].back().second;
          if (fill(p + 1, open, labels)) return true;
          ++open[s].back().second;
        }
      }
    }
    failed_.insert(std::move(key));
    return false;
  }

  const DirectionString& path_;
  int bound_;
  int span_;
  int lo_ = 0, hi_ = 0;
  std::vector<int> label_;
  std::vector<int> partner_;
  std::vector<bool> used_;
  std::vector<int> fixed_tail_;
  std::vector<std::tuple<int, int, int>> pairs_;
  std::vector<std::pair<int, int>> trail_;
  std::set<std::vector<int>> failed_;
};

}  // namespace

CircularityVerdict is_circular(const DirectionString& path, int bound) {
  if (path.empty()) fail(ErrorKind::InvalidArgument, "circularity needs a non-empty string");
  if (bound < static_cast<int>(path.size()) + 1)
    fail(ErrorKind::BoundTooSmall, "bound must be at least |w| + 1");
  CircularityVerdict v;
  v.bound = bound;
  for (const auto& d : path)
    if ((d.move == Direction::Move::Jump || d.move == Direction::Move::Back) && d.stack > 1)
      return v;  // no such stack in the two-stack alphabet
  CircleSearch search(path, bound);
  if (!search.run()) return v;
  const auto w = nested(two_stack_alphabet(), search.witness);
  if (path_exists(w, path, search.start, true) != std::set<int>{search.start})
    fail(ErrorKind::InvalidState, "circularity witness failed re-validation");
  v.circular = true;
  v.witness = search.witness;
  v.position = search.start;
  return v;
}

std::vector<TopoLetter> f_map(const DirectionString& w) {
  using M = Direction::Move;
  auto is = [](const Direction* d, M move, int stack = -1) {
    return d && d->move == move && (stack < 0 || d->stack == stack);
  };
  std::vector<TopoLetter> out;
  const Direction* prev = nullptr;
  for (const auto& d : w) {
    TopoLetter t = TopoLetter::Fwd2;
    switch (d.move) {
      case M::Fwd: t = is(prev, M::Back, 0) ? TopoLetter::Ccw : TopoLetter::Fwd2; break;
      case M::Bwd: t = is(prev, M::Jump, 0) ? TopoLetter::Cw : TopoLetter::Bwd2; break;
      case M::Jump:
        t = d.stack == 0 ? TopoLetter::Fwd2 : is(prev, M::Bwd) ? TopoLetter::Ccw : TopoLetter::Fwd2;
        break;
      case M::Back:
        t = d.stack == 0 ? TopoLetter::Bwd2 : is(prev, M::Fwd) ? TopoLetter::Cw : TopoLetter::Bwd2;
        break;
    }
    out.push_back(t);
    prev = &d;
  }
  return out;
}

std::string format_topo(const std::vector<TopoLetter>& t) {
  std::string out;
  for (auto x : t) {
    if (!out.empty()) out += ' ';
    switch (x) {
      case TopoLetter::Fwd2: out += "fwd2"; break;
      case TopoLetter::Bwd2: out += "bwd2"; break;
      case TopoLetter::Cw: out += "cw"; break;
      case TopoLetter::Ccw: out += "ccw"; break;
    }
  }
  return out;
}

}  // namespace nw
