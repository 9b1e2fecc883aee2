#include "nw/sphere_automaton.hpp"

#include <algorithm>
#include <sstream>

namespace nw {

CorePtr make_core(const Sphere& s) {
  auto c = std::make_shared<Core>();
  c->sphere = canonical(s);
  c->key = canonical_key(c->sphere);
  return c;
}

bool ExtendedSphere::operator<(const ExtendedSphere& o) const {
  if (core != o.core && core->key != o.core->key) return core->key < o.core->key;
  if (active != o.active) return active < o.active;
  return color < o.color;
}

bool ExtendedSphere::operator==(const ExtendedSphere& o) const {
  return active == o.active && color == o.color && (core == o.core || core->key == o.core->key);
}

bool SphereState::contains(const CorePtr& core, int active, int color) const {
  const ExtendedSphere probe{core, active, color};
  return std::binary_search(members.begin(), members.end(), probe);
}

void SphereState::normalize() {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool SphereState::operator<(const SphereState& o) const {
  if (radius != o.radius) return radius < o.radius;
  return std::lexicographical_compare(members.begin(), members.end(), o.members.begin(),
                                      o.members.end());
}

namespace {

Symbol active_label(const ExtendedSphere& e) { return e.sphere().labels[e.active]; }

bool same_core_color(const ExtendedSphere& x, const ExtendedSphere& y) {
  return x.color == y.color && (x.core == y.core || x.core->key == y.core->key);
}

}  // namespace

std::optional<std::string> state_violation(const SphereState& q) {
  if (q.empty()) return std::nullopt;
  const int bound = color_bound(q.radius);
  int centered = 0;
  for (const auto& e : q.members) {
    if (!e.core) return "member without a core";
    const auto& s = e.sphere();
    if (s.radius != q.radius) return "member sphere has the wrong radius";
    if (e.active < 0 || e.active >= s.size()) return "active node out of range";
    if (e.color < 1 || e.color > bound) return "color out of range";
    if (e.active == s.center) ++centered;
    if (active_label(e) != active_label(q.members.front())) return "active labels disagree";
  }
  if (centered != 1) return "state must have exactly one member active at its center";
  // Sorted order puts members with equal core and color next to each other.
  for (std::size_t k = 0; k + 1 < q.members.size(); ++k) {
    const auto& x = q.members[k];
    for (std::size_t l = k + 1; l < q.members.size() && x.core->key == q.members[l].core->key;
         ++l)
      if (x.color == q.members[l].color && x.active != q.members[l].active)
        return "two members share core and color but not the active node";
  }
  return std::nullopt;
}

bool is_final(const SphereState& q) {
  return std::all_of(q.members.begin(), q.members.end(), [](const ExtendedSphere& e) {
    return e.sphere().match_out[e.active] < 0 && e.sphere().next[e.active] < 0;
  });
}

bool is_calling(const SphereState& q) {
  return std::any_of(q.members.begin(), q.members.end(),
                     [](const ExtendedSphere& e) { return e.sphere().match_out[e.active] >= 0; });
}

std::optional<std::string> transition_violation(const SphereState& prev, const SphereState* call,
                                                Symbol a, const SphereState& next) {
  const int r = next.radius;
  if (next.empty()) return "target state is empty";
  if (call && (prev.empty() || call->empty())) return "return step from an empty state";
  for (const auto& f : next.members)
    if (active_label(f) != a) return "target state is labeled differently from the input";

  for (const auto& f : next.members) {
    const auto& s = f.sphere();
    if (!call && s.match_in[f.active] >= 0)
      return "linear step into a node with a matching call";
    if (!prev.empty() && s.prev[f.active] < 0 && s.dist[f.active] != r)
      return "target node without predecessor lies inside the sphere";
    if (s.prev[f.active] >= 0 && !prev.contains(f.core, s.prev[f.active], f.color))
      return "predecessor of a target node missing from the previous state";
    if (call) {
      if (s.match_in[f.active] < 0 && s.dist[f.active] != r)
        return "target node without matching call lies inside the sphere";
      if (s.match_in[f.active] >= 0 && !call->contains(f.core, s.match_in[f.active], f.color))
        return "matching call of a target node missing from the call state";
    }
  }
  for (const auto& e : prev.members) {
    const auto& s = e.sphere();
    if (s.next[e.active] < 0 && s.dist[e.active] != r)
      return "previous node without successor lies inside the sphere";
    if (s.next[e.active] >= 0 && !next.contains(e.core, s.next[e.active], e.color))
      return "successor of a previous node missing from the target state";
    for (const auto& f : next.members)
      if (same_core_color(e, f) && f.active != s.next[e.active])
        return "target state advances a sphere to a non-successor node";
  }
  if (call) {
    for (const auto& e : call->members) {
      const auto& s = e.sphere();
      if (s.match_out[e.active] < 0 && s.dist[e.active] != r)
        return "call node without matching return lies inside the sphere";
      if (s.match_out[e.active] >= 0 && !next.contains(e.core, s.match_out[e.active], e.color))
        return "matching return of a call node missing from the target state";
      for (const auto& f : next.members)
        if (same_core_color(e, f) && f.active != s.match_out[e.active])
          return "target state answers a call with a non-matching node";
    }
  }
  return std::nullopt;
}

std::vector<SphereState> canonical_run(const NestedWord& w, int r) {
  const auto spheres = spheres_of(w, r);
  const auto chi = chi_coloring(w, r, spheres);
  const int n = w.length();
  std::vector<CorePtr> cores;
  cores.reserve(n);
  for (const auto& s : spheres) cores.push_back(make_core(s));
  std::vector<SphereState> run(n);
  for (int i = 0; i < n; ++i) run[i].radius = r;
  for (int c = 0; c < n; ++c) {
    const auto& s = cores[c]->sphere;
    for (int k = 0; k < s.size(); ++k) run[s.origin[k]].members.push_back({cores[c], k, chi.color[c]});
  }
  for (auto& q : run) q.normalize();
  return run;
}

std::optional<std::string> run_violation(const NestedWord& w, int r,
                                         const std::vector<SphereState>& run) {
  const int n = w.length();
  if (static_cast<int>(run.size()) != n)
    fail(ErrorKind::LengthMismatch, "run length differs from word length");
  for (int i = 0; i < n; ++i) {
    if (run[i].radius != r) return "state of the wrong radius at position " + std::to_string(i + 1);
    if (auto v = state_violation(run[i]))
      return "position " + std::to_string(i + 1) + ": " + *v;
    for (const auto& e : run[i].members)
      if (!e.sphere().alphabet->same_as(*w.alphabet())) return "sphere over a different alphabet";
  }
  const SphereState initial{r, {}};
  for (int i = 0; i < n; ++i) {
    const int c = w.call_of(i);
    const auto& prev = i == 0 ? initial : run[i - 1];
    const auto v = transition_violation(prev, c >= 0 ? &run[c] : nullptr, w.label(i), run[i]);
    if (v) return "position " + std::to_string(i + 1) + ": " + *v;
  }
  if (!is_final(run[n - 1])) return "last state is not final";
  for (int i = 0; i < n; ++i)
    if (is_calling(run[i]) && w.return_of(i) < 0)
      return "calling state at position " + std::to_string(i + 1) + " without a matching return";
  return std::nullopt;
}

Sphere eta(const SphereState& q, const AlphabetPtr& alphabet) {
  if (q.empty()) {
    Sphere s;
    s.alphabet = alphabet;
    s.radius = q.radius;
    s.labels = {0};
    s.next = s.prev = s.match_out = s.match_in = {-1};
    s.dist = {0};
    return s;
  }
  if (auto v = state_violation(q)) fail(ErrorKind::InvalidState, *v);
  for (const auto& e : q.members)
    if (e.active == e.sphere().center) return e.sphere();
  fail(ErrorKind::InvalidState, "no member active at its center");
}

std::string describe(const SphereState& q) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < q.members.size(); ++k) {
    const auto& e = q.members[k];
    const auto& s = e.sphere();
    out << (k ? ", " : "") << "(";
    for (int u = 0; u < s.size(); ++u) {
      if (u) out << ' ';
      out << s.alphabet->name(s.labels[u]);
      if (u == s.center) out << '*';
      if (u == e.active) out << '^';
    }
    out << " | c" << e.color << ")";
  }
  out << "}";
  return out.str();
}

std::string to_dot(const NestedWord& w, const std::vector<SphereState>& run) {
  std::ostringstream out;
  out << "digraph run {\n  rankdir=LR;\n";
  for (int i = 0; i < w.length(); ++i)
    out << "  n" << i + 1 << " [shape=record, label=\"" << i + 1 << ":"
        << w.alphabet()->name(w.label(i)) << " | " << run.at(i).members.size()
        << " spheres\"];\n";
  for (int i = 0; i + 1 < w.length(); ++i) out << "  n" << i + 1 << " -> n" << i + 2 << ";\n";
  for (const auto& e : w.matching())
    out << "  n" << e.call + 1 << " -> n" << e.ret + 1 << " [style=dashed, label=\""
        << e.stack + 1 << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace nw
