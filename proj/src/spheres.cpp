#include "nw/spheres.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace nw {

namespace {

std::vector<int> bfs_order(const Sphere& s, std::vector<int>* dist) {
  const int m = s.size();
  std::vector<int> order;
  std::vector<int> d(m, -1);
  order.reserve(m);
  d[s.center] = 0;
  order.push_back(s.center);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int u = order[k];
    for (int v : {s.next[u], s.prev[u], s.match_out[u], s.match_in[u]}) {
      if (v < 0 || d[v] >= 0) continue;
      d[v] = d[u] + 1;
      order.push_back(v);
    }
  }
  if (dist) *dist = std::move(d);
  return order;
}

int remap(const std::vector<int>& perm, int v) { return v < 0 ? -1 : perm[v]; }

}  // namespace

void validate_sphere(Sphere& s) {
  const int m = s.size();
  auto bad = [](const std::string& why) { fail(ErrorKind::InvalidSphere, why); };
  if (!s.alphabet) bad("sphere has no alphabet");
  if (m == 0) bad("sphere has no nodes");
  if (s.radius < 0) bad("negative radius");
  if (s.center < 0 || s.center >= m) bad("center is not a node");
  for (auto* v : {&s.next, &s.prev, &s.match_out, &s.match_in})
    if (static_cast<int>(v->size()) != m) bad("adjacency arrays have the wrong size");
  for (int u = 0; u < m; ++u) {
    if (s.labels[u] < 0 || s.labels[u] >= s.alphabet->size()) bad("unknown label");
    for (int v : {s.next[u], s.prev[u], s.match_out[u], s.match_in[u]})
      if (v < -1 || v >= m || v == u) bad("edge endpoint out of range");
    if (s.next[u] >= 0 && s.prev[s.next[u]] != u) bad("successor edges are not functional");
    if (s.prev[u] >= 0 && s.next[s.prev[u]] != u) bad("successor edges are not functional");
    if (s.match_out[u] >= 0) {
      const int v = s.match_out[u];
      if (s.match_in[v] != u) bad("matching edges are not functional");
      const auto cu = s.alphabet->cls(s.labels[u]);
      const auto cv = s.alphabet->cls(s.labels[v]);
      if (cu.kind != SymbolKind::Call || cv.kind != SymbolKind::Return || cu.stack != cv.stack)
        bad("matching edge must join a call to a return of the same stack");
    }
    if (s.match_in[u] >= 0 && s.match_out[s.match_in[u]] != u)
      bad("matching edges are not functional");
    if (s.match_out[u] >= 0 && s.match_in[u] >= 0) bad("node is both a call and a return");
  }
  // Successor edges must not close a cycle.
  for (int u = 0; u < m; ++u) {
    int v = u, steps = 0;
    while (s.next[v] >= 0 && steps <= m) v = s.next[v], ++steps;
    if (steps > m) bad("successor edges form a cycle");
  }
  bfs_order(s, &s.dist);
  for (int u = 0; u < m; ++u) {
    if (s.dist[u] < 0) bad("sphere is not connected");
    if (s.dist[u] > s.radius) bad("node farther from the center than the radius");
  }
}

Sphere canonical(const Sphere& s) {
  std::vector<int> dist;
  const auto order = bfs_order(s, &dist);
  const int m = static_cast<int>(order.size());
  std::vector<int> perm(s.size(), -1);
  for (int k = 0; k < m; ++k) perm[order[k]] = k;
  Sphere c;
  c.alphabet = s.alphabet;
  c.radius = s.radius;
  c.center = 0;
  c.realized = s.realized;
  c.labels.resize(m);
  c.next.resize(m);
  c.prev.resize(m);
  c.match_out.resize(m);
  c.match_in.resize(m);
  c.dist.resize(m);
  if (!s.origin.empty()) c.origin.resize(m);
  for (int k = 0; k < m; ++k) {
    const int u = order[k];
    c.labels[k] = s.labels[u];
    c.next[k] = remap(perm, s.next[u]);
    c.prev[k] = remap(perm, s.prev[u]);
    c.match_out[k] = remap(perm, s.match_out[u]);
    c.match_in[k] = remap(perm, s.match_in[u]);
    c.dist[k] = dist[u];
    if (!s.origin.empty()) c.origin[k] = s.origin[u];
  }
  return c;
}

SphereKey canonical_key(const Sphere& s) {
  SphereKey key;
  key.reserve(1 + 5 * s.size());
  key.push_back(s.size());
  for (int k = 0; k < s.size(); ++k) {
    key.push_back(s.labels[k]);
    key.push_back(s.next[k]);
    key.push_back(s.prev[k]);
    key.push_back(s.match_out[k]);
    key.push_back(s.match_in[k]);
  }
  return key;
}

bool isomorphic(const Sphere& s1, const Sphere& s2) {
  if (s1.radius != s2.radius) fail(ErrorKind::RadiusMismatch, "spheres of different radii");
  if (!s1.alphabet->same_as(*s2.alphabet)) return false;
  return canonical_key(canonical(s1)) == canonical_key(canonical(s2));
}

Sphere sphere(const NestedWord& w, int i, int r) {
  if (r < 0) fail(ErrorKind::InvalidArgument, "radius must be non-negative");
  const auto d = distances_from(w, i, r);
  const int n = w.length();
  std::vector<int> local(n, -1);
  Sphere s;
  s.alphabet = w.alphabet();
  s.radius = r;
  s.realized = true;
  for (int p = 0; p < n; ++p)
    if (d[p] >= 0) {
      local[p] = static_cast<int>(s.origin.size());
      s.origin.push_back(p);
    }
  const int m = static_cast<int>(s.origin.size());
  s.labels.resize(m);
  s.next.assign(m, -1);
  s.prev.assign(m, -1);
  s.match_out.assign(m, -1);
  s.match_in.assign(m, -1);
  for (int k = 0; k < m; ++k) {
    const int p = s.origin[k];
    s.labels[k] = w.label(p);
    if (p + 1 < n) s.next[k] = local[p + 1];
    if (p > 0) s.prev[k] = local[p - 1];
    if (w.return_of(p) >= 0) s.match_out[k] = local[w.return_of(p)];
    if (w.call_of(p) >= 0) s.match_in[k] = local[w.call_of(p)];
  }
  s.center = local[i];
  return canonical(s);
}

std::vector<Sphere> spheres_of(const NestedWord& w, int r) {
  std::vector<Sphere> out;
  out.reserve(w.length());
  for (int i = 0; i < w.length(); ++i) out.push_back(sphere(w, i, r));
  return out;
}

int max_size_bound(int r) { return 1 + 3 * ((1 << r) - 1); }

int color_bound(int r) {
  const int m = max_size_bound(r);
  return 4 * m * m + 1;
}

int sphere_count(const NestedWord& w, const Sphere& s) {
  if (!s.alphabet->same_as(*w.alphabet()))
    fail(ErrorKind::AlphabetMismatch, "sphere and word use different alphabets");
  const auto key = canonical_key(canonical(s));
  int count = 0;
  for (int i = 0; i < w.length(); ++i)
    if (canonical_key(sphere(w, i, s.radius)) == key) ++count;
  return count;
}

std::vector<Sphere> enumerate_spheres(const AlphabetPtr& alphabet, int r, int max_length) {
  std::vector<Sphere> out;
  std::set<SphereKey> seen;
  for_each_word(*alphabet, max_length, [&](const Word& word) {
    const auto w = nested(alphabet, word);
    for (int i = 0; i < w.length(); ++i) {
      auto s = sphere(w, i, r);
      if (seen.insert(canonical_key(s)).second) out.push_back(std::move(s));
    }
  });
  return out;
}

Coloring chi_coloring(const NestedWord& w, int r) { return chi_coloring(w, r, spheres_of(w, r)); }

Coloring chi_coloring(const NestedWord& w, int r, const std::vector<Sphere>& spheres) {
  const int n = w.length();
  std::vector<SphereKey> keys;
  keys.reserve(n);
  for (const auto& s : spheres) keys.push_back(canonical_key(s));
  Coloring c;
  c.color.assign(n, 0);
  std::vector<int> degree(n, 0);
  for (int i = 0; i < n; ++i) {
    const auto d = distances_from(w, i, 2 * r + 1);
    std::vector<int> used;
    for (int j = 0; j < n; ++j) {
      if (j == i || d[j] < 0 || keys[j] != keys[i]) continue;
      ++degree[i];
      if (j < i) used.push_back(c.color[j]);
    }
    std::sort(used.begin(), used.end());
    int col = 1;
    for (int u : used)
      if (u == col) ++col;
    c.color[i] = col;
    c.colors_used = std::max(c.colors_used, col);
    c.max_overlap_degree = std::max(c.max_overlap_degree, degree[i]);
  }
  return c;
}

std::string to_dot(const Sphere& s) {
  std::ostringstream out;
  out << "digraph sphere {\n  rankdir=LR;\n";
  for (int k = 0; k < s.size(); ++k) {
    out << "  n" << k + 1 << " [label=\""
        << (s.origin.empty() ? k + 1 : s.origin[k] + 1) << ":" << s.alphabet->name(s.labels[k])
        << "\"" << (k == s.center ? ", shape=box" : "") << "];\n";
  }
  for (int k = 0; k < s.size(); ++k) {
    if (s.next[k] >= 0) out << "  n" << k + 1 << " -> n" << s.next[k] + 1 << ";\n";
    if (s.match_out[k] >= 0)
      out << "  n" << k + 1 << " -> n" << s.match_out[k] + 1 << " [style=dashed, label=\""
          << s.alphabet->cls(s.labels[k]).stack + 1 << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace nw
