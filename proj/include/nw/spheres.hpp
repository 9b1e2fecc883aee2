#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nw/core.hpp"

namespace nw {

// The r-neighbourhood of a position as a labeled structure with a distinguished
// center. Every node has at most one neighbour per edge kind, so adjacency is
// stored as four partial functions (-1 where undefined).
struct Sphere {
  AlphabetPtr alphabet;
  int radius = 0;
  int center = 0;
  std::vector<Symbol> labels;
  std::vector<int> next, prev;
  std::vector<int> match_out, match_in;
  std::vector<int> dist;    // distance from the center inside the sphere
  std::vector<int> origin;  // word position of each node, empty if not extracted
  bool realized = false;    // extracted from a word rather than read from a file

  int size() const { return static_cast<int>(labels.size()); }
};

using SphereKey = std::vector<std::int32_t>;

// Rebuilds adjacency-derived data (dist) and checks that the edges form a
// sphere: inverse successor/matching functions, call-to-return matching on one
// stack, connected, every node within `radius` of the center.
void validate_sphere(Sphere& s);

// Renumbers nodes in breadth-first order from the center, following neighbours
// in the order next, prev, match_out, match_in. Because each node has at most
// one neighbour of each kind, an isomorphism fixing the center is unique if it
// exists, so equal keys are exactly isomorphic spheres.
Sphere canonical(const Sphere& s);
SphereKey canonical_key(const Sphere& s);  // s must already be canonical
bool isomorphic(const Sphere& s1, const Sphere& s2);

// Canonical sphere of radius r around position i, with origin filled in.
Sphere sphere(const NestedWord& w, int i, int r);
std::vector<Sphere> spheres_of(const NestedWord& w, int r);

int max_size_bound(int r);  // 1 + 3 (2^r - 1)
int color_bound(int r);     // 4 maxSize^2 + 1

int sphere_count(const NestedWord& w, const Sphere& s);

// Distinct isomorphism types of radius-r spheres over all words up to
// max_length, in order of first occurrence.
std::vector<Sphere> enumerate_spheres(const AlphabetPtr& alphabet, int r, int max_length);

// Greedy coloring (in position order) of the overlap graph: i and j are
// adjacent when their r-spheres are isomorphic and d(i, j) <= 2r + 1.
struct Coloring {
  std::vector<int> color;  // 1-based
  int max_overlap_degree = 0;
  int colors_used = 0;
};
Coloring chi_coloring(const NestedWord& w, int r);
Coloring chi_coloring(const NestedWord& w, int r, const std::vector<Sphere>& spheres);

std::string to_dot(const Sphere& s);

}  // namespace nw
