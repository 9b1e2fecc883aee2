#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nw/spheres.hpp"

namespace nw {

// A canonical sphere shared between the states that mention it.
struct Core {
  Sphere sphere;
  SphereKey key;
};
using CorePtr = std::shared_ptr<const Core>;
CorePtr make_core(const Sphere& s);

// A sphere together with one of its nodes marked active and a color.
struct ExtendedSphere {
  CorePtr core;
  int active = 0;
  int color = 1;

  const Sphere& sphere() const { return core->sphere; }
  bool operator<(const ExtendedSphere& o) const;
  bool operator==(const ExtendedSphere& o) const;
};

// States of the sphere automaton for a fixed radius: finite sets of extended
// spheres, kept sorted and duplicate free.
struct SphereState {
  int radius = 0;
  std::vector<ExtendedSphere> members;

  bool empty() const { return members.empty(); }
  bool contains(const CorePtr& core, int active, int color) const;
  void normalize();
  bool operator==(const SphereState& o) const {
    return radius == o.radius && members == o.members;
  }
  bool operator<(const SphereState& o) const;
};

// Consistency of a state: exactly one member is active at its center, all
// active nodes carry the same label, and members sharing core and color agree
// on the active node. Colors must lie in 1..color_bound(radius).
std::optional<std::string> state_violation(const SphereState& q);
inline bool is_valid(const SphereState& q) { return !state_violation(q); }

bool is_final(const SphereState& q);
bool is_calling(const SphereState& q);

// Transition predicate. With `call` null this is the linear relation (from the
// previous state on symbol a); otherwise `call` is the state at the matching
// call position and the return relation applies.
std::optional<std::string> transition_violation(const SphereState& prev, const SphereState* call,
                                                Symbol a, const SphereState& next);
inline bool delta_allows(const SphereState& prev, const SphereState* call, Symbol a,
                         const SphereState& next) {
  return !transition_violation(prev, call, a, next);
}

// The run that places at position i one extended sphere for every position i'
// within distance r: the sphere around i', active at i, colored by the greedy
// coloring of i'.
std::vector<SphereState> canonical_run(const NestedWord& w, int r);

std::optional<std::string> run_violation(const NestedWord& w, int r,
                                         const std::vector<SphereState>& run);
inline bool br_run_verify(const NestedWord& w, int r, const std::vector<SphereState>& run) {
  return !run_violation(w, r, run);
}

// The core of the member active at its center. The empty state maps to a
// single-node placeholder labeled with the first symbol.
Sphere eta(const SphereState& q, const AlphabetPtr& alphabet);

std::string describe(const SphereState& q);
std::string to_dot(const NestedWord& w, const std::vector<SphereState>& run);

}  // namespace nw
