#pragma once

#include <memory>
#include <vector>

#include "nw/automata.hpp"
#include "nw/sphere_automaton.hpp"

namespace nw {

// Positive Boolean combinations of sphere-count thresholds: "exactly t" or
// "more than t" positions realize a given sphere.
struct SphereConstraint {
  enum class Kind { CountEq, CountGt, And, Or };

  Kind kind = Kind::CountEq;
  std::shared_ptr<const Sphere> sphere;
  int threshold = 0;
  std::vector<SphereConstraint> children;

  static SphereConstraint count_eq(Sphere s, int t);
  static SphereConstraint count_gt(Sphere s, int t);
  static SphereConstraint all(std::vector<SphereConstraint> cs);
  static SphereConstraint any(std::vector<SphereConstraint> cs);
};

// The common radius of all atoms; throws MixedRadius if they disagree and
// InvalidArgument on negative thresholds or empty connectives.
int constraint_radius(const SphereConstraint& e);

// Acceptor for a constraint. Each atom is a saturating counter (0..t+1)
// advanced at positions whose sphere-automaton state projects to the atom's
// sphere along the canonical run; CountEq accepts at t, CountGt at t+1.
// Conjunction and disjunction combine the atom verdicts.
class ConstraintAcceptor {
 public:
  ConstraintAcceptor(SphereConstraint e, int r);
  bool accepts(const NestedWord& w) const;
  int radius() const { return r_; }

 private:
  bool decide(const SphereConstraint& e, const std::vector<SphereKey>& projected) const;

  SphereConstraint e_;
  int r_;
};

ConstraintAcceptor compile_constraint(const SphereConstraint& e, int r);

// Reference semantics: count realizations with the spheres module directly.
bool direct_count_verdict(const SphereConstraint& e, const NestedWord& w);

// Each symbol a becomes the family (a, M) for M a subset of {1..m}, with the
// class and stack of a. Symbol (a, M) is named "a{1,3}" style, "a{}" for the
// empty mark set.
AlphabetPtr expand_alphabet(const AlphabetPtr& alphabet, int m);

// Forgets the marks: every transition on (a, M) becomes a transition on a.
Mnwa project(const Mnwa& b, int m);

}  // namespace nw
