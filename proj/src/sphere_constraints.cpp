#include "nw/sphere_constraints.hpp"

#include <algorithm>

namespace nw {

SphereConstraint SphereConstraint::count_eq(Sphere s, int t) {
  SphereConstraint c;
  c.kind = Kind::CountEq;
  c.sphere = std::make_shared<const Sphere>(canonical(s));
  c.threshold = t;
  return c;
}

SphereConstraint SphereConstraint::count_gt(Sphere s, int t) {
  auto c = count_eq(std::move(s), t);
  c.kind = Kind::CountGt;
  return c;
}

SphereConstraint SphereConstraint::all(std::vector<SphereConstraint> cs) {
  SphereConstraint c;
  c.kind = Kind::And;
  c.children = std::move(cs);
  return c;
}

SphereConstraint SphereConstraint::any(std::vector<SphereConstraint> cs) {
  auto c = all(std::move(cs));
  c.kind = Kind::Or;
  return c;
}

namespace {

void collect_radius(const SphereConstraint& e, int& r) {
  using K = SphereConstraint::Kind;
  if (e.kind == K::And || e.kind == K::Or) {
    if (e.children.empty()) fail(ErrorKind::InvalidArgument, "connective without operands");
    for (const auto& c : e.children) collect_radius(c, r);
    return;
  }
  if (!e.sphere) fail(ErrorKind::InvalidArgument, "count atom without a sphere");
  if (e.threshold < 0) fail(ErrorKind::InvalidArgument, "negative threshold");
  if (r >= 0 && e.sphere->radius != r)
    fail(ErrorKind::MixedRadius, "count atoms use different radii");
  r = e.sphere->radius;
}

}  // namespace

int constraint_radius(const SphereConstraint& e) {
  int r = -1;
  collect_radius(e, r);
  return r;
}

ConstraintAcceptor::ConstraintAcceptor(SphereConstraint e, int r) : e_(std::move(e)), r_(r) {
  if (constraint_radius(e_) != r) fail(ErrorKind::MixedRadius, "atoms do not have radius r");
}

bool ConstraintAcceptor::accepts(const NestedWord& w) const {
  const auto run = canonical_run(w, r_);
  if (auto v = run_violation(w, r_, run))
    fail(ErrorKind::InvalidState, "canonical run rejected by the sphere automaton: " + *v);
  std::vector<SphereKey> projected;
  projected.reserve(run.size());
  for (const auto& q : run) projected.push_back(canonical_key(eta(q, w.alphabet())));
  return decide(e_, projected);
}

bool ConstraintAcceptor::decide(const SphereConstraint& e,
                                const std::vector<SphereKey>& projected) const {
  using K = SphereConstraint::Kind;
  switch (e.kind) {
    case K::And:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const SphereConstraint& c) { return decide(c, projected); });
    case K::Or:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const SphereConstraint& c) { return decide(c, projected); });
    case K::CountEq:
    case K::CountGt: {
      const auto key = canonical_key(*e.sphere);
      int counter = 0;
      for (const auto& k : projected)
        if (k == key) counter = std::min(counter + 1, e.threshold + 1);
      return e.kind == K::CountEq ? counter == e.threshold : counter == e.threshold + 1;
    }
  }
  return false;
}

ConstraintAcceptor compile_constraint(const SphereConstraint& e, int r) {
  return ConstraintAcceptor(e, r);
}

bool direct_count_verdict(const SphereConstraint& e, const NestedWord& w) {
  using K = SphereConstraint::Kind;
  switch (e.kind) {
    case K::And:
      return std::all_of(e.children.begin(), e.children.end(),
                         [&](const SphereConstraint& c) { return direct_count_verdict(c, w); });
    case K::Or:
      return std::any_of(e.children.begin(), e.children.end(),
                         [&](const SphereConstraint& c) { return direct_count_verdict(c, w); });
    case K::CountEq: return sphere_count(w, *e.sphere) == e.threshold;
    case K::CountGt: return sphere_count(w, *e.sphere) > e.threshold;
  }
  return false;
}

AlphabetPtr expand_alphabet(const AlphabetPtr& alphabet, int m) {
  if (m < 1 || m > 16) fail(ErrorKind::InvalidArgument, "mark count must be in 1..16");
  const unsigned sets = 1u << m;
  auto mark_name = [m](const std::string& a, unsigned mask) {
    std::string s = a + "{";
    bool first = true;
    for (int k = 0; k < m; ++k)
      if (mask >> k & 1) {
        if (!first) s += ',';
        s += std::to_string(k + 1);
        first = false;
      }
    return s + "}";
  };
  AlphabetSpec spec;
  Expansion ex;
  ex.base = alphabet;
  ex.marks = m;
  auto expand = [&](const std::vector<std::string>& names, std::vector<std::string>& out) {
    for (const auto& a : names)
      for (unsigned mask = 0; mask < sets; ++mask) {
        out.push_back(mark_name(a, mask));
        ex.origin.push_back({alphabet->at(a), mask});
      }
  };
  const auto& base = alphabet->spec();
  spec.stacks.resize(base.stacks.size());
  for (std::size_t s = 0; s < base.stacks.size(); ++s) {
    expand(base.stacks[s].calls, spec.stacks[s].calls);
    expand(base.stacks[s].returns, spec.stacks[s].returns);
  }
  expand(base.internal, spec.internal);
  return Alphabet::make_expanded(spec, std::move(ex));
}

Mnwa project(const Mnwa& b, int m) {
  b.validate();
  const auto* ex = b.alphabet->expansion();
  if (!ex || ex->marks != m)
    fail(ErrorKind::NotAnExpandedAlphabet, "automaton alphabet is not an expansion with that mark count");
  Mnwa p = b;
  p.alphabet = ex->base;
  for (auto& r : p.delta_linear) r.a = ex->origin[r.a].first;
  for (auto& r : p.delta_return) r.a = ex->origin[r.a].first;
  std::sort(p.delta_linear.begin(), p.delta_linear.end());
  p.delta_linear.erase(std::unique(p.delta_linear.begin(), p.delta_linear.end()),
                       p.delta_linear.end());
  std::sort(p.delta_return.begin(), p.delta_return.end());
  p.delta_return.erase(std::unique(p.delta_return.begin(), p.delta_return.end()),
                       p.delta_return.end());
  return p;
}

}  // namespace nw
