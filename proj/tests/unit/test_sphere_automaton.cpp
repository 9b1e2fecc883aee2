#include <algorithm>

#include "doctest.h"
#include "nw/error.hpp"
#include "nw/sphere_automaton.hpp"
#include "oracles.hpp"

using namespace nw;

namespace {

NestedWord word(const std::string& text) {
  const auto sigma = two_stack_alphabet();
  return nested(sigma, parse_word(*sigma, text));
}

SphereState singleton(const NestedWord& w, int i, int r) {
  SphereState q;
  q.radius = r;
  auto core = make_core(sphere(w, i, r));
  q.members.push_back({core, core->sphere.center, 1});
  q.normalize();
  return q;
}

int centered_members(const SphereState& q) {
  return static_cast<int>(std::count_if(q.members.begin(), q.members.end(), [](const ExtendedSphere& e) {
    return e.active == e.sphere().center;
  }));
}

}  // namespace

TEST_CASE("state predicates") {
  const SphereState none;
  CHECK(is_valid(none));
  CHECK(is_final(none));
  CHECK_FALSE(is_calling(none));

  const auto a = singleton(word("a"), 0, 0);
  CHECK(is_valid(a));
  CHECK(is_final(a));
  CHECK_FALSE(is_calling(a));

  // Same core and color twice with different active nodes.
  const auto w = word("a a~");
  auto q = singleton(w, 0, 1);
  auto dup = q.members[0];
  dup.active = dup.sphere().match_out[dup.active];
  q.members.push_back(dup);
  q.normalize();
  CHECK_FALSE(is_valid(q));
  CHECK(is_calling(singleton(w, 0, 1)));
}

TEST_CASE("initial transitions") {
  const auto a = singleton(word("a"), 0, 0);
  CHECK(delta_allows(SphereState{}, nullptr, two_stack_alphabet()->at("a"), a));
  CHECK_FALSE(delta_allows(SphereState{}, nullptr, two_stack_alphabet()->at("a"), SphereState{}));
  CHECK_FALSE(delta_allows(SphereState{}, nullptr, two_stack_alphabet()->at("b"), a));
}

TEST_CASE("canonical runs of tiny words") {
  const auto w = word("a a~");
  const auto run = canonical_run(w, 1);
  REQUIRE(run.size() == 2);
  CHECK(run[0].members.size() == 2);
  CHECK(centered_members(run[0]) == 1);
  CHECK(eta(run[0], w.alphabet()).size() == 2);
  CHECK(isomorphic(eta(run[0], w.alphabet()), sphere(w, 0, 1)));
  CHECK(br_run_verify(w, 1, run));

  const auto single = canonical_run(word("a"), 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].members.size() == 1);
  CHECK(single[0].members[0].color == 1);
}

TEST_CASE("the run on the running example") {
  const auto w = word("a b a b a~ a~ a~ b~ b~ b~");
  const auto run = canonical_run(w, 1);
  REQUIRE(run.size() == 10);
  for (const auto& q : run) {
    CHECK(is_valid(q));
    CHECK(centered_members(q) == 1);
  }
  CHECK(br_run_verify(w, 1, run));
  // The depicted step from position 4 to the matched return at 5.
  CHECK(run[3].members.size() == 4);
  CHECK(run[4].members.size() == 4);
  CHECK(delta_allows(run[3], &run[2], w.label(4), run[4]));
  CHECK_FALSE(is_final(run[3]));
  CHECK_FALSE(is_final(run[4]));
  CHECK_FALSE(delta_allows(run[3], nullptr, w.label(4), run[4]));
}

TEST_CASE("verification rejects broken runs") {
  const auto w = word("a a~");
  auto run = canonical_run(w, 1);
  auto bad = run;
  bad[1] = run[0];
  CHECK(is_valid(bad[1]));
  CHECK_FALSE(is_final(bad[1]));
  CHECK_FALSE(br_run_verify(w, 1, bad));

  const auto x = word("a b a b a~ a~ a~ b~ b~ b~");
  auto colored = canonical_run(x, 1);
  auto& q = colored[4];
  auto clash = q.members[0];
  for (int u = 0; u < clash.sphere().size(); ++u)
    if (u != clash.active && !q.contains(clash.core, u, clash.color)) {
      clash.active = u;
      break;
    }
  q.members.push_back(clash);
  q.normalize();
  CHECK_FALSE(br_run_verify(x, 1, colored));

  CHECK_THROWS_AS(br_run_verify(w, 1, {run[0]}), Error);
}

TEST_CASE("eta") {
  const auto w = word("b a b~ a~");
  const auto q = singleton(w, 1, 0);
  CHECK(canonical_key(eta(q, w.alphabet())) == canonical_key(sphere(w, 1, 0)));
  const auto placeholder = eta(SphereState{}, w.alphabet());
  CHECK(placeholder.size() == 1);
  CHECK(placeholder.labels[0] == 0);
}

TEST_CASE("canonical runs project to the true spheres and simulate paths") {
  const auto sigma = two_stack_alphabet();
  for_each_word(*sigma, 6, [&](const Word& wd) {
    const auto w = nested(sigma, wd);
    for (int r = 0; r <= 2; ++r) {
      const auto run = canonical_run(w, r);
      REQUIRE(br_run_verify(w, r, run));
      for (int i = 0; i < w.length(); ++i) {
        REQUIRE(oracle::brute_isomorphic(eta(run[i], sigma), sphere(w, i, r)));
        for (const auto& e : run[i].members) {
          const auto& s = e.sphere();
          const std::pair<int, int> steps[] = {{s.next[e.active], i + 1},
                                               {s.prev[e.active], i - 1},
                                               {s.match_out[e.active], w.return_of(i)},
                                               {s.match_in[e.active], w.call_of(i)}};
          for (const auto& [node, pos] : steps) {
            if (node < 0) continue;
            REQUIRE(pos >= 0);
            REQUIRE(pos < w.length());
            REQUIRE(run[pos].contains(e.core, node, e.color));
          }
        }
      }
    }
  });
}

TEST_CASE("overlap colorings") {
  const auto plain = chi_coloring(word("a a~ a a~"), 1);
  CHECK(plain.color == std::vector<int>{1, 1, 1, 1});
  const auto returns = chi_coloring(word("a~ a~ a~ a~"), 1);
  CHECK(returns.color[1] != returns.color[2]);
  CHECK(chi_coloring(word("b"), 2).color == std::vector<int>{1});
}

TEST_CASE("run rendering") {
  const auto w = word("a b a~ b~");
  const auto text = describe(canonical_run(w, 1)[0]);
  CHECK(text.find('*') != std::string::npos);
  CHECK(to_dot(w, canonical_run(w, 1)).find("digraph") != std::string::npos);
}
