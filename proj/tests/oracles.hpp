#pragma once

// Reference implementations used only by the test suites. Each one follows a
// definition directly and shares no algorithm with the library code it checks.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "nw/automata.hpp"
#include "nw/logic.hpp"
#include "nw/spheres.hpp"

namespace oracle {

// Roles of two_stack_alphabet(): a a~ b b~.
enum Tok { A = 0, ABAR = 1, B = 2, BBAR = 3 };

// Membership in L+ with L = { (a b)^n a~^(n+1) b~^(n+1) : n >= 1 }, by
// splitting into maximal blocks and counting.
bool in_lplus(const nw::Word& w);

// Balanced projection to the calls and returns of one stack, via the grammar
// S -> eps | call S return S.
bool well_formed(const nw::Alphabet& sigma, int stack, const nw::Word& w);

// Matching edges straight from the definition: i < j, a call and a return of
// the same stack, and the stack projection strictly between them is balanced.
std::set<nw::MatchEdge> matching(const nw::Alphabet& sigma, const nw::Word& w);

// Depth-first search for an accepting MVPA run with explicit stacks.
bool mvpa_accepts(const nw::Mvpa& a, const nw::Word& w);

// Search for an accepting run of a generalized MNWA over the nested word,
// memoized on the state before position i together with the states at calls
// whose return is still ahead.
bool mnwa_accepts(const nw::Mnwa& b, const nw::NestedWord& w);

// Every accepting run (bounded by `limit`), for flag-trace fixtures.
std::vector<std::vector<int>> mnwa_runs(const nw::Mnwa& b, const nw::NestedWord& w, int limit);

nw::Mvpa random_mvpa(std::mt19937& rng, int max_states);
nw::Mnwa random_mnwa(std::mt19937& rng, int max_states, bool calling);

// Ball of radius r around i from an all-pairs distance matrix.
std::vector<int> ball(const nw::NestedWord& w, int i, int r);

// Isomorphism of two spheres by backtracking over bijections.
bool brute_isomorphic(const nw::Sphere& s, const nw::Sphere& t);

// Isomorphism of the induced neighbourhoods of (w1, i1) and (w2, i2).
bool same_neighbourhood(const nw::NestedWord& w1, int i1, const nw::NestedWord& w2, int i2, int r);

// Formula evaluation by tables: each subformula denotes the set of satisfying
// assignments to its free variables. Set variables range over bitmasks.
bool eval(const nw::NestedWord& w, const nw::Formula& f);

// Count of positions of w whose neighbourhood matches position c of model.
int sphere_count(const nw::NestedWord& w, const nw::NestedWord& model, int c, int r);

// All words over `sigma` up to `max_length`, plus every position, searched for
// a closed distinct walk spelling the directions (given as tokens).
bool brute_circular(const std::vector<std::string>& directions, int max_length);

}  // namespace oracle
