#include <algorithm>
#include <random>

#include "doctest.h"
#include "nw/automata.hpp"
#include "nw/error.hpp"
#include "nw/io.hpp"
#include "oracles.hpp"

using namespace nw;

namespace {

const std::string kFixtures = NW_FIXTURES;

NestedWord word(const std::string& text) {
  const auto sigma = two_stack_alphabet();
  return nested(sigma, parse_word(*sigma, text));
}

Mvpa lplus_mvpa() { return std::get<Mvpa>(parse_automaton(read_text_file(kFixtures + "/lplus.mvpa.json"))); }
Mnwa lplus_mnwa() { return std::get<Mnwa>(parse_automaton(read_text_file(kFixtures + "/lplus.mnwa.json"))); }

int state(const std::vector<std::string>& names, const std::string& q) {
  const auto it = std::find(names.begin(), names.end(), q);
  REQUIRE(it != names.end());
  return static_cast<int>(it - names.begin());
}

std::vector<int> run_of(const Mnwa& b, std::initializer_list<const char*> qs) {
  std::vector<int> out;
  for (const char* q : qs) out.push_back(state(b.states, q));
  return out;
}

// An MNWA whose matched returns behave like its linear rules, so it reads the
// word as a plain finite automaton.
Mnwa finite(int n, std::vector<Mnwa::LinearRule> rules, std::vector<bool> initial, std::vector<bool> final) {
  Mnwa b;
  b.alphabet = two_stack_alphabet();
  for (int q = 0; q < n; ++q) b.states.push_back("f" + std::to_string(q));
  b.initial = std::move(initial);
  b.accepting = std::move(final);
  b.calling.assign(n, false);
  b.delta_linear = std::move(rules);
  for (const auto& r : b.delta_linear)
    if (b.alphabet->is_return(r.a))
      for (int p = 0; p < n; ++p) b.delta_return.push_back({p, r.from, r.a, r.to});
  return b;
}

Mnwa accept_all() {
  std::vector<Mnwa::LinearRule> rules;
  for (Symbol x = 0; x < 4; ++x) rules.push_back({0, x, 0});
  return finite(1, rules, {true}, {true});
}

Mnwa contains(Symbol target) {
  std::vector<Mnwa::LinearRule> rules;
  for (Symbol x = 0; x < 4; ++x) {
    rules.push_back({0, x, x == target ? 1 : 0});
    rules.push_back({1, x, 1});
  }
  return finite(2, rules, {true, false}, {false, true});
}

}  // namespace

TEST_CASE("fixture files agree with the built-in examples") {
  const auto a = lplus_mvpa(), e = example_mvpa();
  CHECK(a.states == e.states);
  CHECK(a.gamma == e.gamma);
  auto sorted = [](auto v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sorted(a.delta_call) == sorted(e.delta_call));
  CHECK(sorted(a.delta_return) == sorted(e.delta_return));
  const auto b = lplus_mnwa(), f = example_mnwa();
  CHECK(b.states == f.states);
  CHECK(sorted(b.delta_linear) == sorted(f.delta_linear));
  CHECK(sorted(b.delta_return) == sorted(f.delta_return));
}

TEST_CASE("MVPA acceptance on the running example") {
  const auto a = lplus_mvpa();
  CHECK(mvpa_accepts(a, word("a b a~ a~ b~ b~").word()));
  CHECK_FALSE(mvpa_accepts(a, word("a b a~ b~").word()));
  CHECK(mvpa_accepts(a, word("a b a~ a~ b~ b~ a b a~ a~ b~ b~").word()));
  CHECK(mvpa_accepts(a, word("a b a b a~ a~ a~ b~ b~ b~").word()));
  CHECK_THROWS_AS(mvpa_accepts(a, {}), Error);
}

TEST_CASE("MNWA run checks") {
  const auto b = lplus_mnwa();
  const auto w = word("a b a~ a~ b~ b~");
  CHECK(mnwa_run_check(b, w, run_of(b, {"q2", "q3", "q3", "q4", "q4", "q0"})));
  CHECK_FALSE(mnwa_run_check(b, w, run_of(b, {"q2", "q3", "q3", "q4", "q4", "q4"})));
  CHECK_FALSE(mnwa_run_check(b, word("a"), run_of(b, {"q2"})));
  try {
    mnwa_run_check(b, w, run_of(b, {"q2"}));
    FAIL("expected LengthMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("MNWA acceptance on the running example") {
  const auto b = lplus_mnwa();
  CHECK(mnwa_accepts(b, word("a b a~ a~ b~ b~")));
  CHECK(mnwa_accepts(b, word("a b a b a~ a~ a~ b~ b~ b~")));
  CHECK_FALSE(mnwa_accepts(b, word("a~")));
}

TEST_CASE("MVPA to MNWA construction") {
  const auto b = mvpa_to_mnwa(lplus_mvpa());
  CHECK(b.size() == 10);
  CHECK_FALSE(b.has_calling_states());
  // A pop of $ in q3 on a~ needs the call to have pushed $: the calling
  // position's state carries $, the state before the return is any (q3, A).
  const auto& sigma = *b.alphabet;
  for (const char* top : {"_|_", "$"})
    for (const char* after : {"_|_", "$"}) {
      const Mnwa::ReturnRule r{state(b.states, "q2|$"), state(b.states, std::string("q3|") + top),
                               sigma.at("a~"), state(b.states, std::string("q3|") + after)};
      CHECK(std::find(b.delta_return.begin(), b.delta_return.end(), r) != b.delta_return.end());
    }

  Mvpa empty;
  empty.alphabet = two_stack_alphabet();
  empty.states = {"s"};
  empty.gamma = {"_|_"};
  empty.initial = {true};
  empty.accepting = {true};
  const auto e = mvpa_to_mnwa(empty);
  CHECK(e.delta_linear.empty());
  CHECK(e.delta_return.empty());
}

TEST_CASE("MNWA to MVPA construction") {
  const auto a = mnwa_to_mvpa(lplus_mnwa());
  CHECK(a.gamma.size() == 6);
  const auto& sigma = *a.alphabet;
  const int q1 = state(a.states, "q1"), q2 = state(a.states, "q2");
  const Mvpa::CallRule push{q2, sigma.at("b"), state(a.gamma, "q1"), q1};
  CHECK(std::find(a.delta_call.begin(), a.delta_call.end(), push) != a.delta_call.end());

  auto flags = std::get<Mnwa>(parse_automaton(read_text_file(kFixtures + "/flags.mnwa.json")));
  try {
    mnwa_to_mvpa(flags);
    FAIL("expected CallingStatesPresent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CallingStatesPresent);
  }
}

TEST_CASE("flag trace of the degeneralization") {
  const auto b = std::get<Mnwa>(parse_automaton(read_text_file(kFixtures + "/flags.mnwa.json")));
  const auto w = word("a b a b a~ a~ a~ b~ b~ b~");
  const auto runs = oracle::mnwa_runs(b, w, 4);
  REQUIRE(runs.size() == 1);
  const std::vector<std::vector<int>> expected{{0, 0}, {1, 0}, {2, 1}, {2, 2}, {2, 2}, {2, 2},
                                               {0, 2}, {0, 2}, {0, 2}, {0, 0}, {0, 0}};
  CHECK(flag_trace(b, w, runs[0]) == expected);
  CHECK(mnwa_accepts(b, w));
  // A pending call read into a calling state is rejected.
  CHECK_FALSE(mnwa_accepts(b, word("a b a~ a~ b~ b~ a")));
  CHECK_FALSE(oracle::mnwa_accepts(b, word("a b a~ a~ b~ b~ a")));
}

TEST_CASE("degeneralization with no calling states keeps the language") {
  const auto b = lplus_mnwa();
  const auto d = degeneralize(b);
  CHECK_FALSE(d.has_calling_states());
  const auto sigma = two_stack_alphabet();
  const MnwaAcceptor acc(d);
  for_each_word(*sigma, 6, [&](const Word& wd) {
    REQUIRE(acc.accepts(wd) == oracle::mnwa_accepts(b, nested(sigma, wd)));
  });
}

TEST_CASE("simulator frontiers respect visibility") {
  std::mt19937 rng(7);
  const auto sigma = two_stack_alphabet();
  for (int t = 0; t < 5; ++t) {
    const auto a = oracle::random_mvpa(rng, 4);
    const MvpaSimulator sim(a);
    for_each_word(*sigma, 5, [&](const Word& wd) {
      auto f = sim.start();
      for (auto x : wd) {
        f = sim.step(f, x);
        for (const auto& c : f)
          for (int s = 0; s < 2; ++s) REQUIRE(c.stacks[s].size() == f.front().stacks[s].size());
      }
      REQUIRE(sim.accepting(f) == oracle::mvpa_accepts(a, wd));
    });
  }
}

TEST_CASE("run checks use nested rules exactly at matched returns") {
  std::mt19937 rng(11);
  const auto sigma = two_stack_alphabet();
  for (int t = 0; t < 6; ++t) {
    const auto b = oracle::random_mnwa(rng, 3, t % 2 == 1);
    for_each_word(*sigma, 4, [&](const Word& wd) {
      const auto w = nested(sigma, wd);
      const auto runs = oracle::mnwa_runs(b, w, 1 << 20);
      std::vector<int> run(w.length(), 0);
      // Every assignment of states, compared against the enumerated runs.
      while (true) {
        const bool listed = std::find(runs.begin(), runs.end(), run) != runs.end();
        REQUIRE(mnwa_run_check(b, w, run) == listed);
        int k = 0;
        while (k < w.length() && ++run[k] == b.size()) run[k++] = 0;
        if (k == w.length()) break;
      }
    });
  }
}

TEST_CASE("products") {
  const auto sigma = two_stack_alphabet();
  const auto b = lplus_mnwa();
  const MnwaAcceptor with_all(product(b, accept_all(), ProductMode::Intersection));
  const MnwaAcceptor doubled(product(b, b, ProductMode::Union));
  const MnwaAcceptor both(product(contains(0), contains(2), ProductMode::Intersection));
  const MnwaAcceptor either(product(contains(0), contains(2), ProductMode::Union));
  for_each_word(*sigma, 6, [&](const Word& wd) {
    const bool in_b = oracle::in_lplus(wd);
    const bool has_a = std::count(wd.begin(), wd.end(), 0) > 0;
    const bool has_b = std::count(wd.begin(), wd.end(), 2) > 0;
    REQUIRE(with_all.accepts(wd) == in_b);
    REQUIRE(doubled.accepts(wd) == in_b);
    REQUIRE(both.accepts(wd) == (has_a && has_b));
    REQUIRE(either.accepts(wd) == (has_a || has_b));
  });
  const auto other = Alphabet::make({{{{"c"}, {"c~"}}}, {}});
  auto c = accept_all();
  c.alphabet = other;
  CHECK_THROWS_AS(product(b, c, ProductMode::Union), Error);
}

TEST_CASE("products of generalized automata") {
  std::mt19937 rng(5);
  const auto sigma = two_stack_alphabet();
  for (int t = 0; t < 4; ++t) {
    const auto b1 = oracle::random_mnwa(rng, 3, true), b2 = oracle::random_mnwa(rng, 3, true);
    const MnwaAcceptor meet(product(b1, b2, ProductMode::Intersection));
    const MnwaAcceptor join(product(b1, b2, ProductMode::Union));
    for_each_word(*sigma, 5, [&](const Word& wd) {
      const auto w = nested(sigma, wd);
      const bool x = oracle::mnwa_accepts(b1, w), y = oracle::mnwa_accepts(b2, w);
      REQUIRE(meet.accepts(wd) == (x && y));
      REQUIRE(join.accepts(wd) == (x || y));
    });
  }
}

TEST_CASE("malformed automata") {
  Mvpa a = lplus_mvpa();
  a.delta_call.push_back({0, 0, 0, 0});  // pushes the bottom marker
  CHECK_THROWS_AS(a.validate(), Error);
  Mnwa b = lplus_mnwa();
  b.delta_return.push_back({0, 0, 0, 0});  // nested rule on a call symbol
  CHECK_THROWS_AS(b.validate(), Error);
  CHECK_THROWS_AS(parse_automaton("{\"kind\": \"mnwa\", \"states\": [\"p\", \"p\"]}"), Error);
  CHECK_THROWS_AS(parse_automaton("not json"), Error);
}

TEST_CASE("automaton files round trip") {
  const auto a = lplus_mvpa();
  const auto again = std::get<Mvpa>(parse_automaton(automaton_to_json(a)));
  CHECK(again.states == a.states);
  CHECK(again.delta_return == a.delta_return);
  const auto b = degeneralize(std::get<Mnwa>(parse_automaton(read_text_file(kFixtures + "/flags.mnwa.json"))));
  const auto b2 = std::get<Mnwa>(parse_automaton(automaton_to_json(b)));
  CHECK(b2.states == b.states);
  CHECK(b2.delta_linear == b.delta_linear);
}
