#include <set>

#include "doctest.h"
#include "nw/core.hpp"
#include "nw/error.hpp"
#include "oracles.hpp"

using namespace nw;

namespace {

NestedWord word(const std::string& text) {
  const auto sigma = two_stack_alphabet();
  return nested(sigma, parse_word(*sigma, text));
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("alphabet layout") {
  const auto sigma = two_stack_alphabet();
  CHECK(sigma->size() == 4);
  CHECK(sigma->stacks() == 2);
  CHECK(sigma->at("a") == 0);
  CHECK(sigma->at("a~") == 1);
  CHECK(sigma->at("b") == 2);
  CHECK(sigma->at("b~") == 3);
  CHECK(sigma->is_call(0, 0));
  CHECK(sigma->is_return(3, 1));
  CHECK_FALSE(sigma->is_call(2, 0));
  CHECK(kind_of([&] { sigma->at("c"); }) == ErrorKind::UnknownSymbol);
  CHECK(kind_of([] { Alphabet::make({{{{"a"}, {"a"}}}, {}}); }) == ErrorKind::DuplicateSymbol);
  CHECK(kind_of([] { Alphabet::make({}); }) == ErrorKind::EmptyAlphabet);
}

TEST_CASE("internal symbols") {
  const auto sigma = Alphabet::make({{{{"c"}, {"r"}}}, {"i"}});
  const auto w = nested(sigma, parse_word(*sigma, "c i r i"));
  CHECK(sigma->is_internal(sigma->at("i")));
  CHECK(w.return_of(0) == 2);
  CHECK(w.pending_calls().empty());
  CHECK(w.pending_returns().empty());
}

TEST_CASE("matching of the running example") {
  const auto w = word("a b a b a~ a~ a~ b~ b~ b~");
  const std::vector<MatchEdge> expected{{0, 5, 0}, {1, 8, 1}, {2, 4, 0}, {3, 7, 1}};
  CHECK(w.matching() == expected);
  CHECK(w.pending_calls().empty());
  CHECK(w.pending_returns() == std::vector<int>{6, 9});
  CHECK(w.call_of(5) == 0);
  CHECK(w.return_of(1) == 8);
  CHECK(w.return_of(6) == -1);
}

TEST_CASE("small matchings") {
  const auto single = word("a");
  CHECK(single.matching().empty());
  CHECK(single.pending_calls() == std::vector<int>{0});

  const auto crossing = word("b a a~ b~");
  const std::vector<MatchEdge> expected{{0, 3, 1}, {1, 2, 0}};
  CHECK(crossing.matching() == expected);
}

TEST_CASE("string round trip") {
  const auto sigma = two_stack_alphabet();
  for (const char* text : {"a a~", "a b a b a~ a~ a~ b~ b~ b~", "b a a~ b~"})
    CHECK(format_word(*sigma, word(text).word()) == text);
}

TEST_CASE("empty and malformed input") {
  const auto sigma = two_stack_alphabet();
  CHECK(kind_of([&] { nested(sigma, {}); }) == ErrorKind::EmptyWord);
  CHECK(kind_of([&] { parse_word(*sigma, "a x"); }) == ErrorKind::UnknownSymbol);
  CHECK(kind_of([&] { distance(word("a a~"), 0, 5); }) == ErrorKind::PositionOutOfRange);
}

TEST_CASE("distances") {
  const auto w = word("a b a b a~ a~ a~ b~ b~ b~");
  CHECK(distance(w, 0, 5) == 1);
  CHECK(distance(w, 6, 9) == 3);
  for (int i = 0; i < w.length(); ++i) CHECK(distance(w, i, i) == 0);
  const auto d = distances_from(w, 6, 2);
  CHECK(d[9] < 0);
  CHECK(d[8] == 2);
}

TEST_CASE("corpus order") {
  const auto sigma = two_stack_alphabet();
  std::vector<std::string> seen;
  for_each_word(*sigma, 2, [&](const Word& w) { seen.push_back(format_word(*sigma, w)); });
  REQUIRE(seen.size() == 20);
  CHECK(seen[0] == "a");
  CHECK(seen[3] == "b~");
  CHECK(seen[4] == "a a");
  CHECK(seen[19] == "b~ b~");
  long count = 0;
  for_each_word(*sigma, 3, [&](const Word&) { ++count; });
  CHECK(count == 84);
}

TEST_CASE("matching agrees with the interior-balance definition") {
  const auto sigma = two_stack_alphabet();
  long words = 0;
  for_each_word(*sigma, 7, [&](const Word& wd) {
    ++words;
    const auto w = nested(sigma, wd);
    const auto m = w.matching();
    REQUIRE(std::set<MatchEdge>(m.begin(), m.end()) == oracle::matching(*sigma, wd));
    for (int s = 0; s < 2; ++s) REQUIRE(is_well_formed(*sigma, s, wd) == oracle::well_formed(*sigma, s, wd));
    // Gaifman degree at most 3, and arcs of one stack never cross.
    for (const auto& e : m)
      for (const auto& f : m)
        if (e.stack == f.stack) REQUIRE_FALSE((e.call < f.call && f.call < e.ret && e.ret < f.ret));
  });
  CHECK(words == 21844);
}

TEST_CASE("three-stack matching") {
  const auto sigma = Alphabet::make({{{{"a"}, {"a~"}}, {{"b"}, {"b~"}}, {{"c"}, {"c~"}}}, {}});
  const auto w = nested(sigma, parse_word(*sigma, "a c a c c~ b c~ b b~ a~ b~ a~"));
  const auto m = w.matching();
  CHECK(std::set<MatchEdge>(m.begin(), m.end()) == oracle::matching(*sigma, w.word()));
  CHECK(w.pending_calls().empty());
  CHECK(w.pending_returns().empty());
}

TEST_CASE("dot rendering") {
  const auto dot = to_dot(word("a a~"));
  CHECK(dot.find("1:a") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
}
