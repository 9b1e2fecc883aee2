#include <functional>
#include <set>

#include "doctest.h"
#include "nw/error.hpp"
#include "nw/grids.hpp"

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

std::string text(const NestedWord& w) { return format_word(*w.alphabet(), w.word()); }

}  // namespace

TEST_CASE("grid structure") {
  const GridStructure g(3, 4);
  CHECK(g.size() == 12);
  CHECK(g.relation("succ1", {g.node(1, 2), g.node(2, 2)}));
  CHECK_FALSE(g.relation("succ1", {g.node(3, 2), g.node(1, 3)}));
  CHECK(g.relation("succ2", {g.node(2, 1), g.node(2, 2)}));
  CHECK(g.relation("Pa", {g.node(3, 3)}));
  CHECK(g.relation("Pb", {g.node(1, 4)}));
  CHECK_FALSE(g.relation("Pa", {g.node(1, 2)}));
}

TEST_CASE("encodings") {
  CHECK(text(encode(3, 4).word) == "a a a a~ b a~ b a~ b b~ a b~ a b~ a a~ b a~ b a~ b b~ b~ b~");
  CHECK(text(encode(1, 1).word) == "a a~");
  const auto e = encode(3, 4);
  CHECK(e.chi[GridStructure(3, 4).node(1, 2)] == 8);
  CHECK(e.chibar(1, 0) == e.chi[0]);
  CHECK(e.chibar(2, 0) == e.word.return_of(e.chi[0]));
  CHECK(to_dot(e).find("digraph") != std::string::npos);
}

TEST_CASE("encoding invariants") {
  std::set<std::string> seen;
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      const auto e = encode(n, m);
      CHECK(e.word.length() == 2 * n * m);
      std::set<int> image;
      for (int u = 0; u < n * m; ++u)
        for (int copy = 1; copy <= 2; ++copy) image.insert(e.chibar(copy, u));
      CHECK(static_cast<int>(image.size()) == 2 * n * m);
      CHECK(*image.rbegin() == 2 * n * m - 1);
      CHECK(e.word.pending_calls().empty());
      CHECK(e.word.pending_returns().empty());
      CHECK(image_membership(e.word));
      seen.insert(text(e.word));
    }
  CHECK(seen.size() == 16);
}

TEST_CASE("reduction formulas hold") {
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 4; ++m) {
      const auto report = verify_reduction(n, m);
      CHECK_MESSAGE(report.ok, report.failure);
      CHECK(report.checked > 0);
    }
  CHECK(verify_reduction(3, 4).checked == 2136);
  CHECK(kind_of([] { verify_reduction(0, 2); }) == ErrorKind::BoundsExceeded);
  CHECK(kind_of([] { verify_reduction(2, 9); }) == ErrorKind::BoundsExceeded);
}

TEST_CASE("a mistyped column successor is caught") {
  auto f = reduction_formulas();
  f.succ2 = parse_formula("(succ x1 x2)");
  const auto report = verify_reduction(2, 2, f);
  CHECK_FALSE(report.ok);
  CHECK(report.failure.find("succ2") != std::string::npos);
}

TEST_CASE("image membership") {
  CHECK(image_membership(word("a a~")));
  CHECK_FALSE(image_membership(word("a b a~ b~")));
  CHECK_FALSE(image_shape(word("a b a~ b~")));
  CHECK_FALSE(image_total_matching(word("a a a~")));
  const auto sigma = Alphabet::make({{{{"a"}, {"a~"}}, {{"b"}, {"b~"}}}, {"c"}});
  CHECK(kind_of([&] { image_membership(nested(sigma, parse_word(*sigma, "a a~"))); }) ==
        ErrorKind::AlphabetMismatch);
}

TEST_CASE("single-symbol mutations leave the image") {
  const auto sigma = two_stack_alphabet();
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      const auto base = encode(n, m).word.word();
      for (std::size_t i = 0; i < base.size(); ++i)
        for (Symbol x = 0; x < sigma->size(); ++x) {
          if (x == base[i]) continue;
          auto w = base;
          w[i] = x;
          REQUIRE_FALSE(image_membership(nested(sigma, w)));
        }
    }
}

TEST_CASE("native offset conditions match their first-order form") {
  const auto sigma = two_stack_alphabet();
  const auto f = image_offsets_formula();
  CHECK(is_fo(*f));
  int holds = 0;
  auto check = [&](const NestedWord& w) {
    const bool native = image_offsets(w);
    REQUIRE_MESSAGE(native == eval(w, *f), text(w));
    holds += native;
  };
  for_each_word(*sigma, 6, [&](const Word& wd) { check(nested(sigma, wd)); });
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) check(encode(n, m).word);
  CHECK(holds > 0);
}
