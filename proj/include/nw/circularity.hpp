#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nw/core.hpp"

namespace nw {

// One step of a walk through a nested word: along the successor relation, or
// along a matching edge of one stack (call to return, or return to call).
struct Direction {
  enum class Move { Fwd, Bwd, Jump, Back };
  Move move = Move::Fwd;
  int stack = 0;  // 0-based, only meaningful for Jump and Back

  bool operator==(const Direction&) const = default;
};
using DirectionString = std::vector<Direction>;

// Tokens fwd, bwd, jump1, back1, jump2, back2 (jumpK/backK for any K >= 1).
DirectionString parse_directions(std::string_view text);
std::string format_directions(const DirectionString& w);

// The position reached from i by one step, if the step applies there.
std::optional<int> step(const NestedWord& w, int i, Direction d);

// End positions of walks from i spelling `path`. Every step is deterministic,
// so the result has at most one element. With `distinct`, positions i_0..i_{m-1}
// must be pairwise distinct and i_m must avoid i_1..i_{m-1}.
std::set<int> path_exists(const NestedWord& w, const DirectionString& path, int i, bool distinct);

struct CircularityVerdict {
  bool circular = false;
  int bound = 0;
  Word witness;      // over two_stack_alphabet(), empty if not circular
  int position = -1;  // 0-based start of the closed walk in the witness
};

// Bounded search for a nested word of length <= bound over two_stack_alphabet()
// and a position i with a closed distinct walk from i to i spelling `path`.
// Enumerates placements of the walk's positions, then decides whether the
// forced labels and matching pairs extend to a full word. Throws BoundTooSmall
// if bound < |path| + 1.
CircularityVerdict is_circular(const DirectionString& path, int bound);

enum class TopoLetter { Fwd2, Bwd2, Cw, Ccw };
std::vector<TopoLetter> f_map(const DirectionString& w);
std::string format_topo(const std::vector<TopoLetter>& t);

}  // namespace nw
