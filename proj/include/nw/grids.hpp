#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nw/logic.hpp"

namespace nw {

// The n x m grid: node (i, j) has row i in 1..n and column j in 1..m. Odd
// columns carry the label Pa, even columns Pb; succ1 steps down a column,
// succ2 steps right along a row. Node (i, j) has index (j-1)*n + (i-1).
class GridStructure : public Structure {
 public:
  GridStructure(int n, int m);
  int size() const override { return n_ * m_; }
  bool relation(std::string_view name, const std::vector<int>& args) const override;

  int n() const { return n_; }
  int m() const { return m_; }
  int node(int i, int j) const { return (j - 1) * n_ + (i - 1); }
  int row(int u) const { return u % n_ + 1; }
  int column(int u) const { return u / n_ + 1; }

 private:
  int n_, m_;
};

struct GridEncoding {
  int n = 0, m = 0;
  NestedWord word;
  std::vector<int> chi;  // grid node -> word position (0-based)

  // Copy 1 of node u is chi(u), copy 2 is its matching return.
  int chibar(int copy, int u) const;
};

// Encodes G(n, m) as a word over two_stack_alphabet(): a column of a's, then
// alternating (a~ b)^n and (b~ a)^n blocks, closed by a~^n (odd m) or
// (a~ b)^n b~^n (even m).
GridEncoding encode(int n, int m);

// First-order formulas defining the word in the grid and the grid in the word.
// Grid-side formulas use the relations Pa, Pb, succ1, succ2; word-side ones use
// labels a, a~, b, b~, succ and match. Variables are x1, x2 (and z internally).
struct ReductionFormulas {
  FormulaPtr copies;  // on the word: pairs (copy 1 of u, copy 2 of u)
  // Grid formulas for the word relations, indexed by copy numbers (0 for copy 1).
  std::vector<std::vector<FormulaPtr>> label;  // [symbol][k]
  FormulaPtr succ[2][2];
  FormulaPtr match[2][2];
  // Word formulas for the grid relations.
  FormulaPtr pa, pb, succ1, succ2;
};

ReductionFormulas reduction_formulas();

struct ReductionReport {
  bool ok = true;
  std::string failure;  // first failing tuple, empty on success
  long checked = 0;
};

// Checks every defining equivalence by evaluating both sides on all tuples.
// Throws BoundsExceeded unless 1 <= n, m <= 8.
ReductionReport verify_reduction(int n, int m);
ReductionReport verify_reduction(int n, int m, const ReductionFormulas& f);

// Membership in the image of the encoding, as the conjunction of the shape
// check, total matching and the offset conditions between matched calls with
// equal labels. Throws AlphabetMismatch unless w is over two_stack_alphabet().
bool image_membership(const NestedWord& w);
bool image_shape(const NestedWord& w);
bool image_total_matching(const NestedWord& w);
bool image_offsets(const NestedWord& w);

// The offset conditions as a plain first-order sentence over word structures.
FormulaPtr image_offsets_formula();

std::string to_dot(const GridEncoding& e);

}  // namespace nw
