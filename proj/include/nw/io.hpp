#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nw/automata.hpp"
#include "nw/sphere_constraints.hpp"
#include "nw/spheres.hpp"

namespace nw {

// JSON file formats. Parse failures raise ParseError, missing files Io.
//
//   alphabet:   {"stacks": [{"calls": [...], "returns": [...]}], "internal": [...]}
//   automaton:  {"kind": "mvpa" | "mnwa", "alphabet": {...}, "states": [...],
//                "initial": [...], "final": [...],
//                mvpa: "bottom": "_|_", "gamma": [...],
//                      "delta_c": [[q, a, A, q']], "delta_r": [[q, a, A, q']],
//                      "delta_int": [[q, a, q']]
//                mnwa: "calling": [...], "delta_1": [[q, a, q']],
//                      "delta_2": [[p, q, a, q']]}
//   sphere:     {"nodes": [{"id": 1, "label": "a"}], "succ": [[1, 2]],
//                "match": [[1, 3, 1]], "center": 1, "radius": 1}
//               or {"word": "a b a~", "position": 2, "radius": 1} to take the
//               sphere realized in a word (positions 1-based).
//   constraint: {"alphabet": {...}, "radius": r, "expr": E} with E one of
//               {"count_eq": {"sphere": S, "t": t}}, {"count_gt": {...}},
//               {"and": [E, ...]}, {"or": [E, ...]}.
// The alphabet may be omitted wherever it is optional; it then defaults to
// two_stack_alphabet().

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

AlphabetPtr parse_alphabet(std::string_view json);
std::string alphabet_to_json(const Alphabet& alphabet);

using Automaton = std::variant<Mvpa, Mnwa>;
Automaton parse_automaton(std::string_view json);
std::string automaton_to_json(const Mvpa& a);
std::string automaton_to_json(const Mnwa& b);

Sphere parse_sphere(std::string_view json, const AlphabetPtr& alphabet);
std::string sphere_to_json(const Sphere& s);

struct ConstraintFile {
  AlphabetPtr alphabet;
  int radius = 0;
  SphereConstraint expr;
};
ConstraintFile parse_constraint(std::string_view json);

// One word per non-empty line; lines starting with '#' are comments.
std::vector<Word> parse_words(std::string_view text, const Alphabet& alphabet);

}  // namespace nw
