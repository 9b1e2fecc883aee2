#include "nw/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace nw {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key);
}

AlphabetPtr alphabet_from(const json& j) {
  AlphabetSpec spec;
  for (const auto& s : j.at("stacks"))
    spec.stacks.push_back({get_or<std::vector<std::string>>(s, "calls", {}),
                           get_or<std::vector<std::string>>(s, "returns", {})});
  spec.internal = get_or<std::vector<std::string>>(j, "internal", {});
  return Alphabet::make(spec);
}

json alphabet_json(const Alphabet& a) {
  json stacks = json::array();
  for (const auto& s : a.spec().stacks) stacks.push_back({{"calls", s.calls}, {"returns", s.returns}});
  return {{"stacks", stacks}, {"internal", a.spec().internal}};
}

AlphabetPtr optional_alphabet(const json& j) {
  if (!j.contains("alphabet")) return two_stack_alphabet();
  try {
    return alphabet_from(j.at("alphabet"));
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("alphabet: ") + e.what());
  }
}

class Names {
 public:
  explicit Names(const std::vector<std::string>& names, const char* what) : what_(what) {
    for (int k = 0; k < static_cast<int>(names.size()); ++k)
      if (!index_.emplace(names[k], k).second)
        fail(ErrorKind::MalformedAutomaton, std::string("duplicate ") + what + " '" + names[k] + "'");
  }
  int operator()(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      fail(ErrorKind::MalformedAutomaton, std::string("unknown ") + what_ + " '" + name + "'");
    return it->second;
  }

 private:
  const char* what_;
  std::map<std::string, int> index_;
};

std::vector<bool> flags(const json& j, const char* key, const Names& states, int n) {
  std::vector<bool> out(n, false);
  for (const auto& name : get_or<std::vector<std::string>>(j, key, {})) out[states(name)] = true;
  return out;
}

std::vector<std::vector<std::string>> rows(const json& j, const char* key, std::size_t width) {
  auto r = get_or<std::vector<std::vector<std::string>>>(j, key, {});
  for (const auto& row : r)
    if (row.size() != width)
      fail(ErrorKind::ParseError, std::string("rows of '") + key + "' need " +
                                      std::to_string(width) + " entries");
  return r;
}

std::vector<std::string> selected(const std::vector<std::string>& names, const std::vector<bool>& on) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < names.size(); ++k)
    if (on[k]) out.push_back(names[k]);
  return out;
}

Sphere sphere_from(const json& j, const AlphabetPtr& alphabet) {
  if (j.contains("word")) {
    const auto w = nested(alphabet, parse_word(*alphabet, get<std::string>(j, "word")));
    const int p = get<int>(j, "position");
    if (p < 1 || p > w.length()) fail(ErrorKind::PositionOutOfRange, "sphere position out of range");
    return sphere(w, p - 1, get<int>(j, "radius"));
  }
  Sphere s;
  s.alphabet = alphabet;
  s.radius = get<int>(j, "radius");
  std::map<int, int> id;
  for (const auto& node : j.at("nodes")) {
    const int k = static_cast<int>(s.labels.size());
    if (!id.emplace(get<int>(node, "id"), k).second)
      fail(ErrorKind::InvalidSphere, "duplicate node id");
    s.labels.push_back(alphabet->at(get<std::string>(node, "label")));
  }
  const int m = s.size();
  s.next.assign(m, -1);
  s.prev.assign(m, -1);
  s.match_out.assign(m, -1);
  s.match_in.assign(m, -1);
  auto node = [&](int ident) {
    auto it = id.find(ident);
    if (it == id.end()) fail(ErrorKind::InvalidSphere, "edge to an unknown node");
    return it->second;
  };
  auto set_once = [](int& slot, int v) {
    if (slot >= 0) fail(ErrorKind::InvalidSphere, "node has two edges of the same kind");
    slot = v;
  };
  for (const auto& e : get_or<std::vector<std::vector<int>>>(j, "succ", {})) {
    if (e.size() != 2) fail(ErrorKind::ParseError, "succ edges have two endpoints");
    set_once(s.next[node(e[0])], node(e[1]));
    set_once(s.prev[node(e[1])], node(e[0]));
  }
  for (const auto& e : get_or<std::vector<std::vector<int>>>(j, "match", {})) {
    if (e.size() != 3) fail(ErrorKind::ParseError, "match edges are [call, return, stack]");
    const int c = node(e[0]), r = node(e[1]);
    set_once(s.match_out[c], r);
    set_once(s.match_in[r], c);
    if (alphabet->cls(s.labels[c]).stack != e[2] - 1)
      fail(ErrorKind::InvalidSphere, "match edge stack tag disagrees with the labels");
  }
  s.center = node(get<int>(j, "center"));
  validate_sphere(s);
  return canonical(s);
}

SphereConstraint constraint_from(const json& j, const AlphabetPtr& alphabet) {
  if (!j.is_object() || j.size() != 1)
    fail(ErrorKind::ParseError, "constraint nodes have exactly one key");
  const auto& [key, body] = *j.items().begin();
  if (key == "and" || key == "or") {
    std::vector<SphereConstraint> cs;
    for (const auto& c : body) cs.push_back(constraint_from(c, alphabet));
    return key == "and" ? SphereConstraint::all(std::move(cs)) : SphereConstraint::any(std::move(cs));
  }
  if (key == "count_eq" || key == "count_gt") {
    auto s = sphere_from(body.at("sphere"), alphabet);
    const int t = get<int>(body, "t");
    return key == "count_eq" ? SphereConstraint::count_eq(std::move(s), t)
                             : SphereConstraint::count_gt(std::move(s), t);
  }
  fail(ErrorKind::ParseError, "unknown constraint node '" + key + "'");
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
}

AlphabetPtr parse_alphabet(std::string_view text) {
  const auto j = parse_json(text);
  try {
    return alphabet_from(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("alphabet: ") + e.what());
  }
}

std::string alphabet_to_json(const Alphabet& alphabet) { return alphabet_json(alphabet).dump(2) + "\n"; }

Automaton parse_automaton(std::string_view text) {
  const auto j = parse_json(text);
  const auto kind = get<std::string>(j, "kind");
  const auto sigma = optional_alphabet(j);
  const auto states = get<std::vector<std::string>>(j, "states");
  const Names q(states, "state");
  const int n = static_cast<int>(states.size());
  if (kind == "mvpa") {
    Mvpa a;
    a.alphabet = sigma;
    a.states = states;
    a.gamma.push_back(get_or<std::string>(j, "bottom", "_|_"));
    for (const auto& g : get_or<std::vector<std::string>>(j, "gamma", {})) a.gamma.push_back(g);
    const Names gamma(a.gamma, "stack symbol");
    a.initial = flags(j, "initial", q, n);
    a.accepting = flags(j, "final", q, n);
    for (const auto& r : rows(j, "delta_c", 4))
      a.delta_call.push_back({q(r[0]), sigma->at(r[1]), gamma(r[2]), q(r[3])});
    for (const auto& r : rows(j, "delta_r", 4))
      a.delta_return.push_back({q(r[0]), sigma->at(r[1]), gamma(r[2]), q(r[3])});
    for (const auto& r : rows(j, "delta_int", 3))
      a.delta_internal.push_back({q(r[0]), sigma->at(r[1]), q(r[2])});
    a.validate();
    return a;
  }
  if (kind == "mnwa") {
    Mnwa b;
    b.alphabet = sigma;
    b.states = states;
    b.initial = flags(j, "initial", q, n);
    b.accepting = flags(j, "final", q, n);
    b.calling = flags(j, "calling", q, n);
    for (const auto& r : rows(j, "delta_1", 3))
      b.delta_linear.push_back({q(r[0]), sigma->at(r[1]), q(r[2])});
    for (const auto& r : rows(j, "delta_2", 4))
      b.delta_return.push_back({q(r[0]), q(r[1]), sigma->at(r[2]), q(r[3])});
    b.validate();
    return b;
  }
  fail(ErrorKind::ParseError, "automaton kind must be 'mvpa' or 'mnwa'");
}

std::string automaton_to_json(const Mvpa& a) {
  const auto& sig = *a.alphabet;
  json j;
  j["kind"] = "mvpa";
  j["alphabet"] = alphabet_json(sig);
  j["states"] = a.states;
  j["initial"] = selected(a.states, a.initial);
  j["final"] = selected(a.states, a.accepting);
  j["bottom"] = a.gamma[0];
  j["gamma"] = std::vector<std::string>(a.gamma.begin() + 1, a.gamma.end());
  j["delta_c"] = json::array();
  j["delta_r"] = json::array();
  j["delta_int"] = json::array();
  for (const auto& r : a.delta_call)
    j["delta_c"].push_back({a.states[r.from], sig.name(r.a), a.gamma[r.push], a.states[r.to]});
  for (const auto& r : a.delta_return)
    j["delta_r"].push_back({a.states[r.from], sig.name(r.a), a.gamma[r.pop], a.states[r.to]});
  for (const auto& r : a.delta_internal)
    j["delta_int"].push_back({a.states[r.from], sig.name(r.a), a.states[r.to]});
  return j.dump(2) + "\n";
}

std::string automaton_to_json(const Mnwa& b) {
  const auto& sig = *b.alphabet;
  json j;
  j["kind"] = "mnwa";
  j["alphabet"] = alphabet_json(sig);
  j["states"] = b.states;
  j["initial"] = selected(b.states, b.initial);
  j["final"] = selected(b.states, b.accepting);
  j["calling"] = selected(b.states, b.calling);
  j["delta_1"] = json::array();
  j["delta_2"] = json::array();
  for (const auto& r : b.delta_linear)
    j["delta_1"].push_back({b.states[r.from], sig.name(r.a), b.states[r.to]});
  for (const auto& r : b.delta_return)
    j["delta_2"].push_back({b.states[r.call], b.states[r.from], sig.name(r.a), b.states[r.to]});
  return j.dump(2) + "\n";
}

Sphere parse_sphere(std::string_view text, const AlphabetPtr& alphabet) {
  const auto j = parse_json(text);
  try {
    return sphere_from(j, j.contains("alphabet") ? optional_alphabet(j) : alphabet);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("sphere: ") + e.what());
  }
}

std::string sphere_to_json(const Sphere& s) {
  json j;
  j["radius"] = s.radius;
  j["center"] = s.center + 1;
  j["nodes"] = json::array();
  j["succ"] = json::array();
  j["match"] = json::array();
  for (int k = 0; k < s.size(); ++k) {
    json node{{"id", k + 1}, {"label", s.alphabet->name(s.labels[k])}};
    if (!s.origin.empty()) node["position"] = s.origin[k] + 1;
    j["nodes"].push_back(node);
    if (s.next[k] >= 0) j["succ"].push_back({k + 1, s.next[k] + 1});
    if (s.match_out[k] >= 0)
      j["match"].push_back({k + 1, s.match_out[k] + 1, s.alphabet->cls(s.labels[k]).stack + 1});
  }
  j["realized"] = s.realized;
  return j.dump() + "\n";
}

ConstraintFile parse_constraint(std::string_view text) {
  const auto j = parse_json(text);
  ConstraintFile f;
  try {
    f.alphabet = optional_alphabet(j);
    f.expr = constraint_from(j.at("expr"), f.alphabet);
    f.radius = j.contains("radius") ? get<int>(j, "radius") : constraint_radius(f.expr);
  } catch (const json::exception& e) {
    fail(ErrorKind::ParseError, std::string("constraint: ") + e.what());
  }
  return f;
}

std::vector<Word> parse_words(std::string_view text, const Alphabet& alphabet) {
  std::vector<Word> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    words.push_back(parse_word(alphabet, line));
  }
  return words;
}

}  // namespace nw
