#pragma once

// Finite automata over color words and vertex-pair types: least-fixpoint
// switch relations, pair types between tree vertices, and the relational
// composition rules for collinear and forked vertex configurations.

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "caucal/graph.hpp"
#include "caucal/rpq.hpp"

namespace caucal {

class AutomatonError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instructions over colors and inverse colors. Initial/accepting sets are
// optional and used only for language acceptance.
struct WordAutomaton {
    struct Instruction {
        std::string from;
        std::string symbol;
        std::string to;
        auto operator<=>(const Instruction&) const = default;
    };
    std::set<std::string> alphabet;
    std::set<std::string> states;
    std::vector<Instruction> instructions;
    std::set<std::string> initial;
    std::set<std::string> accepting;

    void add(std::string from, std::string symbol, std::string to) {
        states.insert(from);
        states.insert(to);
        alphabet.insert(symbol);
        instructions.push_back({std::move(from), std::move(symbol), std::move(to)});
    }
};

// Epsilon-free automaton from a compiled color regex; NFA states become
// named states q0, q1, ... with epsilon edges eliminated forward.
inline WordAutomaton from_regex(std::string_view pattern) {
    Nfa nfa = compile_color_regex(pattern);
    WordAutomaton aut;
    auto name = [](std::size_t i) { return "q" + std::to_string(i); };
    for (std::size_t i = 0; i < nfa.states.size(); ++i) aut.states.insert(name(i));
    for (std::size_t i = 0; i < nfa.states.size(); ++i) {
        for (auto j : epsilon_closure(nfa, i))
            for (const auto& t : nfa.states[j])
                if (t.symbol) aut.add(name(i), *t.symbol, name(t.to));
    }
    aut.initial.insert(name(nfa.start));
    for (std::size_t i = 0; i < nfa.states.size(); ++i)
        if (epsilon_closure(nfa, i).count(nfa.accept)) aut.accepting.insert(name(i));
    return aut;
}

inline bool accepts(const WordAutomaton& aut, const std::vector<std::string>& word) {
    std::set<std::string> current = aut.initial;
    for (const auto& sym : word) {
        std::set<std::string> next;
        for (const auto& ins : aut.instructions)
            if (ins.symbol == sym && current.count(ins.from)) next.insert(ins.to);
        current = std::move(next);
        if (current.empty()) return false;
    }
    for (const auto& q : current)
        if (aut.accepting.count(q)) return true;
    return false;
}

// --- switch relations --------------------------------------------------------

// Least fixpoint over an already inverse-closed finite graph: for each state
// q', the vertices v' such that some path v -> v' switches the automaton
// from q to q'. Worklist over (vertex, state).
inline std::map<std::string, std::set<std::string>> switch_fixpoint(
    const WordAutomaton& aut, const ColoredGraph& closed, const std::string& v,
    const std::string& q) {
    if (!aut.states.count(q)) throw AutomatonError("switch_fixpoint: unknown state " + q);
    std::map<std::pair<std::string, std::string>, std::vector<std::string>> step;
    for (const auto& ins : aut.instructions)
        step[{ins.from, ins.symbol}].push_back(ins.to);
    std::map<std::string, std::set<std::string>> sets;
    std::deque<std::pair<std::string, std::string>> worklist;
    auto insert = [&](const std::string& vertex, const std::string& state) {
        if (sets[state].insert(vertex).second) worklist.push_back({vertex, state});
    };
    insert(v, q);
    while (!worklist.empty()) {
        auto [cur, state] = worklist.front();
        worklist.pop_front();
        for (const auto& e : closed.successors(cur)) {
            auto it = step.find({state, e.color});
            if (it == step.end()) continue;
            for (const auto& next : it->second) insert(e.to, next);
        }
    }
    return sets;
}

inline std::map<std::string, std::set<std::string>> switch_relation(
    const WordAutomaton& aut, const ColoredGraph& g, const std::string& v,
    const std::string& q, ExploreBound bound = {}) {
    ColoredGraph finite = g;
    if (!g.is_finite()) finite = explore(g, v, bound).graph;
    return switch_fixpoint(aut, inverse_closure(finite), v, q);
}

// --- vertex pair types ----------------------------------------------------------

using StatePair = std::pair<std::string, std::string>;
using StateRelation = std::set<StatePair>;

struct VertexPairType {
    StateRelation forward;   // switches realizable on v1 -> v2 paths
    StateRelation backward;  // switches realizable on v2 -> v1 paths
    bool operator==(const VertexPairType&) const = default;
    auto operator<=>(const VertexPairType&) const = default;
};

inline StateRelation identity_relation(const std::set<std::string>& states) {
    StateRelation r;
    for (const auto& q : states) r.insert({q, q});
    return r;
}

inline VertexPairType identity_type(const WordAutomaton& aut) {
    auto d = identity_relation(aut.states);
    return {d, d};
}

inline StateRelation join(const StateRelation& r1, const StateRelation& r2) {
    StateRelation out;
    for (const auto& [a, b] : r1)
        for (const auto& [b2, c] : r2)
            if (b == b2) out.insert({a, c});
    return out;
}

inline VertexPairType pair_type(const WordAutomaton& aut, const ColoredGraph& g,
                                const std::string& v1, const std::string& v2,
                                ExploreBound bound = {}) {
    ColoredGraph finite = g;
    if (!g.is_finite()) {
        if (!g.root()) throw GraphError("pair_type: lazy graph without root");
        finite = explore(g, *g.root(), bound).graph;
    }
    ColoredGraph closed = inverse_closure(finite);
    VertexPairType t;
    for (const auto& q : aut.states) {
        auto fwd = switch_fixpoint(aut, closed, v1, q);
        for (const auto& [q2, vs] : fwd)
            if (vs.count(v2)) t.forward.insert({q, q2});
        auto bwd = switch_fixpoint(aut, closed, v2, q);
        for (const auto& [q2, vs] : bwd)
            if (vs.count(v1)) t.backward.insert({q, q2});
    }
    return t;
}

// v1 in the cone of v2, v3 outside: every walk between v1 and v3 passes v2.
// t1 = type(v1, v2), t2 = type(v2, v3); result = type(v1, v3).
inline VertexPairType compose_collinear(const VertexPairType& t1,
                                        const VertexPairType& t2) {
    return {join(t1.forward, t2.forward), join(t2.backward, t1.backward)};
}

// u1, u2 in disjoint cones of v1, v2: walks between u1 and u2 pass v1 then
// v2. t1 = type(v1, v2), t2 = type(v1, u1), t3 = type(v2, u2);
// result = type(u1, u2).
inline VertexPairType compose_forked(const VertexPairType& t1, const VertexPairType& t2,
                                     const VertexPairType& t3) {
    return {join(join(t2.backward, t1.forward), t3.forward),
            join(join(t3.backward, t1.backward), t2.forward)};
}

// --- serialization ---------------------------------------------------------------

inline std::string serialize(const StateRelation& r) {
    std::string out = "{";
    bool first = true;
    for (const auto& [a, b] : r) {
        if (!first) out += ",";
        first = false;
        out += "(" + a + "," + b + ")";
    }
    return out + "}";
}

inline std::string serialize(const VertexPairType& t) {
    return "fwd" + serialize(t.forward) + ";bwd" + serialize(t.backward);
}

// Text format: `q ; symbol ; q'` instruction lines, plus optional header
// lines `initial q ...` and `accepting q ...`. '#' starts a comment.
inline WordAutomaton parse_automaton(std::istream& in) {
    WordAutomaton aut;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.find(';') == std::string::npos) {
            std::istringstream ss(t);
            std::string head, w;
            ss >> head;
            std::set<std::string>* dest = nullptr;
            if (head == "initial") dest = &aut.initial;
            else if (head == "accepting") dest = &aut.accepting;
            else
                throw AutomatonError("automaton line " + std::to_string(lineno) +
                                     ": unrecognized header: " + head);
            while (ss >> w) {
                dest->insert(w);
                aut.states.insert(w);
            }
            continue;
        }
        auto p1 = t.find(';');
        auto p2 = t.find(';', p1 + 1);
        if (p2 == std::string::npos)
            throw AutomatonError("automaton line " + std::to_string(lineno) +
                                 ": expected `q ; symbol ; q'`");
        aut.add(trim(t.substr(0, p1)), trim(t.substr(p1 + 1, p2 - p1 - 1)),
                trim(t.substr(p2 + 1)));
    }
    return aut;
}

}  // namespace caucal
