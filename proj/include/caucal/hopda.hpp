#pragma once

// Higher-order pushdown stores and systems: the pds algebra (attach, pop,
// push), configuration graphs as lazy colored graphs, epsilon-contraction,
// and the pumping-lemma threshold arithmetic.

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "caucal/fgh.hpp"
#include "caucal/graph.hpp"

namespace caucal {

class PdsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ImproperPopError : public PdsError {
public:
    using PdsError::PdsError;
};

class MixedEpsilonError : public GraphError {
public:
    explicit MixedEpsilonError(const std::string& vertex)
        : GraphError("mixed epsilon/non-epsilon outgoing edges at configuration " + vertex),
          vertex(vertex) {}
    std::string vertex;
};

inline const std::string kEpsilonLabel = "eps";

// Level 0: a single stack symbol. Level k+1: a sequence of level-k stores.
// Proper iff non-empty at every level.
struct Pds {
    unsigned level = 0;
    std::string symbol;      // level 0 only
    std::vector<Pds> items;  // level >= 1 only

    static Pds symbol0(std::string a) { return Pds{0, std::move(a), {}}; }
    static Pds empty(unsigned level) { return Pds{level, {}, {}}; }

    bool proper() const {
        if (level == 0) return true;
        if (items.empty()) return false;
        for (const auto& p : items)
            if (p.level + 1 != level || !p.proper()) return false;
        return true;
    }
};

// alpha^n : alpha^m for n > m; wraps the inner store in singleton sequences
// until the levels are adjacent.
inline Pds attach(const Pds& outer, const Pds& inner) {
    if (outer.level <= inner.level)
        throw PdsError("attach: outer level must exceed inner level");
    if (outer.level == inner.level + 1) {
        Pds r = outer;
        r.items.push_back(inner);
        return r;
    }
    Pds wrapped = Pds::empty(inner.level + 1);
    wrapped.items.push_back(inner);
    return attach(outer, wrapped);
}

inline const std::string& top_symbol(const Pds& s) {
    if (s.level == 0) return s.symbol;
    if (s.items.empty()) throw PdsError("top_symbol: improper store");
    return top_symbol(s.items.back());
}

// pop^k: removes the topmost (k-1)-pds; fails rather than produce an
// improper store.
inline Pds pop(const Pds& s, unsigned k) {
    if (k < 1 || k > s.level) throw PdsError("pop: level out of range");
    Pds r = s;
    if (s.level == k) {
        if (r.items.size() <= 1)
            throw ImproperPopError("pop: would empty a level-" + std::to_string(k) +
                                   " sequence");
        r.items.pop_back();
        return r;
    }
    if (r.items.empty()) throw PdsError("pop: improper store");
    r.items.back() = pop(r.items.back(), k);
    return r;
}

namespace detail {
inline void replace_top_symbol(Pds& s, const std::string& a) {
    if (s.level == 0) {
        s.symbol = a;
        return;
    }
    if (s.items.empty()) throw PdsError("push: improper store");
    replace_top_symbol(s.items.back(), a);
}
}  // namespace detail

// push^k(a): duplicates the topmost (k-1)-pds with its topmost symbol
// replaced by a, appended at level k.
inline Pds push(const Pds& s, unsigned k, const std::string& a) {
    if (k < 1 || k > s.level) throw PdsError("push: level out of range");
    Pds r = s;
    if (s.level == k) {
        if (r.items.empty()) throw PdsError("push: improper store");
        Pds copy = r.items.back();
        detail::replace_top_symbol(copy, a);
        r.items.push_back(std::move(copy));
        return r;
    }
    if (r.items.empty()) throw PdsError("push: improper store");
    r.items.back() = push(r.items.back(), k, a);
    return r;
}

inline std::string serialize(const Pds& s) {
    if (s.level == 0) return s.symbol;
    std::string out = "[";
    for (std::size_t i = 0; i < s.items.size(); ++i)
        out += (i ? " " : "") + serialize(s.items[i]);
    return out + "]";
}

namespace detail {
inline Pds deserialize_pds(std::string_view text, std::size_t& pos, unsigned level_hint);
}

inline Pds deserialize_pds(std::string_view text) {
    std::size_t pos = 0;
    Pds p = detail::deserialize_pds(text, pos, 0);
    if (pos != text.size()) throw PdsError("pds parse: trailing input");
    return p;
}

namespace detail {
inline Pds deserialize_pds(std::string_view text, std::size_t& pos, unsigned) {
    if (pos >= text.size()) throw PdsError("pds parse: unexpected end");
    if (text[pos] == '[') {
        ++pos;
        std::vector<Pds> items;
        while (pos < text.size() && text[pos] != ']') {
            if (text[pos] == ' ') { ++pos; continue; }
            items.push_back(deserialize_pds(text, pos, 0));
        }
        if (pos >= text.size()) throw PdsError("pds parse: missing ']'");
        ++pos;
        if (items.empty()) throw PdsError("pds parse: empty sequence");
        Pds r = Pds::empty(items.front().level + 1);
        r.items = std::move(items);
        return r;
    }
    std::string sym;
    while (pos < text.size() && text[pos] != ' ' && text[pos] != ']' && text[pos] != '[')
        sym += text[pos++];
    if (sym.empty()) throw PdsError("pds parse: empty symbol");
    return Pds::symbol0(std::move(sym));
}
}  // namespace detail

// --- pushdown systems -------------------------------------------------------

struct PdsTransition {
    std::string from_state;
    std::string top;
    std::string to_state;
    enum class Op { pop, push } op;
    unsigned k = 1;
    std::string push_symbol;  // push only
    std::string label;        // kEpsilonLabel for epsilon
};

struct PushdownSystem {
    unsigned level = 1;
    std::vector<std::string> input_alphabet;
    std::vector<std::string> stack_alphabet;
    std::string initial_symbol;
    std::vector<std::string> states;
    std::string initial_state;
    std::vector<PdsTransition> transitions;
    // acceptance: (state, top symbol) pairs; empty = no acceptance notion
    std::set<std::pair<std::string, std::string>> accepting;
};

struct PdsConfiguration {
    std::string state;
    Pds store;
};

inline std::string serialize(const PdsConfiguration& c) {
    return c.state + "|" + serialize(c.store);
}

inline PdsConfiguration deserialize_configuration(std::string_view key) {
    auto bar = key.find('|');
    if (bar == std::string_view::npos) throw PdsError("configuration parse: missing '|'");
    return {std::string(key.substr(0, bar)), deserialize_pds(key.substr(bar + 1))};
}

// (q_I, eps^n : (... : (eps^1 : s_I)))
inline PdsConfiguration initial_configuration(const PushdownSystem& sys) {
    Pds store = Pds::symbol0(sys.initial_symbol);
    for (unsigned l = 1; l <= sys.level; ++l) store = attach(Pds::empty(l), store);
    return {sys.initial_state, store};
}

inline std::vector<std::pair<const PdsTransition*, PdsConfiguration>> one_step_successors(
    const PushdownSystem& sys, const PdsConfiguration& w) {
    std::vector<std::pair<const PdsTransition*, PdsConfiguration>> out;
    const std::string& top = top_symbol(w.store);
    for (const auto& t : sys.transitions) {
        if (t.from_state != w.state || t.top != top) continue;
        try {
            Pds next = t.op == PdsTransition::Op::pop ? pop(w.store, t.k)
                                                      : push(w.store, t.k, t.push_symbol);
            out.push_back({&t, PdsConfiguration{t.to_state, std::move(next)}});
        } catch (const ImproperPopError&) {
            // transition disabled: operations are defined on proper stores only
        }
    }
    return out;
}

// Lazy colored graph over reachable configurations; edge colors are the
// transition labels (kEpsilonLabel for epsilon).
inline ColoredGraph configuration_graph(const PushdownSystem& sys) {
    std::vector<std::string> colors = sys.input_alphabet;
    colors.push_back(kEpsilonLabel);
    PushdownSystem copy = sys;
    return ColoredGraph::lazy(
        std::move(colors), serialize(initial_configuration(sys)),
        [copy = std::move(copy)](const std::string& key) {
            PdsConfiguration w = deserialize_configuration(key);
            std::vector<GraphEdge> edges;
            for (const auto& [t, next] : one_step_successors(copy, w))
                edges.push_back({t->label, serialize(next)});
            return edges;
        });
}

// Epsilon-contraction of an explored configuration graph. Requires every
// vertex to have all-epsilon or all-non-epsilon outgoing edges.
inline Explored epsilon_contraction(const ColoredGraph& g, ExploreBound bound = {}) {
    if (!g.root()) throw GraphError("epsilon_contraction: graph has no root");
    Explored ex = g.is_finite() ? Explored{g, true} : explore(g, *g.root(), bound);
    const ColoredGraph& cg = ex.graph;
    for (const auto& v : cg.vertices()) {
        bool has_eps = false, has_non = false;
        for (const auto& e : cg.successors(v))
            (e.color == kEpsilonLabel ? has_eps : has_non) = true;
        if (has_eps && has_non) throw MixedEpsilonError(v);
    }
    // contracted vertices: root plus targets of non-epsilon edges
    std::set<std::string> keep{*g.root()};
    for (const auto& v : cg.vertices())
        for (const auto& e : cg.successors(v))
            if (e.color != kEpsilonLabel) keep.insert(e.to);
    std::vector<std::string> vertices(keep.begin(), keep.end());
    std::map<std::string, std::vector<GraphEdge>> adjacency;
    for (const auto& v : vertices) {
        // epsilon-closure forward, then one visible edge
        std::set<std::string> closure{v};
        std::deque<std::string> queue{v};
        std::vector<GraphEdge> out;
        while (!queue.empty()) {
            auto cur = queue.front();
            queue.pop_front();
            for (const auto& e : cg.successors(cur)) {
                if (e.color == kEpsilonLabel) {
                    if (closure.insert(e.to).second) queue.push_back(e.to);
                } else {
                    out.push_back(e);
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        adjacency[v] = std::move(out);
    }
    std::vector<std::string> colors;
    for (const auto& c : cg.colors())
        if (c != kEpsilonLabel) colors.push_back(c);
    return {ColoredGraph::finite(std::move(colors), std::move(vertices),
                                 std::move(adjacency), *g.root()),
            ex.complete};
}

// beth_{level-1}((m+1) * C)  (Parys pumping bound)
inline BigNat pumping_threshold(unsigned level, Nat m, Nat C,
                                Nat max_result_bits = Nat{1} << 20) {
    if (level < 1) throw PdsError("pumping_threshold: level must be >= 1");
    return beth(level - 1, BigNat(m + 1) * C, max_result_bits);
}

// Label words of paths from the initial configuration to an accepting
// (state, top symbol) configuration, up to the given length.
inline std::set<std::vector<std::string>> accepted_words(const PushdownSystem& sys,
                                                         std::size_t max_length,
                                                         ExploreBound bound = {}) {
    Explored contracted = epsilon_contraction(configuration_graph(sys), bound);
    const ColoredGraph& g = contracted.graph;
    auto accepting = [&](const std::string& key) {
        PdsConfiguration c = deserialize_configuration(key);
        return sys.accepting.count({c.state, top_symbol(c.store)}) > 0;
    };
    std::set<std::vector<std::string>> out;
    struct Item {
        std::string vertex;
        std::vector<std::string> word;
    };
    std::deque<Item> queue{{*g.root(), {}}};
    std::set<std::pair<std::string, std::vector<std::string>>> seen;
    while (!queue.empty()) {
        auto [v, word] = queue.front();
        queue.pop_front();
        if (accepting(v)) out.insert(word);
        if (word.size() >= max_length) continue;
        for (const auto& e : g.successors(v)) {
            auto next = word;
            next.push_back(e.color);
            if (seen.emplace(e.to, next).second) queue.push_back(Item{e.to, std::move(next)});
        }
    }
    return out;
}

// --- text format --------------------------------------------------------------
//
//   level 2
//   input-alphabet a b
//   stack-alphabet s a
//   initial-symbol s
//   states q0 q1
//   initial-state q0
//   q0 ; s ; q0 ; push 1 a ; a
//   q0 ; a ; q1 ; pop 1 ; b
//   accept q1 ; s

inline PushdownSystem parse_pushdown_system(std::istream& in) {
    PushdownSystem sys;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    auto words = [&](const std::string& s) {
        std::istringstream ss(s);
        std::vector<std::string> out;
        std::string w;
        while (ss >> w) out.push_back(w);
        return out;
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw PdsError("pds system line " + std::to_string(lineno) + ": " + msg);
        };
        if (t.find(';') == std::string::npos) {
            auto w = words(t);
            if (w.empty()) continue;
            if (w[0] == "level" && w.size() == 2) sys.level = std::stoul(w[1]);
            else if (w[0] == "input-alphabet") sys.input_alphabet.assign(w.begin() + 1, w.end());
            else if (w[0] == "stack-alphabet") sys.stack_alphabet.assign(w.begin() + 1, w.end());
            else if (w[0] == "initial-symbol" && w.size() == 2) sys.initial_symbol = w[1];
            else if (w[0] == "states") sys.states.assign(w.begin() + 1, w.end());
            else if (w[0] == "initial-state" && w.size() == 2) sys.initial_state = w[1];
            else fail("unrecognized header: " + w[0]);
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            auto semi = t.find(';', start);
            fields.push_back(trim(t.substr(start, semi - start)));
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
        if (fields[0].rfind("accept", 0) == 0) {
            if (fields.size() != 2) fail("expected `accept q ; s`");
            auto w = words(fields[0]);
            if (w.size() != 2) fail("expected `accept q ; s`");
            sys.accepting.insert({w[1], fields[1]});
            continue;
        }
        if (fields.size() != 5) fail("expected `q ; s ; q' ; op ; label`");
        PdsTransition tr;
        tr.from_state = fields[0];
        tr.top = fields[1];
        tr.to_state = fields[2];
        auto op = words(fields[3]);
        if (op.size() == 2 && op[0] == "pop") {
            tr.op = PdsTransition::Op::pop;
            tr.k = std::stoul(op[1]);
        } else if (op.size() == 3 && op[0] == "push") {
            tr.op = PdsTransition::Op::push;
            tr.k = std::stoul(op[1]);
            tr.push_symbol = op[2];
        } else {
            fail("expected `pop k` or `push k a`");
        }
        tr.label = fields[4];
        if (tr.k < 1 || tr.k > sys.level) fail("operation level out of range");
        sys.transitions.push_back(std::move(tr));
    }
    return sys;
}

}  // namespace caucal
