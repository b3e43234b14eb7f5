#pragma once

// Regular path queries over colored graphs: a small regex engine over color
// symbols (Thompson construction, no determinization) and product BFS on the
// inverse closure of the explored graph.

#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "caucal/graph.hpp"

namespace caucal {

class RegexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Symbols are colors or inverse colors. Syntax:
//   - a single alphanumeric character is a color, `<name>` a multi-character
//     color; a trailing '-' marks the inverse color
//   - juxtaposition concatenates; `|` alternates; `*` `+` `?` repeat;
//     parentheses group; whitespace is ignored
struct Nfa {
    struct Transition {
        std::optional<std::string> symbol;  // nullopt = epsilon
        std::size_t to;
    };
    std::size_t start = 0;
    std::size_t accept = 0;
    std::vector<std::vector<Transition>> states;

    std::size_t add_state() {
        states.emplace_back();
        return states.size() - 1;
    }
    void add_edge(std::size_t from, std::optional<std::string> symbol, std::size_t to) {
        states[from].push_back({std::move(symbol), to});
    }
    std::set<std::string> symbols() const {
        std::set<std::string> out;
        for (const auto& st : states)
            for (const auto& t : st)
                if (t.symbol) out.insert(*t.symbol);
        return out;
    }
};

namespace detail {

struct RegexParser {
    std::string_view s;
    std::size_t pos = 0;
    Nfa& nfa;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }

    // fragment = (entry, exit)
    using Frag = std::pair<std::size_t, std::size_t>;

    Frag symbol_frag(const std::string& sym) {
        auto a = nfa.add_state();
        auto b = nfa.add_state();
        nfa.add_edge(a, sym, b);
        return {a, b};
    }

    Frag parse_atom() {
        skip_ws();
        if (eat('(')) {
            if (eat(')')) {  // empty group: epsilon
                auto a = nfa.add_state();
                return {a, a};
            }
            Frag f = parse_alt();
            if (!eat(')')) throw RegexError("regex: missing ')'");
            return f;
        }
        std::string name;
        if (eat('<')) {
            while (pos < s.size() && s[pos] != '>') name += s[pos++];
            if (!eat('>')) throw RegexError("regex: missing '>'");
        } else if (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                                      s[pos] == '_')) {
            name = s[pos++];
        } else {
            throw RegexError("regex: expected symbol at position " + std::to_string(pos));
        }
        if (pos < s.size() && s[pos] == '-') {
            name += '-';
            ++pos;
        }
        return symbol_frag(name);
    }

    Frag parse_rep() {
        Frag f = parse_atom();
        while (true) {
            if (eat('*')) {
                auto a = nfa.add_state();
                nfa.add_edge(a, std::nullopt, f.first);
                nfa.add_edge(f.second, std::nullopt, a);
                f = {a, a};
            } else if (eat('+')) {
                nfa.add_edge(f.second, std::nullopt, f.first);
            } else if (eat('?')) {
                nfa.add_edge(f.first, std::nullopt, f.second);
            } else {
                break;
            }
        }
        return f;
    }

    bool at_atom() {
        skip_ws();
        if (pos >= s.size()) return false;
        char c = s[pos];
        return c == '(' || c == '<' || std::isalnum(static_cast<unsigned char>(c)) ||
               c == '_';
    }

    Frag parse_cat() {
        Frag f = parse_rep();
        while (at_atom()) {
            Frag g = parse_rep();
            nfa.add_edge(f.second, std::nullopt, g.first);
            f = {f.first, g.second};
        }
        return f;
    }

    Frag parse_alt() {
        Frag f = parse_cat();
        while (eat('|')) {
            Frag g = parse_cat();
            auto a = nfa.add_state();
            auto b = nfa.add_state();
            nfa.add_edge(a, std::nullopt, f.first);
            nfa.add_edge(a, std::nullopt, g.first);
            nfa.add_edge(f.second, std::nullopt, b);
            nfa.add_edge(g.second, std::nullopt, b);
            f = {a, b};
        }
        return f;
    }
};

}  // namespace detail

inline Nfa compile_color_regex(std::string_view pattern) {
    Nfa nfa;
    detail::RegexParser p{pattern, 0, nfa};
    auto f = p.parse_alt();
    p.skip_ws();
    if (p.pos != pattern.size())
        throw RegexError("regex: trailing input at position " + std::to_string(p.pos));
    nfa.start = f.first;
    nfa.accept = f.second;
    return nfa;
}

inline std::set<std::size_t> epsilon_closure(const Nfa& nfa, std::size_t q) {
    std::set<std::size_t> out{q};
    std::deque<std::size_t> queue{q};
    while (!queue.empty()) {
        auto cur = queue.front();
        queue.pop_front();
        for (const auto& t : nfa.states[cur])
            if (!t.symbol && out.insert(t.to).second) queue.push_back(t.to);
    }
    return out;
}

// --- regular path query ----------------------------------------------------------

using ColorWord = std::vector<std::string>;

struct RpqResult {
    // target vertex -> one shortest witness color word
    std::map<std::string, ColorWord> targets;
    bool complete = true;
};

// All vertices reachable from `from` in R(g) along a word in the language,
// found by BFS over (vertex, automaton state). Lazy graphs are explored up
// to the bound first.
inline RpqResult regular_path_query(const ColoredGraph& g, const std::string& from,
                                    std::string_view pattern, ExploreBound bound = {}) {
    Nfa nfa = compile_color_regex(pattern);
    RpqResult result;
    ColoredGraph finite = g;
    if (!g.is_finite()) {
        Explored ex = explore(g, from, bound);
        result.complete = ex.complete;
        finite = std::move(ex.graph);
    }
    ColoredGraph r = inverse_closure(finite);

    struct Node {
        std::string vertex;
        std::size_t state;
    };
    std::map<std::pair<std::string, std::size_t>, ColorWord> visited;
    std::deque<Node> queue;
    for (auto q : epsilon_closure(nfa, nfa.start)) {
        visited[{from, q}] = {};
        queue.push_back({from, q});
    }
    while (!queue.empty()) {
        auto [v, q] = queue.front();
        queue.pop_front();
        const ColorWord& word = visited.at({v, q});
        if (q == nfa.accept && !result.targets.count(v)) result.targets[v] = word;
        for (const auto& e : r.successors(v)) {
            for (const auto& t : nfa.states[q]) {
                if (!t.symbol || *t.symbol != e.color) continue;
                for (auto q2 : epsilon_closure(nfa, t.to)) {
                    auto key = std::make_pair(e.to, q2);
                    if (visited.count(key)) continue;
                    ColorWord next = word;
                    next.push_back(e.color);
                    visited.emplace(key, std::move(next));
                    queue.push_back({e.to, q2});
                }
            }
        }
    }
    return result;
}

}  // namespace caucal
