#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "caucal/rpq.hpp"
#include "caucal/tree_types.hpp"

using namespace caucal;

namespace {

struct RandomTree {
    ColoredGraph graph{ColoredGraph::finite({}, {}, {})};
    std::vector<int> parent;  // parent[0] = -1
    std::size_t n = 0;

    bool in_cone(std::size_t anchor, std::size_t v) const {
        for (int cur = static_cast<int>(v); cur != -1; cur = parent[cur])
            if (cur == static_cast<int>(anchor)) return true;
        return false;
    }
};

RandomTree random_tree(std::mt19937& rng, std::size_t n) {
    RandomTree t;
    t.n = n;
    t.parent.assign(n, -1);
    std::map<std::string, std::vector<GraphEdge>> adj;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::uniform_int_distribution<int> color(0, 1);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        t.parent[i] = static_cast<int>(pick(rng));
        adj[names[t.parent[i]]].push_back(
            {color(rng) ? "a" : "b", names[i]});
    }
    t.graph = ColoredGraph::finite({"a", "b"}, names, std::move(adj), "0");
    return t;
}

WordAutomaton random_automaton(std::mt19937& rng, std::size_t states,
                               std::size_t instructions) {
    WordAutomaton aut;
    std::vector<std::string> symbols{"a", "b", "a-", "b-"};
    std::uniform_int_distribution<std::size_t> q(0, states - 1);
    std::uniform_int_distribution<std::size_t> s(0, symbols.size() - 1);
    for (std::size_t i = 0; i < states; ++i)
        aut.states.insert("q" + std::to_string(i));
    for (std::size_t i = 0; i < instructions; ++i)
        aut.add("q" + std::to_string(q(rng)), symbols[s(rng)],
                "q" + std::to_string(q(rng)));
    return aut;
}

// independent product reachability: saturate (vertex, state) pairs by
// repeated full passes instead of a worklist
std::map<std::string, std::set<std::string>> saturate_switch(
    const WordAutomaton& aut, const ColoredGraph& g, const std::string& v,
    const std::string& q) {
    ColoredGraph r = inverse_closure(g);
    std::set<std::pair<std::string, std::string>> pairs{{v, q}};
    bool grew = true;
    while (grew) {
        grew = false;
        auto snapshot = pairs;
        for (const auto& [vertex, state] : snapshot)
            for (const auto& e : r.successors(vertex))
                for (const auto& ins : aut.instructions)
                    if (ins.from == state && ins.symbol == e.color &&
                        pairs.insert({e.to, ins.to}).second)
                        grew = true;
    }
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [vertex, state] : pairs) out[state].insert(vertex);
    return out;
}

}  // namespace

TEST_CASE("switch relation basics") {
    auto edge = ColoredGraph::finite({"a"}, {"u", "v"}, {{"u", {{"a", "v"}}}});
    WordAutomaton aut;
    aut.add("q0", "a", "q1");
    auto sets = switch_relation(aut, edge, "u", "q0");
    CHECK(sets["q0"] == std::set<std::string>{"u"});
    CHECK(sets["q1"] == std::set<std::string>{"v"});

    WordAutomaton idle;
    idle.states = {"q0"};
    auto only_seed = switch_relation(idle, edge, "u", "q0");
    CHECK(only_seed.size() == 1);
    CHECK(only_seed["q0"] == std::set<std::string>{"u"});
}

TEST_CASE("switch relation equals independent product saturation") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto tree = random_tree(rng, 6);
        auto aut = random_automaton(rng, 3, 6);
        for (const auto& q : aut.states) {
            auto fast = switch_relation(aut, tree.graph, "0", q);
            auto slow = saturate_switch(aut, tree.graph, "0", q);
            CHECK(fast == slow);
        }
    }
}

TEST_CASE("switch relation is monotone under subgraph growth") {
    std::mt19937 rng(11);
    auto tree = random_tree(rng, 8);
    auto aut = random_automaton(rng, 3, 8);
    // restricting to the first 5 vertices never adds members
    std::map<std::string, std::vector<GraphEdge>> small_adj;
    std::vector<std::string> small;
    for (std::size_t i = 0; i < 5; ++i) small.push_back(std::to_string(i));
    for (const auto& v : small)
        for (const auto& e : tree.graph.successors(v))
            if (std::stoul(e.to) < 5) small_adj[v].push_back(e);
    auto sub = ColoredGraph::finite({"a", "b"}, small, std::move(small_adj), "0");
    for (const auto& q : aut.states) {
        auto big = switch_relation(aut, tree.graph, "0", q);
        auto little = switch_relation(aut, sub, "0", q);
        for (const auto& [state, vs] : little)
            for (const auto& v : vs) CHECK(big[state].count(v));
    }
}

TEST_CASE("pair type basics") {
    auto edge = ColoredGraph::finite({"a"}, {"u", "v"}, {{"u", {{"a", "v"}}}});
    WordAutomaton aut;
    aut.add("q0", "a", "q1");
    aut.add("q0", "a-", "q1");

    auto same = pair_type(aut, edge, "u", "u");
    for (const auto& q : aut.states) {
        CHECK(same.forward.count({q, q}));
        CHECK(same.backward.count({q, q}));
    }

    auto t = pair_type(aut, edge, "u", "v");
    CHECK(t.forward.count({"q0", "q1"}));
    CHECK(t.backward.count({"q0", "q1"}));  // inverse edge, a- instruction
}

TEST_CASE("disconnected vertices with no connecting word") {
    // two children of the root; an automaton that can only read forward
    // colors can realize no switch between the siblings
    auto g = ColoredGraph::finite({"a", "b"}, {"r", "x", "y"},
                                  {{"r", {{"a", "x"}, {"b", "y"}}}});
    WordAutomaton aut;
    aut.add("q0", "a", "q1");
    aut.add("q1", "b", "q0");
    auto t = pair_type(aut, g, "x", "y");
    for (const auto& [p, q] : t.forward) CHECK(p == q);
    for (const auto& [p, q] : t.backward) CHECK(p == q);
}

TEST_CASE("identity type is neutral for composition") {
    std::mt19937 rng(13);
    auto tree = random_tree(rng, 7);
    auto aut = random_automaton(rng, 3, 8);
    auto t1 = pair_type(aut, tree.graph, "0", std::to_string(tree.n - 1));
    auto id = identity_type(aut);
    CHECK(compose_collinear(t1, id) == t1);
    CHECK(compose_collinear(id, t1) == t1);
    CHECK(compose_forked(t1, id, id) == t1);
    VertexPairType empty;
    CHECK(compose_collinear(empty, empty) == empty);
    CHECK(compose_forked(empty, t1, t1) == empty);
}

TEST_CASE("collinear composition matches directly computed types") {
    std::mt19937 rng(17);
    int done = 0;
    while (done < 60) {
        auto tree = random_tree(rng, 8);
        auto aut = random_automaton(rng, 4, 10);
        std::uniform_int_distribution<std::size_t> pick(0, tree.n - 1);
        std::size_t v2 = pick(rng), v1 = pick(rng), v3 = pick(rng);
        // v1 inside the cone of v2, v3 outside
        if (!tree.in_cone(v2, v1) || tree.in_cone(v2, v3)) continue;
        auto s = [](std::size_t i) { return std::to_string(i); };
        auto t1 = pair_type(aut, tree.graph, s(v1), s(v2));
        auto t2 = pair_type(aut, tree.graph, s(v2), s(v3));
        auto direct = pair_type(aut, tree.graph, s(v1), s(v3));
        CHECK(compose_collinear(t1, t2) == direct);
        ++done;
    }
}

TEST_CASE("forked composition matches directly computed types") {
    std::mt19937 rng(19);
    int done = 0;
    while (done < 60) {
        auto tree = random_tree(rng, 9);
        auto aut = random_automaton(rng, 4, 10);
        std::uniform_int_distribution<std::size_t> pick(0, tree.n - 1);
        std::size_t v1 = pick(rng), v2 = pick(rng);
        if (tree.in_cone(v1, v2) || tree.in_cone(v2, v1)) continue;  // disjoint cones
        std::size_t u1 = pick(rng), u2 = pick(rng);
        if (!tree.in_cone(v1, u1) || !tree.in_cone(v2, u2)) continue;
        auto s = [](std::size_t i) { return std::to_string(i); };
        auto t1 = pair_type(aut, tree.graph, s(v1), s(v2));
        auto t2 = pair_type(aut, tree.graph, s(v1), s(u1));
        auto t3 = pair_type(aut, tree.graph, s(v2), s(u2));
        auto direct = pair_type(aut, tree.graph, s(u1), s(u2));
        CHECK(compose_forked(t1, t2, t3) == direct);
        ++done;
    }
}

TEST_CASE("regex automata agree with path query witnesses") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto tree = random_tree(rng, 8);
        for (const std::string pattern : {"aa*b*", "(b-)*a", "ab|ba*"}) {
            auto aut = from_regex(pattern);
            for (std::size_t v = 0; v < tree.n; ++v) {
                auto res = regular_path_query(tree.graph, std::to_string(v), pattern);
                for (const auto& [target, witness] : res.targets)
                    CHECK(accepts(aut, witness));
            }
        }
    }
}

TEST_CASE("acceptance") {
    auto aut = from_regex("ab*");
    CHECK(accepts(aut, {"a"}));
    CHECK(accepts(aut, {"a", "b", "b"}));
    CHECK(!accepts(aut, {"b"}));
    CHECK(!accepts(aut, {}));
    auto eps = from_regex("a*");
    CHECK(accepts(eps, {}));
}

TEST_CASE("type serialization is canonical") {
    VertexPairType t;
    t.forward.insert({"q1", "q0"});
    t.forward.insert({"q0", "q1"});
    CHECK(serialize(t) == "fwd{(q0,q1),(q1,q0)};bwd{}");
    VertexPairType t2;
    t2.forward.insert({"q0", "q1"});
    t2.forward.insert({"q1", "q0"});
    CHECK(serialize(t) == serialize(t2));
}

TEST_CASE("automaton text format") {
    std::istringstream in(
        "# order automaton\n"
        "initial q0\n"
        "accepting q2\n"
        "q0 ; a ; q1\n"
        "q1 ; b- ; q2\n");
    auto aut = parse_automaton(in);
    CHECK(aut.states.size() == 3);
    CHECK(aut.initial == std::set<std::string>{"q0"});
    CHECK(aut.accepting == std::set<std::string>{"q2"});
    CHECK(accepts(aut, {"a", "b-"}));
    CHECK(!accepts(aut, {"a"}));
    std::istringstream bad("q0 ; a\n");
    CHECK_THROWS_AS(parse_automaton(bad), AutomatonError);
}
