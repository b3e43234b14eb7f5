#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "caucal/hopda.hpp"

using namespace caucal;

namespace {

Pds S(const std::string& text) { return deserialize_pds(text); }

// level-1 system recognizing a^n b^n by push on a, pop on b
PushdownSystem anbn() {
    std::istringstream in(
        "level 1\n"
        "input-alphabet a b\n"
        "stack-alphabet z a\n"
        "initial-symbol z\n"
        "states q0 q1\n"
        "initial-state q0\n"
        "q0 ; z ; q0 ; push 1 a ; a\n"
        "q0 ; a ; q0 ; push 1 a ; a\n"
        "q0 ; a ; q1 ; pop 1 ; b\n"
        "q1 ; a ; q1 ; pop 1 ; b\n"
        "accept q0 ; z\n"
        "accept q1 ; z\n");
    return parse_pushdown_system(in);
}

// uniformly random proper store of the given level with bounded width
Pds random_store(std::mt19937& rng, unsigned level, unsigned depth_cap) {
    if (level == 0) {
        std::uniform_int_distribution<int> sym(0, 2);
        return Pds::symbol0(std::string(1, static_cast<char>('a' + sym(rng))));
    }
    std::uniform_int_distribution<unsigned> width(1, depth_cap);
    Pds p = Pds::empty(level);
    unsigned w = width(rng);
    for (unsigned i = 0; i < w; ++i) p.items.push_back(random_store(rng, level - 1, depth_cap));
    return p;
}

}  // namespace

TEST_CASE("attach") {
    CHECK(serialize(attach(Pds::empty(1), S("s"))) == "[s]");
    CHECK(serialize(attach(S("[s]"), S("a"))) == "[s a]");
    CHECK(serialize(attach(Pds::empty(2), S("s"))) == "[[s]]");
    CHECK_THROWS_AS(attach(S("s"), S("s")), PdsError);
    CHECK_THROWS_AS(attach(S("[s]"), S("[a]")), PdsError);
}

TEST_CASE("pop") {
    CHECK(serialize(pop(S("[s a]"), 1)) == "[s]");
    CHECK(serialize(pop(S("[[s] [s a]]"), 2)) == "[[s]]");
    CHECK(serialize(pop(S("[[s] [s a]]"), 1)) == "[[s] [s]]");
    CHECK_THROWS_AS(pop(S("[s]"), 1), ImproperPopError);
    CHECK_THROWS_AS(pop(S("[[s]]"), 2), ImproperPopError);
    CHECK_THROWS_AS(pop(S("[s]"), 2), PdsError);
    CHECK_THROWS_AS(pop(S("[s]"), 0), PdsError);
}

TEST_CASE("push") {
    CHECK(serialize(push(S("[s]"), 1, "a")) == "[s a]");
    CHECK(serialize(push(S("[[s b]]"), 2, "a")) == "[[s b] [s a]]");
    CHECK(serialize(push(S("[[s]]"), 2, "s")) == "[[s] [s]]");
    CHECK(serialize(push(S("[[s] [s a]]"), 2, "b")) == "[[s] [s a] [s b]]");
    CHECK_THROWS_AS(push(S("[s]"), 2, "a"), PdsError);
}

TEST_CASE("pop undoes push on random proper stores") {
    std::mt19937 rng(20260823);
    std::uniform_int_distribution<unsigned> lvl(1, 4);
    for (int i = 0; i < 1000; ++i) {
        unsigned level = lvl(rng);
        Pds store = random_store(rng, level, 3);
        REQUIRE(store.proper());
        std::uniform_int_distribution<unsigned> kd(1, level);
        unsigned k = kd(rng);
        Pds pushed = push(store, k, "x");
        CHECK(pushed.proper());
        CHECK(serialize(pop(pushed, k)) == serialize(store));
    }
}

TEST_CASE("serialization round-trips") {
    for (const std::string text : {"s", "[s a b]", "[[s] [a b]]", "[[[s]] [[a] [b c]]]"}) {
        CHECK(serialize(deserialize_pds(text)) == text);
    }
    CHECK_THROWS_AS(deserialize_pds("[s"), PdsError);
    CHECK_THROWS_AS(deserialize_pds("[]"), PdsError);
    CHECK_THROWS_AS(deserialize_pds("[s] x"), PdsError);
}

TEST_CASE("initial configuration") {
    PushdownSystem sys;
    sys.initial_symbol = "s";
    sys.initial_state = "q";
    sys.level = 1;
    CHECK(serialize(initial_configuration(sys)) == "q|[s]");
    sys.level = 2;
    CHECK(serialize(initial_configuration(sys)) == "q|[[s]]");
    sys.level = 3;
    CHECK(serialize(initial_configuration(sys)) == "q|[[[s]]]");
    // exactly one symbol at every nesting level
    Pds store = initial_configuration(sys).store;
    while (store.level > 0) {
        REQUIRE(store.items.size() == 1);
        store = store.items[0];
    }
}

TEST_CASE("one step successors") {
    auto sys = anbn();
    auto init = initial_configuration(sys);
    auto steps = one_step_successors(sys, init);
    REQUIRE(steps.size() == 1);  // only the z push applies
    CHECK(serialize(steps[0].second) == "q0|[z a]");
    // pop transitions that would empty the store are disabled
    PdsConfiguration back{"q1", S("[z]")};
    CHECK(one_step_successors(sys, back).empty());
    PdsConfiguration none{"q1", S("[z a]")};
    auto from_a = one_step_successors(sys, none);
    REQUIRE(from_a.size() == 1);
    CHECK(from_a[0].first->label == "b");
}

TEST_CASE("configuration graph") {
    // counter: push a on every input a, forever
    std::istringstream in(
        "level 1\n"
        "input-alphabet a\n"
        "stack-alphabet s a\n"
        "initial-symbol s\n"
        "states q\n"
        "initial-state q\n"
        "q ; s ; q ; push 1 a ; a\n"
        "q ; a ; q ; push 1 a ; a\n");
    auto sys = parse_pushdown_system(in);
    auto g = configuration_graph(sys);
    auto ex = explore(g, *g.root(), {8, 100});
    CHECK(!ex.complete);
    CHECK(ex.graph.vertices().size() == 8);
    // a single ray: every vertex has one a-edge, every non-initial vertex
    // one incoming edge
    std::map<std::string, int> incoming;
    for (const auto& v : ex.graph.vertices())
        for (const auto& e : ex.graph.successors(v)) ++incoming[e.to];
    for (const auto& v : ex.graph.vertices())
        CHECK(incoming[v] == (v == *g.root() ? 0 : 1));

    PushdownSystem empty_sys;
    empty_sys.level = 1;
    empty_sys.initial_symbol = "s";
    empty_sys.initial_state = "q";
    auto lone = explore(configuration_graph(empty_sys),
                        *configuration_graph(empty_sys).root(), {10, 10});
    CHECK(lone.graph.vertices().size() == 1);
}

TEST_CASE("epsilon contraction") {
    // no epsilon edges: contraction is the identity on edges
    auto plain = ColoredGraph::finite({"a", "eps"}, {"u", "v"}, {{"u", {{"a", "v"}}}}, "u");
    auto same = epsilon_contraction(plain);
    CHECK(same.graph.successors("u") == std::vector<GraphEdge>{{"a", "v"}});

    // chain v0 -eps-> v1 -a-> v2 contracts to v0 -a-> v2
    auto chain = ColoredGraph::finite(
        {"a", "eps"}, {"v0", "v1", "v2"},
        {{"v0", {{"eps", "v1"}}}, {"v1", {{"a", "v2"}}}}, "v0");
    auto c = epsilon_contraction(chain);
    CHECK(c.graph.successors("v0") == std::vector<GraphEdge>{{"a", "v2"}});
    CHECK(!c.graph.has_vertex("v1"));

    // mixed epsilon/non-epsilon vertex is rejected by name
    auto mixed = ColoredGraph::finite(
        {"a", "eps"}, {"v0", "v1", "v2"},
        {{"v0", {{"eps", "v1"}, {"a", "v2"}}}}, "v0");
    try {
        epsilon_contraction(mixed);
        CHECK(false);
    } catch (const MixedEpsilonError& e) {
        CHECK(e.vertex == "v0");
    }
}

TEST_CASE("accepted words of the a^n b^n system") {
    auto sys = anbn();
    auto words = accepted_words(sys, 10, {100000, 64});
    std::set<std::vector<std::string>> expect;
    for (std::size_t n = 0; n <= 5; ++n) {
        std::vector<std::string> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back("a");
        for (std::size_t i = 0; i < n; ++i) w.push_back("b");
        expect.insert(w);
    }
    CHECK(words == expect);
}

TEST_CASE("pumping threshold") {
    CHECK(pumping_threshold(1, 3, 2) == 8);
    CHECK(pumping_threshold(2, 1, 3) == 64);
    CHECK(pumping_threshold(1, 0, 1) == 1);
    CHECK(pumping_threshold(3, 1, 3) == BigNat(1) << 64);
    CHECK_THROWS_AS(pumping_threshold(0, 1, 1), PdsError);
    CHECK_THROWS_AS(pumping_threshold(4, 1, 3, 1 << 10), FghError);
}

TEST_CASE("system parser rejects malformed input") {
    std::istringstream bad1("level 1\nq ; s ; q ; jump 1 ; a\n");
    CHECK_THROWS_AS(parse_pushdown_system(bad1), PdsError);
    std::istringstream bad2("level 1\nq ; s ; q ; pop 2 ; a\n");
    CHECK_THROWS_AS(parse_pushdown_system(bad2), PdsError);
    std::istringstream bad3("banner here\n");
    CHECK_THROWS_AS(parse_pushdown_system(bad3), PdsError);
}

TEST_CASE("level 2 copying runs") {
    // push 2 duplicates the whole level-1 sequence
    std::istringstream in(
        "level 2\n"
        "input-alphabet a c\n"
        "stack-alphabet s a\n"
        "initial-symbol s\n"
        "states q\n"
        "initial-state q\n"
        "q ; s ; q ; push 1 a ; a\n"
        "q ; a ; q ; push 2 a ; c\n");
    auto sys = parse_pushdown_system(in);
    auto init = initial_configuration(sys);
    auto s1 = one_step_successors(sys, init);
    REQUIRE(s1.size() == 1);
    CHECK(serialize(s1[0].second) == "q|[[s a]]");
    auto s2 = one_step_successors(sys, s1[0].second);
    REQUIRE(s2.size() == 1);
    CHECK(serialize(s2[0].second) == "q|[[s a] [s a]]");
}
