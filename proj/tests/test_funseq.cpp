#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "caucal/funseq.hpp"

using namespace caucal;

namespace {

Ordinal O(const std::string& s) { return parse_ordinal(s); }

const StandardOrdinalSystem st;

std::vector<Ordinal> ordinals_below_w3(Nat coeff_cap) {
    std::vector<Ordinal> out;
    for (Nat a = 0; a <= coeff_cap; ++a)
        for (Nat b = 0; b <= coeff_cap; ++b)
            for (Nat c = 0; c <= coeff_cap; ++c) {
                Ordinal o;
                if (a) o.append_term(Ordinal::natural(2), a);
                if (b) o.append_term(Ordinal::natural(1), b);
                if (c) o.append_term(Ordinal{}, c);
                out.push_back(o);
            }
    return out;
}

}  // namespace

TEST_CASE("path measure") {
    CHECK(path_measure({}) == 0);
    CHECK(path_measure({3}) == 4);
    CHECK(path_measure({2, 0, 1}) == 6);
}

TEST_CASE("resolve path") {
    CHECK(resolve_path(st, O("w"), {}) == O("w"));
    CHECK(resolve_path(st, O("w"), {3}) == O("2"));
    CHECK(resolve_path(st, O("w^2"), {2, 3}) == O("2"));
    CHECK(resolve_path(st, O("w^2*2"), {2, 3}) == O("w^2+2"));
    CHECK_THROWS_AS(resolve_path(st, O("w^2"), {2, 0}), InvalidStepError);
    CHECK_THROWS_AS(resolve_path(st, O("3"), {1}), InvalidStepError);
    CHECK_THROWS_AS(resolve_path(st, Ordinal{}, {0}), InvalidStepError);
    // the failing index is reported
    try {
        resolve_path(st, O("w^2"), {2, 3, 5});
        CHECK(false);
    } catch (const InvalidStepError& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("resolve path composes over concatenation") {
    PathCode p{2, 3};
    PathCode q{0, 0};
    Ordinal a = O("w^2");
    PathCode pq = p;
    pq.insert(pq.end(), q.begin(), q.end());
    CHECK(resolve_path(st, a, pq) == resolve_path(st, resolve_path(st, a, p), q));
}

TEST_CASE("enumerate paths") {
    auto paths = enumerate_paths(st, O("w"), O("2"), 4);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0] == PathCode{3});
    auto one = enumerate_paths(st, O("3"), O("2"), 10);
    REQUIRE(!one.empty());
    CHECK(one[0] == PathCode{0});
    CHECK(enumerate_paths(st, O("w"), O("w"), 5).empty());
    // every enumerated path resolves to the target and respects the cap
    for (const auto& p : enumerate_paths(st, O("w^2"), O("w"), 8)) {
        CHECK(resolve_path(st, O("w^2"), p) == O("w"));
        CHECK(path_measure(p) <= 8);
    }
}

TEST_CASE("greedy minimal path") {
    CHECK(greedy_min_path(st, O("w"), O("2")) == PathCode{3});
    CHECK(greedy_min_path(st, O("w^2"), O("w")) == PathCode{2});
    CHECK(greedy_min_path(st, O("5"), O("4")) == PathCode{0});
    CHECK_THROWS_AS(greedy_min_path(st, O("2"), O("w")), FunSeqError);
}

TEST_CASE("greedy path measure equals exhaustive minimum below w^3") {
    auto sample = ordinals_below_w3(2);
    for (const auto& a : sample) {
        for (const auto& b : sample) {
            if (st.compare(b, a) != std::strong_ordering::less) continue;
            PathCode g = greedy_min_path(st, a, b);
            CHECK(resolve_path(st, a, g) == b);
            auto all = enumerate_paths(st, a, b, path_measure(g));
            REQUIRE(!all.empty());
            CHECK(path_measure(all.front()) == path_measure(g));
        }
    }
}

TEST_CASE("path endpoints descend strictly") {
    Ordinal a = O("w^2*2");
    PathCode p = greedy_min_path(st, a, O("w+3"));
    Ordinal cur = a;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Ordinal next = resolve_path(st, cur, {p[i]});
        CHECK(compare(next, cur) == std::strong_ordering::less);
        cur = next;
    }
}

TEST_CASE("step down chain") {
    auto chain = step_down_chain(st, O("w^2"));
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == O("w^2"));
    CHECK(chain[1] == Ordinal{});
    auto nat = step_down_chain(st, O("3"));
    CHECK(nat.size() == 4);
    auto wp1 = step_down_chain(st, O("w+1"));
    REQUIRE(wp1.size() == 3);
    CHECK(wp1[1] == O("w"));
    CHECK(wp1[2] == Ordinal{});
    // strictly decreasing
    for (std::size_t i = 0; i + 1 < wp1.size(); ++i)
        CHECK(compare(wp1[i + 1], wp1[i]) == std::strong_ordering::less);
}

TEST_CASE("bachmann checker accepts the standard system") {
    std::vector<Ordinal> limits;
    for (const auto& o : ordinals_below_w3(4))
        if (st.classify(o).kind == PointKind::limit) limits.push_back(o);
    auto report = check_bachmann(st, limits, 6);
    CHECK(report.ok());
    CHECK(check_bachmann(st, {}, 5).ok());
    CHECK(check_bachmann(st, {O("w^2"), O("w*2")}, 3).ok());
}

TEST_CASE("bachmann checker flags the constructed counterexample") {
    // s(w^2, n) = w*(n+1) except s(w*2, 0) = 0
    TableSystem<StandardOrdinalSystem> bad{st, {}};
    for (Nat n = 0; n <= 4; ++n)
        bad.overrides[{O("w^2"), n}] = standard_fundamental(O("w^2"), n + 1);
    bad.overrides[{O("w*2"), 0}] = Ordinal{};
    auto report = check_bachmann(bad, {O("w^2"), O("w*2")}, 3);
    REQUIRE(!report.ok());
    CHECK(report.violations[0].x == O("w^2"));
    CHECK(report.violations[0].n == 0);
    CHECK(report.violations[0].y == O("w*2"));
}

TEST_CASE("schmidt coherence") {
    CHECK(check_schmidt_coherent(st, {O("w")}, 4).ok());
    CHECK(check_schmidt_coherent(st, {O("w^2")}, 3).ok());
    CHECK(check_schmidt_coherent(st, {}, 1).ok());
    std::vector<Ordinal> limits;
    for (const auto& o : ordinals_below_w3(3))
        if (st.classify(o).kind == PointKind::limit) limits.push_back(o);
    CHECK(check_schmidt_coherent(st, limits, 4).ok());
    // a system jumping across the chain is incoherent
    TableSystem<StandardOrdinalSystem> bad{st, {}};
    bad.overrides[{O("w^2"), 1}] = O("w+1");
    bad.overrides[{O("w^2"), 2}] = O("w*2");
    CHECK(!check_schmidt_coherent(bad, {O("w^2")}, 2).ok());
}

TEST_CASE("cofinality witness search") {
    CHECK(cofinality_witness(st, O("w"), O("5"), 16) == 5);
    CHECK(cofinality_witness(st, O("w^2"), O("w*3+1"), 16) == 4);
    CHECK(!cofinality_witness(st, O("w"), O("50"), 16).has_value());
}

TEST_CASE("shifted system is one entry ahead") {
    ShiftedStandardSystem sh;
    for (Nat n = 0; n <= 6; ++n)
        CHECK(sh.seq(O("w^2+w*3"), n) == st.seq(O("w^2+w*3"), n + 1));
}

TEST_CASE("table systems load from text") {
    std::istringstream in("# override two entries\n"
                          "w*2 ; 0 ; 0\n"
                          "w^2 ; 1 ; w*9\n");
    auto sys = load_table_system(in, st);
    CHECK(sys.seq(O("w*2"), 0) == Ordinal{});
    CHECK(sys.seq(O("w^2"), 1) == O("w*9"));
    CHECK(sys.seq(O("w^2"), 0) == Ordinal{});  // untouched entries fall through
    std::istringstream bad("w ; 1\n");
    CHECK_THROWS_AS(load_table_system(bad, st), FunSeqError);
}
