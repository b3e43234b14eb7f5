#pragma once

// Fundamental-sequence systems over an abstract strict well-ordering:
// path codes, greedy least-measure descent, step-down chains, and the
// Bachmann / Schmidt-coherence checkers.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "caucal/ordinal.hpp"

namespace caucal {

enum class PointKind { zero, successor, limit };

template <class E>
struct PointClass {
    PointKind kind;
    std::optional<E> predecessor;  // set iff kind == successor
};

// A cofinal-sequence system presents its order through four operations:
//
//   compare(a, b)  -> std::strong_ordering
//   classify(a)    -> PointClass<element>
//   minimum()      -> element
//   seq(a, n)      -> element            (a must be a limit point)
//   format(a)      -> std::string        (diagnostics)
//
// Elements are immutable values; all operations are pure.
template <class S>
concept CofinalSystem = requires(const S& s, const typename S::element& a, Nat n) {
    { s.compare(a, a) } -> std::same_as<std::strong_ordering>;
    { s.classify(a) } -> std::same_as<PointClass<typename S::element>>;
    { s.minimum() } -> std::convertible_to<typename S::element>;
    { s.seq(a, n) } -> std::convertible_to<typename S::element>;
    { s.format(a) } -> std::convertible_to<std::string>;
};

class FunSeqError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidStepError : public FunSeqError {
public:
    InvalidStepError(std::size_t index, const std::string& what)
        : FunSeqError("invalid path step at index " + std::to_string(index) + ": " + what),
          index(index) {}
    std::size_t index;
};

class StepLimitError : public FunSeqError {
public:
    using FunSeqError::FunSeqError;
};

// --- path codes --------------------------------------------------------------

using PathCode = std::vector<Nat>;

inline Nat path_measure(const PathCode& p) {
    Nat m = p.size();
    for (Nat e : p) m += e;
    return m;
}

// rho^s_a(p): entry m >= 1 at a limit point steps to s(., m-1); entry 0 at
// a successor steps to the predecessor.
template <CofinalSystem S>
typename S::element resolve_path(const S& sys, const typename S::element& a,
                                 const PathCode& p) {
    typename S::element cur = a;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto cls = sys.classify(cur);
        if (p[i] == 0) {
            if (cls.kind != PointKind::successor)
                throw InvalidStepError(i, "entry 0 requires a successor, got " +
                                              sys.format(cur));
            cur = *cls.predecessor;
        } else {
            if (cls.kind != PointKind::limit)
                throw InvalidStepError(i, "entry " + std::to_string(p[i]) +
                                              " requires a limit point, got " +
                                              sys.format(cur));
            cur = sys.seq(cur, p[i] - 1);
        }
    }
    return cur;
}

// All valid paths from a ending exactly at b with |p| <= measure_cap,
// sorted by measure.
template <CofinalSystem S>
std::vector<PathCode> enumerate_paths(const S& sys, const typename S::element& a,
                                      const typename S::element& b, Nat measure_cap) {
    std::vector<PathCode> out;
    if (sys.compare(b, a) != std::strong_ordering::less) return out;
    PathCode prefix;
    auto dfs = [&](auto&& self, const typename S::element& cur, Nat budget) -> void {
        auto rel = sys.compare(cur, b);
        if (rel == std::strong_ordering::less) return;  // descent is strict
        if (rel == std::strong_ordering::equal) {
            if (!prefix.empty()) out.push_back(prefix);
            return;
        }
        if (budget == 0) return;
        auto cls = sys.classify(cur);
        if (cls.kind == PointKind::successor) {
            prefix.push_back(0);
            self(self, *cls.predecessor, budget - 1);
            prefix.pop_back();
        } else if (cls.kind == PointKind::limit) {
            for (Nat m = 1; m + 1 <= budget; ++m) {
                typename S::element next = sys.seq(cur, m - 1);
                if (sys.compare(next, b) == std::strong_ordering::less) continue;
                prefix.push_back(m);
                self(self, next, budget - (m + 1));
                prefix.pop_back();
            }
        }
    };
    dfs(dfs, a, measure_cap);
    std::stable_sort(out.begin(), out.end(), [](const PathCode& x, const PathCode& y) {
        return path_measure(x) < path_measure(y);
    });
    return out;
}

// Greedy least-measure descent: at each step take the least entry whose
// endpoint is still >= the target. Minimal |.| under the Bachmann property.
template <CofinalSystem S>
PathCode greedy_min_path(const S& sys, const typename S::element& a,
                         const typename S::element& b, Nat step_cap = 1000000) {
    if (sys.compare(b, a) != std::strong_ordering::less)
        throw FunSeqError("greedy_min_path: target not strictly below start");
    PathCode p;
    typename S::element cur = a;
    Nat steps = 0;
    while (sys.compare(cur, b) != std::strong_ordering::equal) {
        auto cls = sys.classify(cur);
        if (cls.kind == PointKind::successor) {
            p.push_back(0);
            cur = *cls.predecessor;
        } else {
            Nat m = 1;
            typename S::element next = sys.seq(cur, 0);
            while (sys.compare(next, b) == std::strong_ordering::less) {
                if (++steps > step_cap)
                    throw StepLimitError("greedy_min_path: step cap exceeded searching entry");
                next = sys.seq(cur, m);
                ++m;
            }
            p.push_back(m);
            cur = next;
        }
        if (++steps > step_cap) throw StepLimitError("greedy_min_path: step cap exceeded");
    }
    return p;
}

// The unique chain a = c0 > c1 > ... with c_{i+1} = predecessor(c_i) or
// s(c_i, 0), down to the minimum element.
template <CofinalSystem S>
std::vector<typename S::element> step_down_chain(const S& sys, const typename S::element& a,
                                                 Nat step_cap = 1000000) {
    std::vector<typename S::element> chain{a};
    typename S::element cur = a;
    while (true) {
        auto cls = sys.classify(cur);
        if (cls.kind == PointKind::zero) break;
        cur = cls.kind == PointKind::successor ? *cls.predecessor : sys.seq(cur, 0);
        chain.push_back(cur);
        if (chain.size() > step_cap) throw StepLimitError("step_down_chain: step cap exceeded");
    }
    return chain;
}

// y is step-down reachable from x (y strictly below on the unique chain).
template <CofinalSystem S>
bool step_down_reachable(const S& sys, const typename S::element& y,
                         const typename S::element& x, Nat step_cap = 1000000) {
    typename S::element cur = x;
    for (Nat i = 0; i < step_cap; ++i) {
        auto cls = sys.classify(cur);
        if (cls.kind == PointKind::zero)
            return sys.compare(y, cur) == std::strong_ordering::equal &&
                   sys.compare(x, cur) != std::strong_ordering::equal;
        cur = cls.kind == PointKind::successor ? *cls.predecessor : sys.seq(cur, 0);
        auto rel = sys.compare(cur, y);
        if (rel == std::strong_ordering::equal) return true;
        if (rel == std::strong_ordering::less) return false;
    }
    throw StepLimitError("step_down_reachable: step cap exceeded");
}

// --- checkers ----------------------------------------------------------------

template <class E>
struct BachmannViolation {
    E x;
    Nat n;
    E y;
    E s_x_n;
    E s_y_0;
};

template <class E>
struct BachmannReport {
    std::vector<BachmannViolation<E>> violations;
    bool ok() const { return violations.empty(); }
};

// For x, y limits in the sample and n <= n_cap: s(x,n) < y <= s(x,n+1)
// must give s(x,n) <= s(y,0).
template <CofinalSystem S>
BachmannReport<typename S::element> check_bachmann(
    const S& sys, const std::vector<typename S::element>& limit_sample, Nat n_cap) {
    BachmannReport<typename S::element> report;
    for (const auto& x : limit_sample) {
        for (Nat n = 0; n <= n_cap; ++n) {
            auto sxn = sys.seq(x, n);
            auto sxn1 = sys.seq(x, n + 1);
            for (const auto& y : limit_sample) {
                if (sys.compare(sxn, y) != std::strong_ordering::less) continue;
                if (sys.compare(y, sxn1) == std::strong_ordering::greater) continue;
                auto sy0 = sys.seq(y, 0);
                if (sys.compare(sxn, sy0) == std::strong_ordering::greater)
                    report.violations.push_back({x, n, y, sxn, sy0});
            }
        }
    }
    return report;
}

template <class E>
struct SchmidtViolation {
    E x;
    Nat n;
    E s_x_n;
    E s_x_n1;
};

template <class E>
struct SchmidtReport {
    std::vector<SchmidtViolation<E>> violations;
    bool ok() const { return violations.empty(); }
};

// s(x,n) must lie on the step-down chain from s(x,n+1).
template <CofinalSystem S>
SchmidtReport<typename S::element> check_schmidt_coherent(
    const S& sys, const std::vector<typename S::element>& limit_sample, Nat n_cap,
    Nat step_cap = 1000000) {
    SchmidtReport<typename S::element> report;
    for (const auto& x : limit_sample) {
        for (Nat n = 0; n <= n_cap; ++n) {
            auto lo = sys.seq(x, n);
            auto hi = sys.seq(x, n + 1);
            if (!step_down_reachable(sys, lo, hi, step_cap))
                report.violations.push_back({x, n, lo, hi});
        }
    }
    return report;
}

// Least n with b <= s(a, n), searched up to n_cap.
template <CofinalSystem S>
std::optional<Nat> cofinality_witness(const S& sys, const typename S::element& a,
                                      const typename S::element& b, Nat n_cap) {
    for (Nat n = 0; n <= n_cap; ++n)
        if (sys.compare(b, sys.seq(a, n)) != std::strong_ordering::greater) return n;
    return std::nullopt;
}

// --- concrete systems over Ordinal --------------------------------------------

struct StandardOrdinalSystem {
    using element = Ordinal;
    std::strong_ordering compare(const Ordinal& a, const Ordinal& b) const {
        return caucal::compare(a, b);
    }
    PointClass<Ordinal> classify(const Ordinal& a) const {
        auto c = caucal::classify(a);
        switch (c.kind) {
            case OrdinalKind::zero: return {PointKind::zero, std::nullopt};
            case OrdinalKind::successor: return {PointKind::successor, c.predecessor};
            default: return {PointKind::limit, std::nullopt};
        }
    }
    Ordinal minimum() const { return Ordinal{}; }
    Ordinal seq(const Ordinal& a, Nat n) const { return standard_fundamental(a, n); }
    std::string format(const Ordinal& a) const { return to_string(a); }
};

// s'(x, n) = s_st(x, n+1); the one-step-ahead system matching the cofinal
// sequences the tree construction produces.
struct ShiftedStandardSystem {
    using element = Ordinal;
    std::strong_ordering compare(const Ordinal& a, const Ordinal& b) const {
        return caucal::compare(a, b);
    }
    PointClass<Ordinal> classify(const Ordinal& a) const {
        return StandardOrdinalSystem{}.classify(a);
    }
    Ordinal minimum() const { return Ordinal{}; }
    Ordinal seq(const Ordinal& a, Nat n) const { return standard_fundamental(a, n + 1); }
    std::string format(const Ordinal& a) const { return to_string(a); }
};

// A base system with finitely many (x, n) entries overridden; used to build
// counterexample systems for the checkers.
template <CofinalSystem Base>
struct TableSystem {
    using element = typename Base::element;
    Base base;
    std::map<std::pair<element, Nat>, element> overrides;

    std::strong_ordering compare(const element& a, const element& b) const {
        return base.compare(a, b);
    }
    PointClass<element> classify(const element& a) const { return base.classify(a); }
    element minimum() const { return base.minimum(); }
    element seq(const element& a, Nat n) const {
        auto it = overrides.find({a, n});
        return it != overrides.end() ? it->second : base.seq(a, n);
    }
    std::string format(const element& a) const { return base.format(a); }
};

// Table file format: lines `x ; n ; s(x,n)` in ordinal text syntax.
// Blank lines and lines starting with '#' are skipped.
template <CofinalSystem Base>
TableSystem<Base> load_table_system(std::istream& in, Base base) {
    TableSystem<Base> sys{std::move(base), {}};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto p1 = line.find(';');
        auto p2 = line.find(';', p1 == std::string::npos ? p1 : p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw FunSeqError("table line " + std::to_string(lineno) +
                              ": expected `x ; n ; s(x,n)`");
        Ordinal x = parse_ordinal(line.substr(0, p1));
        Nat n = std::stoull(line.substr(p1 + 1, p2 - p1 - 1));
        Ordinal v = parse_ordinal(line.substr(p2 + 1));
        sys.overrides[{x, n}] = v;
    }
    return sys;
}

}  // namespace caucal
